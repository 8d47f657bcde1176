//! Steady states of the uniform economy and the poverty-trap threshold.
//!
//! Prints the rest points of `dk/dt = s A f(k) - delta k` for a range of
//! depreciation rates, their stability, and the critical rate above which
//! every economy collapses to zero capital.

use capflow::econ::{critical_capital, critical_depreciation, find_equilibria, EconParams};

fn main() -> capflow::Result<()> {
    let mut econ = EconParams::default();
    let delta_c = critical_depreciation(&econ)?;
    let k_star = critical_capital(&econ)?;
    println!("f(k)/k peaks at k* = {k_star:.6}; critical depreciation = {delta_c:.6}");

    for delta in [0.01, 0.03, 0.05, 0.08, 0.09, 0.5] {
        econ.delta = delta;
        let report = find_equilibria(&econ)?;
        let roots: Vec<String> = report
            .roots
            .iter()
            .map(|r| format!("{:.4} ({})", r.k, r.stability.as_str()))
            .collect();
        println!("delta = {delta:<5} -> {}", roots.join(", "));
    }
    Ok(())
}
