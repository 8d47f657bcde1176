//! Grid self-convergence: halve dx (and quarter dt) and measure the
//! observed order of the explicit scheme.

use capflow::solver::{self_convergence, ObservedOrder};
use capflow::{preset, PresetId};

fn main() -> capflow::Result<()> {
    let config = preset(PresetId::Fig3b).with_t_end(5.0)?;
    let report = self_convergence(&config, 4)?;
    println!("levels compared at t = {}", report.final_time);
    for (i, diff) in report.differences.iter().enumerate() {
        println!(
            "  dx {} vs {}: max difference {diff:.3e}",
            report.dx[i],
            report.dx[i + 1]
        );
    }
    for order in &report.orders {
        match order {
            ObservedOrder::Finite(p) => println!("  observed order {p:.3}"),
            ObservedOrder::Exact => println!("  levels agree exactly"),
        }
    }
    Ok(())
}
