//! Spatially uniform capital with no border flux: the PDE collapses to the
//! scalar growth ODE. Runs both reference depreciation rates and compares
//! the PDE (forward Euler in time, dt = 0.4) against the RK4 integrator.
//! The gap is the O(dt) time-stepping error; it shrinks linearly with dt.

use capflow::econ::{ode_solve_rk4, RK4_DT};
use capflow::{preset, run, PresetId};

fn main() -> capflow::Result<()> {
    for id in [PresetId::Fig1a, PresetId::Fig1b] {
        let config = preset(id);
        let series = run(&config)?;
        let t_end = config.time.final_time();
        let oracle = ode_solve_rk4(&config.econ, 100.0, t_end, RK4_DT)?;
        println!("{id}: {}", id.description());
        let mut shown = Vec::new();
        for t in [0.0, 10.0, 50.0, t_end] {
            let snap = series.at_time(t);
            if shown.contains(&snap.field.time) {
                continue;
            }
            shown.push(snap.field.time);
            let at = snap.field.time;
            let ode = oracle
                .iter()
                .min_by(|a, b| (a.0 - at).abs().total_cmp(&(b.0 - at).abs()))
                .map(|p| p.1)
                .unwrap_or(f64::NAN);
            println!(
                "  t = {:>6.1}  pde mean {:>12.6e}  spread {:.1e}  rk4 {:>12.6e}",
                snap.field.time,
                snap.summary.mean,
                snap.summary.max - snap.summary.min,
                ode
            );
        }
    }
    Ok(())
}
