//! Exponential technological progress `A(t) = exp(0.01 t)`: capital first
//! falls, then recovers once productivity outgrows depreciation.

use capflow::{preset, run, PresetId};

fn main() -> capflow::Result<()> {
    for id in [PresetId::Fig2a, PresetId::Fig2b] {
        let series = run(&preset(id))?;
        let lowest = series
            .snapshots
            .iter()
            .min_by(|a, b| a.summary.mean.total_cmp(&b.summary.mean))
            .expect("at least one snapshot");
        println!(
            "{id}: mean {:.3} at t=0, minimum {:.3e} at t={:.1}, {:.3e} at t={:.1}",
            series.first().summary.mean,
            lowest.summary.mean,
            lowest.field.time,
            series.last().summary.mean,
            series.last().field.time
        );
    }
    Ok(())
}
