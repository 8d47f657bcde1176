//! Capital leaking through both borders. Gaussian, piecewise-linear and
//! piecewise-exponential initial profiles with constant and proportional
//! outflow; prints total capital and the center/border contrast.

use capflow::{preset, run, PresetId};

fn main() -> capflow::Result<()> {
    use PresetId::*;
    for id in [Fig3a, Fig3b, Fig4a, Fig4b, Fig5a, Fig5b] {
        let config = preset(id);
        let series = run(&config)?;
        let (first, last) = (series.first(), series.last());
        let k = &last.field.values;
        println!("{id}: {}", id.description());
        println!(
            "  total {:.1} -> {:.1};  k(T) center {:.3}, border {:.3}",
            first.summary.total,
            last.summary.total,
            k[k.len() / 2],
            k[0]
        );
        if let Some(ev) = series.diagnostics.first_negative {
            println!(
                "  capital first turns negative at t={:.1}, node {}",
                ev.time, ev.node
            );
        }
    }
    Ok(())
}
