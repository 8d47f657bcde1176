//! Depreciation sweep run in parallel, one output directory entry per run.
//!
//! Usage: `cargo run --example sweep -- [OUT_DIR]` (default: a temp dir).

use std::path::PathBuf;
use std::thread;

use capflow::output::execute;
use capflow::scenario::{sweep, SweepParameter};
use capflow::{preset, PresetId};

fn main() -> capflow::Result<()> {
    let out: PathBuf = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("capflow-sweep"));
    let configs = sweep(
        &preset(PresetId::Fig1a),
        SweepParameter::Delta,
        &[0.02, 0.04, 0.06, 0.08, 0.1],
    )?;

    // runs share nothing; each writes its own files, manifest last
    let results: Vec<_> = thread::scope(|s| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| s.spawn(|| execute(c, &out)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("run panicked"))
            .collect()
    });
    for (config, result) in configs.iter().zip(results) {
        let done = result?;
        println!(
            "{:<20} k(T) = {:>10.4}  -> {}",
            config.name,
            done.series.last().summary.mean,
            done.manifest.display()
        );
    }
    Ok(())
}
