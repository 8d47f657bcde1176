//! CSV output: the long `t,x,k` table, the per-snapshot summary and the
//! manifest whose embedded config replays the run byte for byte.

use capflow::output::{execute, RunManifest};
use capflow::{load_config, preset, PresetId};

fn main() -> capflow::Result<()> {
    let out = std::env::temp_dir().join("capflow-outputs");
    let done = execute(&preset(PresetId::Fig1b), &out)?;
    for file in &done.manifest_data.outputs {
        println!("{} ({} rows) sha256 {}", file.file, file.rows, file.sha256);
    }

    let manifest = std::fs::read_to_string(&done.manifest).expect("manifest readable");
    let replay = load_config(&RunManifest::embedded_config(&manifest))?;
    let again = execute(&replay, out.join("replay"))?;
    assert_eq!(again.manifest_data.outputs, done.manifest_data.outputs);
    println!("replay reproduced both digests");
    Ok(())
}
