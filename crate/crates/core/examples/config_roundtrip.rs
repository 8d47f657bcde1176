//! The plain-text config format: write a preset, edit it as text, load it
//! back and run it.

use capflow::{load_config, preset, run, save_config, PresetId};

fn main() -> capflow::Result<()> {
    let text = save_config(&preset(PresetId::Fig3a));
    println!("{text}");
    assert_eq!(load_config(&text)?, preset(PresetId::Fig3a));

    let edited = text
        .replace("name = fig3a", "name = fig3a-fast-decay")
        .replace("econ.delta = 0.050000000000000003", "econ.delta = 0.2");
    let config = load_config(&edited)?;
    let series = run(&config)?;
    println!(
        "{}: total {:.2} -> {:.2}",
        config.name,
        series.first().summary.total,
        series.last().summary.total
    );
    Ok(())
}
