//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 configuration / parse / I/O
//! error, 3 numerical failure (CFL violation, divergence, negativity).
//! On failure exactly one reason line is written to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::econ::{find_equilibria, EconParams, TechProgress};
use crate::error::{Error, Result};
use crate::fmt::real;
use crate::output::{execute, RunManifest};
use crate::scenario::{
    load_config, parse_flux_argument, parse_source_form, preset, PresetId, ScenarioConfig,
};
use crate::solver::{self_convergence, ObservedOrder};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "capflow", version, about = "Spatial Solow growth simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run a scenario and write CSV, summary CSV and manifest.
    Run(RunArgs),
    /// List the built-in scenarios.
    Presets,
    /// Steady states of the spatially uniform model.
    #[command(allow_negative_numbers = true)]
    Equilibria {
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        s: f64,
        /// Constant technology level A.
        #[arg(long = "tech-const", default_value_t = 1.0)]
        tech_const: f64,
    },
    /// Grid self-convergence study of a preset.
    Converge {
        #[arg(long)]
        preset: String,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        /// Shorter horizon; the finest level costs 64x the coarse run at 3 levels.
        #[arg(long = "t-end")]
        t_end: Option<f64>,
    },
    /// Parse and validate a config file (or a manifest) without running it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
struct RunArgs {
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    preset: Option<String>,
    /// Config file; a manifest is accepted and replays its run.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, default_value = ".")]
    out: PathBuf,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    dx: Option<f64>,
    #[arg(long = "t-end")]
    t_end: Option<f64>,
    #[arg(long)]
    stride: Option<usize>,
    /// consistent | paper-literal
    #[arg(long = "source-form")]
    source_form: Option<String>,
    /// local | left
    #[arg(long = "right-flux")]
    right_flux: Option<String>,
    /// Output name (defaults to the scenario name).
    #[arg(long)]
    name: Option<String>,
}

fn read_config(path: &PathBuf) -> Result<ScenarioConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    load_config(&RunManifest::embedded_config(&text))
}

fn build_config(a: &RunArgs) -> Result<ScenarioConfig> {
    let mut c = match (&a.preset, &a.config) {
        (Some(id), _) => preset(id.parse::<PresetId>()?),
        (None, Some(path)) => read_config(path)?,
        (None, None) => unreachable!("clap requires --preset or --config"),
    };
    if let Some(name) = &a.name {
        c.name = name.clone();
    }
    if let Some(delta) = a.delta {
        c.econ.delta = delta;
    }
    if let Some(dx) = a.dx {
        c = c.with_dx(dx)?;
    }
    if let Some(t_end) = a.t_end {
        c = c.with_t_end(t_end)?;
    }
    if let Some(dt) = a.dt {
        c = c.with_dt(dt)?;
    }
    if let Some(stride) = a.stride {
        c.snapshot_stride = stride;
    }
    if let Some(s) = &a.source_form {
        c.opts.source_form = parse_source_form(s).ok_or_else(|| {
            Error::Config(format!(
                "unknown source form {s:?} (expected consistent, paper-literal)"
            ))
        })?;
    }
    if let Some(s) = &a.right_flux {
        c.opts.right_flux_argument = parse_flux_argument(s).ok_or_else(|| {
            Error::Config(format!(
                "unknown right flux argument {s:?} (expected local, left)"
            ))
        })?;
    }
    c.validate()?;
    Ok(c)
}

fn cmd_run(a: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let config = build_config(a)?;
    let done = execute(&config, &a.out)?;
    let last = done.series.last();
    let _ = writeln!(
        out,
        "ok name={} steps={} snapshots={} t={} min={} max={} total={} csv={} manifest={}",
        config.name,
        done.series.diagnostics.steps,
        done.series.snapshots.len(),
        real(last.summary.time),
        real(last.summary.min),
        real(last.summary.max),
        real(last.summary.total),
        done.csv.display(),
        done.manifest.display()
    );
    if let Some(ev) = done.series.diagnostics.first_negative {
        // a warning, not a failure: the run completed under the report policy
        let _ = writeln!(
            err,
            "warning negativity step={} node={} t={} value={}",
            ev.step,
            ev.node,
            real(ev.time),
            real(ev.value)
        );
    }
    Ok(())
}

fn cmd_presets(out: &mut dyn Write) -> Result<()> {
    for id in PresetId::ALL {
        let _ = writeln!(out, "{id}\t{}", id.description());
    }
    Ok(())
}

fn cmd_equilibria(delta: f64, s: f64, tech_const: f64, out: &mut dyn Write) -> Result<()> {
    let econ = EconParams {
        s,
        delta,
        tech: TechProgress::Constant(tech_const),
        ..EconParams::default()
    };
    econ.validate()?;
    let report = find_equilibria(&econ)?;
    for r in &report.roots {
        let _ = writeln!(
            out,
            "root k={} stability={}",
            real(r.k),
            r.stability.as_str()
        );
    }
    match report.critical_delta {
        Some(d) => {
            let _ = writeln!(out, "critical_delta={}", real(d));
        }
        None => {
            let _ = writeln!(out, "critical_delta=none");
        }
    }
    Ok(())
}

fn cmd_converge(id: &str, levels: usize, t_end: Option<f64>, out: &mut dyn Write) -> Result<()> {
    let mut c = preset(id.parse::<PresetId>()?);
    if let Some(t) = t_end {
        c = c.with_t_end(t)?;
    }
    let report = self_convergence(&c, levels)?;
    let _ = writeln!(out, "final_time={}", real(report.final_time));
    for (i, d) in report.differences.iter().enumerate() {
        let _ = writeln!(
            out,
            "level={} dx={} diff={}",
            i,
            real(report.dx[i + 1]),
            real(*d)
        );
    }
    let order = match report.observed() {
        ObservedOrder::Exact => "exact".to_string(),
        ObservedOrder::Finite(p) => real(p),
    };
    let _ = writeln!(out, "observed_order={order}");
    Ok(())
}

fn cmd_validate(path: &PathBuf, out: &mut dyn Write) -> Result<()> {
    let c = read_config(path)?;
    let _ = writeln!(
        out,
        "valid name={} steps={} nodes={}",
        c.name,
        c.time.n_steps(),
        c.grid.n_nodes()
    );
    Ok(())
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let first = e
                .to_string()
                .lines()
                .next()
                .unwrap_or("")
                .trim()
                .to_string();
            let _ = writeln!(err, "usage-error msg=\"{}\"", first.replace('"', "'"));
            return EXIT_USAGE;
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a, out, err),
        Command::Presets => cmd_presets(out),
        Command::Equilibria {
            delta,
            s,
            tech_const,
        } => cmd_equilibria(*delta, *s, *tech_const, out),
        Command::Converge {
            preset,
            levels,
            t_end,
        } => cmd_converge(preset, *levels, *t_end, out),
        Command::Validate { config } => cmd_validate(config, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "{}", e.reason_line());
            e.exit_code()
        }
    }
}
