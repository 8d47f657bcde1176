//! `key = value` scenario files.
//!
//! One pair per line, `#` starts a comment, nested settings use dotted keys.
//! Canonical output (what [`save_config`] writes) lists every key in a fixed
//! order with reals at 17 significant digits:
//!
//! ```text
//! name = fig3a
//! econ.s = 1
//! econ.delta = 0.050000000000000003
//! econ.n = 0
//! production.alpha = 0.00050000000000000001
//! production.beta = 0.00050000000000000001
//! production.p = 4
//! production.q = 4
//! tech = constant
//! tech.level = 1
//! grid.length = 100
//! grid.n_cells = 100
//! time.dt = 0.40000000000000002
//! time.t_end = 200
//! ic = gaussian
//! ic.peak = 100
//! ic.center = 50
//! ic.spread = 1000
//! bc.left.kind = constant
//! bc.left.value = 0.82084998623898797
//! bc.right.kind = constant
//! bc.right.value = -0.82084998623898797
//! bc.d0 = -1
//! bc.d_l = 1
//! solver.source_form = consistent
//! solver.right_flux = local
//! solver.negativity = report
//! output.stride = 5
//! ```
//!
//! On input, `dt`, `t_end` and `dx` are accepted as short forms of
//! `time.dt`, `time.t_end` and a grid spacing (instead of `grid.n_cells`),
//! and `bc.left = constant 0.5` as a short form of the kind/value pair.
//! Omitted economic, grid, boundary and solver keys take their defaults;
//! `name`, `econ.delta`, `time.dt`, `time.t_end` and `ic` are required.
//! Unknown or duplicated keys are errors.

use std::collections::BTreeMap;

use super::{default_stride, ScenarioConfig};
use crate::econ::{
    BoundaryFlux, EconParams, FluxLaw, InitialProfile, ProductionParams, TechProgress,
};
use crate::error::{Error, Result};
use crate::fmt::real;
use crate::solver::{FluxArgument, Grid1D, NegativityPolicy, SolverOptions, SourceForm, TimeGrid};

pub fn save_config(config: &ScenarioConfig) -> String {
    let mut out = String::new();
    let mut kv = |k: &str, v: String| {
        out.push_str(k);
        out.push_str(" = ");
        out.push_str(&v);
        out.push('\n');
    };
    let e = &config.econ;
    kv("name", config.name.clone());
    kv("econ.s", real(e.s));
    kv("econ.delta", real(e.delta));
    kv("econ.n", real(e.n));
    kv("production.alpha", real(e.production.alpha()));
    kv("production.beta", real(e.production.beta()));
    kv("production.p", real(e.production.p()));
    kv("production.q", real(e.production.q()));
    match e.tech {
        TechProgress::Constant(c) => {
            kv("tech", "constant".into());
            kv("tech.level", real(c));
        }
        TechProgress::LinearInTime => kv("tech", "linear".into()),
        TechProgress::ExponentialInTime(r) => {
            kv("tech", "exponential".into());
            kv("tech.rate", real(r));
        }
    }
    kv("grid.length", real(config.grid.length()));
    kv("grid.n_cells", config.grid.n_cells().to_string());
    kv("time.dt", real(config.time.dt()));
    kv("time.t_end", real(config.time.t_end()));
    kv("ic", config.initial.kind().into());
    match config.initial {
        InitialProfile::Uniform { level } => kv("ic.level", real(level)),
        InitialProfile::Gaussian {
            peak,
            center,
            spread,
        } => {
            kv("ic.peak", real(peak));
            kv("ic.center", real(center));
            kv("ic.spread", real(spread));
        }
        InitialProfile::PiecewiseLinear {
            slope,
            c_max,
            ramp_left,
            ramp_right,
        } => {
            kv("ic.slope", real(slope));
            kv("ic.c_max", real(c_max));
            kv("ic.ramp_left", real(ramp_left));
            kv("ic.ramp_right", real(ramp_right));
        }
        InitialProfile::PiecewiseExponential {
            rate,
            ramp_left,
            ramp_right,
        } => {
            kv("ic.rate", real(rate));
            kv("ic.ramp_left", real(ramp_left));
            kv("ic.ramp_right", real(ramp_right));
        }
    }
    for (side, law) in [("left", config.bc.left), ("right", config.bc.right)] {
        kv(&format!("bc.{side}.kind"), law.kind().into());
        if let Some(v) = law.parameter() {
            kv(&format!("bc.{side}.value"), real(v));
        }
    }
    kv("bc.d0", real(config.bc.d0));
    kv("bc.d_l", real(config.bc.d_l));
    let o = &config.opts;
    kv(
        "solver.source_form",
        match o.source_form {
            SourceForm::Consistent => "consistent",
            SourceForm::PaperLiteral => "paper-literal",
        }
        .into(),
    );
    kv(
        "solver.right_flux",
        match o.right_flux_argument {
            FluxArgument::LocalBoundary => "local",
            FluxArgument::LeftBoundary => "left",
        }
        .into(),
    );
    kv(
        "solver.negativity",
        match o.negativity_policy {
            NegativityPolicy::Report => "report",
            NegativityPolicy::Abort => "abort",
        }
        .into(),
    );
    kv("output.stride", config.snapshot_stride.to_string());
    out
}

pub fn parse_source_form(s: &str) -> Option<SourceForm> {
    match s {
        "consistent" => Some(SourceForm::Consistent),
        "paper-literal" => Some(SourceForm::PaperLiteral),
        _ => None,
    }
}

pub fn parse_flux_argument(s: &str) -> Option<FluxArgument> {
    match s {
        "local" => Some(FluxArgument::LocalBoundary),
        "left" => Some(FluxArgument::LeftBoundary),
        _ => None,
    }
}

struct Entry {
    value: String,
    line: usize,
}

struct Entries {
    map: BTreeMap<String, Entry>,
    last_line: usize,
}

impl Entries {
    fn parse(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `key = value`, got {content:?}"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(Error::Parse {
                    line,
                    message: format!("empty key or value in {content:?}"),
                });
            }
            let key = match key {
                "dt" => "time.dt",
                "t_end" => "time.t_end",
                "dx" => "grid.dx",
                k => k,
            };
            let prev = map.insert(
                key.to_string(),
                Entry {
                    value: value.to_string(),
                    line,
                },
            );
            if let Some(prev) = prev {
                return Err(Error::Parse {
                    line,
                    message: format!("duplicate key {key:?} (first set on line {})", prev.line),
                });
            }
        }
        Ok(Entries { map, last_line })
    }

    fn take(&mut self, key: &str) -> Option<Entry> {
        self.map.remove(key)
    }

    fn require(&mut self, key: &str) -> Result<Entry> {
        self.take(key).ok_or_else(|| Error::Parse {
            line: self.last_line.max(1),
            message: format!("missing required key {key:?}"),
        })
    }

    fn real_opt(&mut self, key: &str) -> Result<Option<f64>> {
        self.take(key).map(|e| parse_real(&e)).transpose()
    }

    fn real(&mut self, key: &str, default: f64) -> Result<f64> {
        Ok(self.real_opt(key)?.unwrap_or(default))
    }

    fn real_req(&mut self, key: &str) -> Result<f64> {
        let e = self.require(key)?;
        parse_real(&e)
    }

    fn finish(self) -> Result<()> {
        if let Some((key, e)) = self.map.iter().min_by_key(|(_, e)| e.line) {
            return Err(Error::Parse {
                line: e.line,
                message: format!("unknown key {key:?}"),
            });
        }
        Ok(())
    }
}

fn parse_real(e: &Entry) -> Result<f64> {
    let v: f64 = e.value.parse().map_err(|_| Error::Parse {
        line: e.line,
        message: format!("expected a real number, got {:?}", e.value),
    })?;
    if !v.is_finite() {
        return Err(Error::Parse {
            line: e.line,
            message: format!("value must be finite, got {:?}", e.value),
        });
    }
    Ok(v)
}

fn parse_count(e: &Entry) -> Result<usize> {
    e.value.parse().map_err(|_| Error::Parse {
        line: e.line,
        message: format!("expected a nonnegative integer, got {:?}", e.value),
    })
}

fn bad_enum(e: &Entry, what: &str, allowed: &str) -> Error {
    Error::Parse {
        line: e.line,
        message: format!("unknown {what} {:?} (expected one of {allowed})", e.value),
    }
}

fn parse_flux(entries: &mut Entries, side: &str) -> Result<FluxLaw> {
    let short = entries.take(&format!("bc.{side}"));
    let long = entries.take(&format!("bc.{side}.kind"));
    let value_key = format!("bc.{side}.value");
    let (kind, inline_value) = match (short, long) {
        (Some(s), None) => {
            let mut parts = s.value.split_whitespace();
            let kind = parts.next().unwrap_or("").to_string();
            let value = parts
                .next()
                .map(|v| {
                    parse_real(&Entry {
                        value: v.to_string(),
                        line: s.line,
                    })
                })
                .transpose()?;
            if parts.next().is_some() {
                return Err(Error::Parse {
                    line: s.line,
                    message: format!("expected `bc.{side} = <kind> [value]`, got {:?}", s.value),
                });
            }
            (
                Entry {
                    value: kind,
                    line: s.line,
                },
                value,
            )
        }
        (None, Some(l)) => (l, None),
        (None, None) => return Ok(FluxLaw::Zero),
        (Some(s), Some(_)) => {
            return Err(Error::Parse {
                line: s.line,
                message: format!("bc.{side} given both as shorthand and as bc.{side}.kind"),
            })
        }
    };
    let value = match (inline_value, entries.take(&value_key)) {
        (Some(v), None) => Some(v),
        (None, Some(e)) => Some(parse_real(&e)?),
        (None, None) => None,
        (Some(_), Some(e)) => {
            return Err(Error::Parse {
                line: e.line,
                message: format!("{value_key} duplicates the shorthand value"),
            })
        }
    };
    let needs_value = |v: Option<f64>| {
        v.ok_or_else(|| Error::Parse {
            line: kind.line,
            message: format!("flux law {:?} needs {value_key}", kind.value),
        })
    };
    let law = match kind.value.as_str() {
        "zero" => {
            if value.is_some() {
                return Err(Error::Parse {
                    line: kind.line,
                    message: format!("flux law \"zero\" takes no {value_key}"),
                });
            }
            FluxLaw::Zero
        }
        "constant" => FluxLaw::Constant(needs_value(value)?),
        "proportional-local" => FluxLaw::ProportionalToLocal(needs_value(value)?),
        "proportional-left" => FluxLaw::ProportionalToLeft(needs_value(value)?),
        _ => {
            return Err(bad_enum(
                &kind,
                "flux law",
                "zero, constant, proportional-local, proportional-left",
            ))
        }
    };
    Ok(law)
}

/// Parses and validates a scenario. Syntax problems are [`Error::Parse`]
/// with the offending line; a well-formed but inconsistent scenario fails
/// with the error naming the violated invariant.
pub fn load_config(text: &str) -> Result<ScenarioConfig> {
    let mut en = Entries::parse(text)?;

    let name = en.require("name")?.value;

    let s = en.real("econ.s", 1.0)?;
    let delta = en.real_req("econ.delta")?;
    let n = en.real("econ.n", 0.0)?;
    let defaults = ProductionParams::default();
    let production = ProductionParams::new(
        en.real("production.alpha", defaults.alpha())?,
        en.real("production.beta", defaults.beta())?,
        en.real("production.p", defaults.p())?,
        en.real("production.q", defaults.q())?,
    )?;

    let tech = match en.take("tech") {
        None => TechProgress::Constant(en.real("tech.level", 1.0)?),
        Some(e) => match e.value.as_str() {
            "constant" => TechProgress::Constant(en.real("tech.level", 1.0)?),
            "linear" => TechProgress::LinearInTime,
            "exponential" => TechProgress::ExponentialInTime(en.real_req("tech.rate")?),
            _ => return Err(bad_enum(&e, "tech kind", "constant, linear, exponential")),
        },
    };

    let length = en.real("grid.length", 100.0)?;
    let grid = match (en.take("grid.n_cells"), en.take("grid.dx")) {
        (Some(c), None) => Grid1D::new(length, parse_count(&c)?)?,
        (None, Some(d)) => Grid1D::with_spacing(length, parse_real(&d)?)?,
        (None, None) => Grid1D::new(length, 100)?,
        (Some(_), Some(d)) => {
            return Err(Error::Parse {
                line: d.line,
                message: "give either grid.n_cells or dx, not both".into(),
            })
        }
    };

    let dt = en.real_req("time.dt")?;
    let t_end = en.real_req("time.t_end")?;
    let time = TimeGrid::new(dt, t_end)?;

    let ic = en.require("ic")?;
    let initial = match ic.value.as_str() {
        "uniform" => InitialProfile::Uniform {
            level: en.real_req("ic.level")?,
        },
        "gaussian" => InitialProfile::Gaussian {
            peak: en.real_req("ic.peak")?,
            center: en.real_req("ic.center")?,
            spread: en.real_req("ic.spread")?,
        },
        "piecewise-linear" => InitialProfile::PiecewiseLinear {
            slope: en.real_req("ic.slope")?,
            c_max: en.real_req("ic.c_max")?,
            ramp_left: en.real_req("ic.ramp_left")?,
            ramp_right: en.real_req("ic.ramp_right")?,
        },
        "piecewise-exponential" => InitialProfile::PiecewiseExponential {
            rate: en.real_req("ic.rate")?,
            ramp_left: en.real_req("ic.ramp_left")?,
            ramp_right: en.real_req("ic.ramp_right")?,
        },
        _ => {
            return Err(bad_enum(
                &ic,
                "initial profile",
                "uniform, gaussian, piecewise-linear, piecewise-exponential",
            ))
        }
    };

    let left = parse_flux(&mut en, "left")?;
    let right = parse_flux(&mut en, "right")?;
    let bc = BoundaryFlux::new(left, right, en.real("bc.d0", 1.0)?, en.real("bc.d_l", 1.0)?);

    let mut opts = SolverOptions::default();
    if let Some(e) = en.take("solver.source_form") {
        opts.source_form = parse_source_form(&e.value)
            .ok_or_else(|| bad_enum(&e, "source form", "consistent, paper-literal"))?;
    }
    if let Some(e) = en.take("solver.right_flux") {
        opts.right_flux_argument = parse_flux_argument(&e.value)
            .ok_or_else(|| bad_enum(&e, "right flux argument", "local, left"))?;
    }
    if let Some(e) = en.take("solver.negativity") {
        opts.negativity_policy = match e.value.as_str() {
            "report" => NegativityPolicy::Report,
            "abort" => NegativityPolicy::Abort,
            _ => return Err(bad_enum(&e, "negativity policy", "report, abort")),
        };
    }
    let snapshot_stride = match en.take("output.stride") {
        Some(e) => parse_count(&e)?,
        None => default_stride(&time),
    };

    en.finish()?;

    let config = ScenarioConfig {
        name,
        econ: EconParams {
            s,
            delta,
            n,
            production,
            tech,
        },
        grid,
        time,
        initial,
        bc,
        opts,
        snapshot_stride,
    };
    config.validate()?;
    Ok(config)
}
