//! Spatial Solow growth on a line segment.
//!
//! Capital density `k(x, t)` on `[0, L]` diffuses, accumulates through an
//! S-shaped production function and depreciates:
//!
//! ```text
//! k_t = k_xx + s A f(k) - delta k,    f(k) = alpha k^p / (1 + beta k^q)
//! ```
//!
//! with derivative (flux) conditions at both borders. The crate provides the
//! economic primitives and steady-state analysis ([`econ`]), an explicit
//! finite-difference solver ([`solver`]), ready-made scenarios and a text
//! config format ([`scenario`]), CSV/manifest output ([`output`]) and the
//! `capflow` command-line front end ([`cli`]).

// `!(x > 0.0)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod econ;
pub mod error;
pub mod fmt;
pub mod output;
pub mod scenario;
pub mod solver;

pub use error::{Error, Result};
pub use scenario::{load_config, preset, save_config, PresetId, ScenarioConfig};
pub use solver::{run, SnapshotSeries};
