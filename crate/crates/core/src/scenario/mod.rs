//! Complete simulation setups: the figure presets, the plain-text config
//! format and parameter sweeps.

mod preset;
mod sweep;
mod text;

pub use preset::{flux_intensity, preset, PresetId};
pub use sweep::{sweep, SweepParameter};
pub use text::{load_config, parse_flux_argument, parse_source_form, save_config};

use crate::econ::{BoundaryFlux, EconParams, InitialProfile};
use crate::error::{Error, Result};
use crate::solver::{cfl_check, Grid1D, SolverOptions, TimeGrid};

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub name: String,
    pub econ: EconParams,
    pub grid: Grid1D,
    pub time: TimeGrid,
    pub initial: InitialProfile,
    pub bc: BoundaryFlux,
    pub opts: SolverOptions,
    pub snapshot_stride: usize,
}

/// About one hundred retained levels per run.
pub fn default_stride(time: &TimeGrid) -> usize {
    (time.n_steps() / 100).max(1)
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() {
            return Err(Error::Config("scenario name must not be empty".into()));
        }
        if self
            .name
            .chars()
            .any(|c| c.is_control() || c == '/' || c == '\\' || c == '#')
        {
            return Err(Error::Config(format!(
                "scenario name {:?} must be a single line without '/', '\\' or '#'",
                self.name
            )));
        }
        if self.name.trim() != self.name {
            return Err(Error::Config(format!(
                "scenario name {:?} has surrounding whitespace",
                self.name
            )));
        }
        self.econ.validate()?;
        cfl_check(&self.grid, &self.time)?;
        self.initial.validate(self.grid.length())?;
        self.bc.validate()?;
        if self.bc.has_flux() && matches!(self.initial, InitialProfile::Uniform { .. }) {
            return Err(Error::Config(
                "uniform initial profile with nonzero boundary flux: a flat profile is only \
                 consistent with zero flux on both borders"
                    .into(),
            ));
        }
        if self.snapshot_stride == 0 {
            return Err(Error::Config("snapshot stride must be positive".into()));
        }
        Ok(())
    }

    /// Replaces `dt`, keeping `t_end`.
    pub fn with_dt(mut self, dt: f64) -> Result<Self> {
        self.time = TimeGrid::new(dt, self.time.t_end())?;
        Ok(self)
    }

    /// Replaces `dx`, keeping the domain length.
    pub fn with_dx(mut self, dx: f64) -> Result<Self> {
        self.grid = Grid1D::with_spacing(self.grid.length(), dx)?;
        Ok(self)
    }

    pub fn with_t_end(mut self, t_end: f64) -> Result<Self> {
        self.time = TimeGrid::new(self.time.dt(), t_end)?;
        Ok(self)
    }
}
