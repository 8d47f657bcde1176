//! Grid self-convergence: run one scenario on successively halved grids with
//! `dt / dx^2` held fixed and estimate the observed order from differences
//! between consecutive levels on the coarse nodes.

use super::grid::{cfl_check, TimeGrid};
use super::run::run_to_end;
use crate::error::{Error, Result};
use crate::scenario::ScenarioConfig;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObservedOrder {
    /// All levels agree exactly; no rate can be measured.
    Exact,
    Finite(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub dx: Vec<f64>,
    /// Common final time of every level.
    pub final_time: f64,
    /// Max-norm difference between levels `i` and `i + 1` on the coarse nodes.
    pub differences: Vec<f64>,
    /// `log2(diff_i / diff_{i+1})` for each consecutive pair of differences.
    pub orders: Vec<ObservedOrder>,
}

impl ConvergenceReport {
    /// Order from the finest triple of levels.
    pub fn observed(&self) -> ObservedOrder {
        *self.orders.last().expect("at least three levels")
    }
}

/// Runs `levels` grids (`dx`, `dx/2`, ...). Every level integrates to the
/// coarse final time `n_steps * dt`, using `4^l` times as many steps, so the
/// levels are compared at exactly the same instant.
pub fn self_convergence(config: &ScenarioConfig, levels: usize) -> Result<ConvergenceReport> {
    if levels < 3 {
        return Err(Error::Config(format!(
            "self-convergence needs at least 3 levels, got {levels}"
        )));
    }
    config.validate()?;
    cfl_check(&config.grid, &config.time)?;

    let coarse_steps = config.time.n_steps();
    let final_time = config.time.final_time();
    let mut fields = Vec::with_capacity(levels);
    let mut dxs = Vec::with_capacity(levels);
    for l in 0..levels {
        let space = 1usize << l;
        let time = space * space;
        let mut c = config.clone();
        c.grid = config.grid.refined(space)?;
        let dt = config.time.dt() / time as f64;
        c.time = TimeGrid::new(dt, dt * (coarse_steps * time) as f64)?;
        debug_assert_eq!(c.time.n_steps(), coarse_steps * time);
        dxs.push(c.grid.dx());
        fields.push((space, run_to_end(&c)?));
    }

    let n_coarse = config.grid.n_nodes();
    let differences: Vec<f64> = fields
        .windows(2)
        .map(|w| {
            let ((sa, a), (sb, b)) = (&w[0], &w[1]);
            (0..n_coarse)
                .map(|j| (a.values[j * sa] - b.values[j * sb]).abs())
                .fold(0.0, f64::max)
        })
        .collect();

    let orders = differences
        .windows(2)
        .map(|d| {
            if d[0] == 0.0 && d[1] == 0.0 {
                ObservedOrder::Exact
            } else {
                ObservedOrder::Finite((d[0] / d[1]).log2())
            }
        })
        .collect();

    Ok(ConvergenceReport {
        dx: dxs,
        final_time,
        differences,
        orders,
    })
}
