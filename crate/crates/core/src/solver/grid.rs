use crate::error::{Error, Result};

/// Largest admissible `dt / dx^2` for the explicit scheme.
pub const CFL_LIMIT: f64 = 0.5;

/// Uniform grid on `[0, length]` with nodes `x_j = j dx`, `j = 0..=n_cells`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    length: f64,
    n_cells: usize,
    dx: f64,
}

impl Grid1D {
    pub fn new(length: f64, n_cells: usize) -> Result<Self> {
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Config(format!(
                "grid length must be positive, got {length}"
            )));
        }
        if n_cells == 0 {
            return Err(Error::Config("grid needs at least one cell".into()));
        }
        Ok(Grid1D {
            length,
            n_cells,
            dx: length / n_cells as f64,
        })
    }

    /// Grid with spacing `dx`; `length / dx` must be (numerically) an integer.
    pub fn with_spacing(length: f64, dx: f64) -> Result<Self> {
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::Config(format!("dx must be positive, got {dx}")));
        }
        let cells = (length / dx).round();
        if cells < 1.0 || ((cells * dx - length).abs() > 1e-9 * length) {
            return Err(Error::Config(format!(
                "dx = {dx} does not divide the domain length {length} into whole cells"
            )));
        }
        Grid1D::new(length, cells as usize)
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn n_nodes(&self) -> usize {
        self.n_cells + 1
    }

    pub fn x(&self, j: usize) -> f64 {
        if j == self.n_cells {
            self.length
        } else {
            j as f64 * self.dx
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n_nodes()).map(|j| self.x(j))
    }

    /// Same domain with each cell split in `factor`.
    pub fn refined(&self, factor: usize) -> Result<Self> {
        Grid1D::new(self.length, self.n_cells * factor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    dt: f64,
    t_end: f64,
    n_steps: usize,
}

impl TimeGrid {
    /// `n_steps = round(t_end / dt)`, so the run ends within `dt / 2` of `t_end`.
    pub fn new(dt: f64, t_end: f64) -> Result<Self> {
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::StepSize {
                dt,
                reason: "time step must be positive".into(),
            });
        }
        if !(t_end > 0.0) || !t_end.is_finite() {
            return Err(Error::Config(format!(
                "t_end must be positive, got {t_end}"
            )));
        }
        let n_steps = (t_end / dt).round();
        if n_steps < 1.0 {
            return Err(Error::StepSize {
                dt,
                reason: format!("step exceeds twice the horizon t_end = {t_end}"),
            });
        }
        Ok(TimeGrid {
            dt,
            t_end,
            n_steps: n_steps as usize,
        })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    /// Time of level `n`, computed by multiplication so it never drifts.
    pub fn time(&self, n: usize) -> f64 {
        n as f64 * self.dt
    }

    pub fn final_time(&self) -> f64 {
        self.time(self.n_steps)
    }
}

pub fn cfl_ratio(grid: &Grid1D, tg: &TimeGrid) -> f64 {
    tg.dt() / (grid.dx() * grid.dx())
}

/// Returns `dt / dx^2`, or a stability error when it exceeds one half.
pub fn cfl_check(grid: &Grid1D, tg: &TimeGrid) -> Result<f64> {
    let ratio = cfl_ratio(grid, tg);
    if ratio > CFL_LIMIT {
        return Err(Error::Stability {
            ratio,
            max_dt: CFL_LIMIT * grid.dx() * grid.dx(),
        });
    }
    Ok(ratio)
}

/// Capital at every node of a grid at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    pub values: Vec<f64>,
    pub time: f64,
}

impl Field {
    pub fn new(values: Vec<f64>, time: f64) -> Self {
        Field { values, time }
    }

    pub fn uniform(grid: &Grid1D, level: f64) -> Self {
        Field::new(vec![level; grid.n_nodes()], 0.0)
    }

    pub fn check_grid(&self, grid: &Grid1D) -> Result<()> {
        if self.values.len() != grid.n_nodes() {
            return Err(Error::Contract(format!(
                "field has {} values but the grid has {} nodes",
                self.values.len(),
                grid.n_nodes()
            )));
        }
        Ok(())
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_nodes() {
        let g = Grid1D::new(100.0, 100).unwrap();
        assert_eq!(g.n_nodes(), 101);
        assert_eq!(g.dx(), 1.0);
        assert_eq!(g.x(37), 37.0);
        assert_eq!(g.x(100), 100.0);
        let g = Grid1D::new(1.0, 3).unwrap();
        assert!((g.dx() * 3.0 - 1.0).abs() <= f64::EPSILON);
        assert_eq!(g.x(3), 1.0);
    }

    #[test]
    fn grid_from_spacing() {
        assert_eq!(Grid1D::with_spacing(100.0, 0.25).unwrap().n_cells(), 400);
        assert!(Grid1D::with_spacing(100.0, 0.3).is_err());
        assert!(Grid1D::with_spacing(100.0, 0.0).is_err());
        assert!(Grid1D::new(0.0, 10).is_err());
        assert!(Grid1D::new(1.0, 0).is_err());
    }

    #[test]
    fn time_grid_rounding() {
        let tg = TimeGrid::new(0.4, 50.0).unwrap();
        assert_eq!(tg.n_steps(), 125);
        let tg = TimeGrid::new(0.4, 5.0).unwrap();
        assert_eq!(tg.n_steps(), 13);
        assert!((tg.final_time() - tg.t_end()).abs() <= 0.5 * tg.dt() + 1e-12);
        assert!(TimeGrid::new(0.0, 1.0).is_err());
        assert!(TimeGrid::new(0.1, -1.0).is_err());
    }

    #[test]
    fn cfl_examples() {
        let g = Grid1D::new(100.0, 100).unwrap();
        let ok = |dt| cfl_check(&g, &TimeGrid::new(dt, 10.0).unwrap());
        assert_eq!(ok(0.4).unwrap(), 0.4);
        assert_eq!(ok(0.5).unwrap(), 0.5);
        match ok(0.6) {
            Err(Error::Stability { ratio, max_dt }) => {
                assert_eq!(ratio, 0.6);
                assert_eq!(max_dt, 0.5);
            }
            other => panic!("expected stability error, got {other:?}"),
        }
    }
}
