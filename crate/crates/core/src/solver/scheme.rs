//! Forward-time, centered-space update for
//! `k_t = k_xx + s A f(k) - delta k` with flux boundary conditions.
//!
//! Interior nodes:
//!
//! ```text
//! k_j' = (1 - dt delta) k_j + dt (k_{j+1} - 2 k_j + k_{j-1}) / dx^2 + dt s A_j f(k_j)
//! ```
//!
//! Boundary nodes fold a fictitious neighbour into the Laplacian:
//!
//! ```text
//! k_0' = (1 - dt delta) k_0 + 2 dt (k_1 - k_0 + d0 dx h1) / dx^2 + dt s A_0 f(k_0)
//! k_N' = (1 - dt delta) k_N + 2 dt (k_{N-1} - k_N + dL dx h2) / dx^2 + dt s A_N f(k_N)
//! ```
//!
//! Both flux terms enter with a plus sign, so with `s = delta = 0` the
//! trapezoidal total changes by exactly `dt (d0 h1 + dL h2)` per step: `h1`
//! and `h2` act as inflow rates. A law written as a derivative condition
//! `dk/dx(0) = h1` therefore uses `d0 = -1`; `dk/dx(L) = h2` uses `dL = +1`.

use super::grid::{cfl_check, Field, Grid1D, TimeGrid};
use crate::econ::{BoundaryFlux, EconParams, FluxLaw};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SourceForm {
    /// `dt s A f(k)`.
    #[default]
    Consistent,
    /// `dt s A + f(k)`, the additive form. Kept for comparison only: its
    /// uniform-field limit is not the Solow ODE.
    PaperLiteral,
}

/// Which boundary value the right-hand flux law receives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FluxArgument {
    #[default]
    LocalBoundary,
    LeftBoundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NegativityPolicy {
    /// Record the first negative value and keep going.
    #[default]
    Report,
    Abort,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolverOptions {
    pub source_form: SourceForm,
    pub right_flux_argument: FluxArgument,
    pub negativity_policy: NegativityPolicy,
}

/// Boundary values handed to the left and right flux laws.
#[inline]
fn flux_arguments(values: &[f64], bc: &BoundaryFlux, right_arg: FluxArgument) -> (f64, f64) {
    let k0 = values[0];
    let kn = values[values.len() - 1];
    let right = match (bc.right, right_arg) {
        (FluxLaw::ProportionalToLeft(_), _) | (_, FluxArgument::LeftBoundary) => k0,
        _ => kn,
    };
    (k0, right)
}

/// Fictitious values outside the domain:
/// `k_{-1} = k_1 + 2 d0 dx h1(k_0)` and `k_{N+1} = k_{N-1} - 2 dL dx h2(k_N)`.
///
/// These are the classical mirror-node formulas. Note that `step` does not
/// use the right one: its right-boundary update carries `+dL h2` (see the
/// module docs), i.e. it corresponds to `k_{N+1} = k_{N-1} + 2 dL dx h2`.
pub fn ghost_values(field: &Field, grid: &Grid1D, bc: &BoundaryFlux) -> Result<(f64, f64)> {
    field.check_grid(grid)?;
    if grid.n_cells() < 1 {
        return Err(Error::Contract(
            "ghost values need at least two nodes".into(),
        ));
    }
    let v = &field.values;
    let (arg_left, arg_right) = flux_arguments(v, bc, FluxArgument::LocalBoundary);
    let h1 = bc.left.eval(arg_left)?;
    let h2 = bc.right.eval(arg_right)?;
    let dx = grid.dx();
    let n = grid.n_cells();
    let left = v[1] + 2.0 * bc.d0 * dx * h1;
    let right = v[n - 1] - 2.0 * bc.d_l * dx * h2;
    if !left.is_finite() || !right.is_finite() {
        return Err(Error::Domain(format!(
            "non-finite ghost values ({left}, {right})"
        )));
    }
    Ok((left, right))
}

/// Advances `field` (at time `field.time`, a multiple of `dt`) by one step.
pub fn step(
    field: &Field,
    grid: &Grid1D,
    tg: &TimeGrid,
    econ: &EconParams,
    bc: &BoundaryFlux,
    opts: &SolverOptions,
) -> Result<Field> {
    field.check_grid(grid)?;
    cfl_check(grid, tg)?;
    let index = (field.time / tg.dt()).round() as usize;
    let mut out = vec![0.0; grid.n_nodes()];
    advance(
        &field.values,
        &mut out,
        grid,
        tg.dt(),
        field.time,
        econ,
        bc,
        opts,
    );
    let next = Field::new(out, tg.time(index + 1));
    check_level(&next, index + 1, opts)?;
    Ok(next)
}

/// Divergence is always fatal; negativity only under [`NegativityPolicy::Abort`].
pub(crate) fn check_level(field: &Field, step: usize, opts: &SolverOptions) -> Result<()> {
    if let Some((node, &value)) = field
        .values
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite())
    {
        return Err(Error::Divergence {
            step,
            node,
            time: field.time,
            value,
        });
    }
    if opts.negativity_policy == NegativityPolicy::Abort {
        if let Some((node, &value)) = field.values.iter().enumerate().find(|(_, v)| **v < 0.0) {
            return Err(Error::Negativity {
                step,
                node,
                time: field.time,
                value,
            });
        }
    }
    Ok(())
}

/// Kernel: reads level `n` from `cur`, writes level `n + 1` into `next`.
#[allow(clippy::too_many_arguments)]
#[inline]
pub(crate) fn advance(
    cur: &[f64],
    next: &mut [f64],
    grid: &Grid1D,
    dt: f64,
    t: f64,
    econ: &EconParams,
    bc: &BoundaryFlux,
    opts: &SolverOptions,
) {
    let n = cur.len() - 1;
    let dx = grid.dx();
    let r = dt / (dx * dx);
    let decay = 1.0 - dt * econ.delta;
    let a = econ.tech.at(t);
    let sa = econ.s * a;
    let production = econ.production;
    let source = |k: f64| match opts.source_form {
        SourceForm::Consistent => dt * sa * production.eval_raw(k),
        SourceForm::PaperLiteral => dt * sa + production.eval_raw(k),
    };

    for j in 1..n {
        let k = cur[j];
        let lap = (cur[j + 1] + cur[j - 1]) - 2.0 * k;
        next[j] = decay * k + r * lap + source(k);
    }

    let (arg_left, arg_right) = flux_arguments(cur, bc, opts.right_flux_argument);
    let h1 = bc.left.eval_raw(arg_left);
    let h2 = bc.right.eval_raw(arg_right);

    let k0 = cur[0];
    next[0] = decay * k0 + 2.0 * r * (cur[1] - k0 + bc.d0 * dx * h1) + source(k0);
    let kn = cur[n];
    next[n] = decay * kn + 2.0 * r * (cur[n - 1] - kn + bc.d_l * dx * h2) + source(kn);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::econ::{ProductionParams, TechProgress};
    use crate::solver::total_capital;

    fn grid() -> Grid1D {
        Grid1D::new(100.0, 100).unwrap()
    }

    fn econ(s: f64, delta: f64) -> EconParams {
        EconParams::new(
            s,
            delta,
            ProductionParams::default(),
            TechProgress::Constant(1.0),
        )
        .unwrap()
    }

    #[test]
    fn ghost_zero_flux_mirrors() {
        let g = Grid1D::new(4.0, 4).unwrap();
        let f = Field::new(vec![1.0, 5.0, 2.0, 7.0, 3.0], 0.0);
        assert_eq!(
            ghost_values(&f, &g, &BoundaryFlux::zero()).unwrap(),
            (5.0, 7.0)
        );
    }

    #[test]
    fn ghost_constant_flux() {
        let g = Grid1D::new(4.0, 4).unwrap();
        let f = Field::new(vec![1.0, 5.0, 2.0, 5.0, 3.0], 0.0);
        let bc = BoundaryFlux::new(FluxLaw::Constant(0.5), FluxLaw::Constant(0.5), 1.0, 1.0);
        let (l, r) = ghost_values(&f, &g, &bc).unwrap();
        assert_eq!(l, 6.0);
        assert_eq!(r, 4.0);
    }

    #[test]
    fn ghost_rejects_wrong_length() {
        let f = Field::new(vec![1.0; 3], 0.0);
        assert!(matches!(
            ghost_values(&f, &grid(), &BoundaryFlux::zero()),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn left_update_matches_ghost_substitution() {
        let g = Grid1D::new(4.0, 4).unwrap();
        let tg = TimeGrid::new(0.25, 1.0).unwrap();
        let f = Field::new(vec![1.0, 5.0, 2.0, 7.0, 3.0], 0.0);
        let bc = BoundaryFlux::new(FluxLaw::Constant(0.5), FluxLaw::Zero, 1.0, 1.0);
        let e = econ(0.0, 0.0);
        let next = step(&f, &g, &tg, &e, &bc, &SolverOptions::default()).unwrap();
        let (ghost, _) = ghost_values(&f, &g, &bc).unwrap();
        let want = f.values[0] + 0.25 * (f.values[1] - 2.0 * f.values[0] + ghost);
        assert_eq!(next.values[0], want);
    }

    #[test]
    fn uniform_step_example() {
        let tg = TimeGrid::new(0.4, 50.0).unwrap();
        let f = Field::uniform(&grid(), 100.0);
        let next = step(
            &f,
            &grid(),
            &tg,
            &econ(1.0, 0.05),
            &BoundaryFlux::zero(),
            &SolverOptions::default(),
        )
        .unwrap();
        let want = 100.0 + 0.4 * (50000.0 / 50001.0 - 5.0);
        assert!(next.values.iter().all(|&v| v == next.values[0]));
        assert!((next.values[0] - want).abs() < 1e-12);
        assert!((next.values[0] - 98.40).abs() < 5e-3);
        assert_eq!(next.time, 0.4);
    }

    #[test]
    fn zero_field_is_fixed() {
        let tg = TimeGrid::new(0.4, 50.0).unwrap();
        let f = Field::uniform(&grid(), 0.0);
        let bc = BoundaryFlux::new(
            FluxLaw::ProportionalToLocal(1.0),
            FluxLaw::ProportionalToLocal(-1.0),
            -1.0,
            1.0,
        );
        let next = step(
            &f,
            &grid(),
            &tg,
            &econ(1.0, 0.05),
            &bc,
            &SolverOptions::default(),
        )
        .unwrap();
        assert!(next.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn diffusion_conserves_total() {
        let tg = TimeGrid::new(0.4, 50.0).unwrap();
        let g = grid();
        let values: Vec<f64> = g
            .nodes()
            .map(|x| (x / 7.0).sin().abs() * 30.0 + x)
            .collect();
        let f = Field::new(values, 0.0);
        let next = step(
            &f,
            &g,
            &tg,
            &econ(0.0, 0.0),
            &BoundaryFlux::zero(),
            &SolverOptions::default(),
        )
        .unwrap();
        let (before, after) = (total_capital(&f, &g), total_capital(&next, &g));
        assert!((after - before).abs() <= 1e-12 * before);
    }

    #[test]
    fn paper_literal_source() {
        let tg = TimeGrid::new(0.4, 50.0).unwrap();
        let f = Field::uniform(&grid(), 100.0);
        let opts = SolverOptions {
            source_form: SourceForm::PaperLiteral,
            ..Default::default()
        };
        let next = step(
            &f,
            &grid(),
            &tg,
            &econ(1.0, 0.05),
            &BoundaryFlux::zero(),
            &opts,
        )
        .unwrap();
        let want = (1.0 - 0.4 * 0.05) * 100.0 + 0.4 + 50000.0 / 50001.0;
        assert!((next.values[50] - want).abs() < 1e-12);
    }

    #[test]
    fn right_flux_argument_selects_left_value() {
        let g = Grid1D::new(2.0, 2).unwrap();
        let tg = TimeGrid::new(0.5, 1.0).unwrap();
        let f = Field::new(vec![2.0, 3.0, 4.0], 0.0);
        let bc = BoundaryFlux::new(FluxLaw::Zero, FluxLaw::ProportionalToLocal(-1.0), 1.0, 1.0);
        let e = econ(0.0, 0.0);
        let local = step(&f, &g, &tg, &e, &bc, &SolverOptions::default()).unwrap();
        let opts = SolverOptions {
            right_flux_argument: FluxArgument::LeftBoundary,
            ..Default::default()
        };
        let left = step(&f, &g, &tg, &e, &bc, &opts).unwrap();
        // 4 + 2 * 0.5 * (3 - 4 - k)
        assert_eq!(local.values[2], 4.0 + (3.0 - 4.0 - 4.0));
        assert_eq!(left.values[2], 4.0 + (3.0 - 4.0 - 2.0));
        let law_left =
            BoundaryFlux::new(FluxLaw::Zero, FluxLaw::ProportionalToLeft(-1.0), 1.0, 1.0);
        assert_eq!(
            step(&f, &g, &tg, &e, &law_left, &SolverOptions::default()).unwrap(),
            left
        );
    }

    #[test]
    fn step_refuses_unstable_ratio() {
        let tg = TimeGrid::new(0.6, 6.0).unwrap();
        let f = Field::uniform(&grid(), 1.0);
        let r = step(
            &f,
            &grid(),
            &tg,
            &econ(1.0, 0.05),
            &BoundaryFlux::zero(),
            &SolverOptions::default(),
        );
        assert!(matches!(r, Err(Error::Stability { .. })));
    }

    #[test]
    fn negativity_abort() {
        let g = Grid1D::new(2.0, 2).unwrap();
        let tg = TimeGrid::new(0.5, 1.0).unwrap();
        let f = Field::new(vec![0.0, 0.0, 0.0], 0.0);
        let bc = BoundaryFlux::new(FluxLaw::Constant(-1.0), FluxLaw::Zero, 1.0, 1.0);
        let abort = SolverOptions {
            negativity_policy: NegativityPolicy::Abort,
            ..Default::default()
        };
        let e = econ(0.0, 0.0);
        assert!(matches!(
            step(&f, &g, &tg, &e, &bc, &abort),
            Err(Error::Negativity { node: 0, .. })
        ));
        let reported = step(&f, &g, &tg, &e, &bc, &SolverOptions::default()).unwrap();
        assert_eq!(reported.values[0], -1.0);
    }
}
