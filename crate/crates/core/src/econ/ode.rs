//! Spatially lumped Solow ODE `dk/dt = s A(t) f(k) - (delta + n) k`.

use super::EconParams;
use crate::error::{Error, Result};

/// Step used when the ODE serves as a reference for the PDE solver.
pub const RK4_DT: f64 = 1e-3;

const OVERFLOW_GUARD: f64 = 1e15;

pub fn ode_rhs(econ: &EconParams, k: f64, t: f64) -> Result<f64> {
    if !k.is_finite() || k < 0.0 {
        return Err(Error::Domain(format!(
            "capital must be finite and nonnegative, got {k}"
        )));
    }
    let a = econ.tech.eval(0.0, t)?;
    Ok(rhs(econ, k, a))
}

#[inline]
fn rhs(econ: &EconParams, k: f64, a: f64) -> f64 {
    econ.s * a * econ.production.eval_raw(k) - (econ.delta + econ.n) * k
}

/// Classical fourth-order Runge-Kutta trajectory from `k0` on `[0, t_end]`.
///
/// The number of steps is `round(t_end / dt)` and the step is shrunk to land
/// exactly on `t_end`. A negative stage value is reported as
/// [`Error::Negativity`], never clamped.
pub fn ode_solve_rk4(econ: &EconParams, k0: f64, t_end: f64, dt: f64) -> Result<Vec<(f64, f64)>> {
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::StepSize {
            dt,
            reason: "step must be positive".into(),
        });
    }
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(Error::Domain(format!(
            "t_end must be positive, got {t_end}"
        )));
    }
    if dt > t_end {
        return Err(Error::StepSize {
            dt,
            reason: format!("step exceeds t_end = {t_end}"),
        });
    }
    if !k0.is_finite() || k0 < 0.0 {
        return Err(Error::Domain(format!(
            "k0 must be finite and nonnegative, got {k0}"
        )));
    }
    econ.validate()?;

    let n = (t_end / dt).round().max(1.0) as usize;
    let h = t_end / n as f64;
    let mut out = Vec::with_capacity(n + 1);
    out.push((0.0, k0));

    let tech = econ.tech;
    let mut k = k0;
    for i in 0..n {
        let t = i as f64 * h;
        let stage = |kk: f64, tt: f64| -> Result<f64> {
            if kk < 0.0 {
                return Err(Error::Negativity {
                    step: i + 1,
                    node: 0,
                    time: tt,
                    value: kk,
                });
            }
            Ok(rhs(econ, kk, tech.at(tt)))
        };
        let k1 = stage(k, t)?;
        let k2 = stage(k + 0.5 * h * k1, t + 0.5 * h)?;
        let k3 = stage(k + 0.5 * h * k2, t + 0.5 * h)?;
        let k4 = stage(k + h * k3, t + h)?;
        k += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

        let t_next = (i + 1) as f64 * h;
        if !k.is_finite() || k.abs() > OVERFLOW_GUARD {
            return Err(Error::Divergence {
                step: i + 1,
                node: 0,
                time: t_next,
                value: k,
            });
        }
        if k < 0.0 {
            return Err(Error::Negativity {
                step: i + 1,
                node: 0,
                time: t_next,
                value: k,
            });
        }
        out.push((t_next, k));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::econ::{ProductionParams, TechProgress};

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
    fn rhs_examples() {
        assert_eq!(ode_rhs(&econ(1.0, 0.05), 0.0, 3.0).unwrap(), 0.0);
        let v = ode_rhs(&econ(1.0, 0.05), 100.0, 0.0).unwrap();
        assert!((v - (50000.0 / 50001.0 - 5.0)).abs() < 1e-13);
        assert!((v + 4.00002).abs() < 1e-5);
        assert_eq!(ode_rhs(&econ(0.0, 0.0), 42.0, 1.0).unwrap(), 0.0);
        assert!(ode_rhs(&econ(1.0, 0.05), -1.0, 0.0).is_err());
    }

    #[test]
    fn rhs_includes_labor_growth() {
        let mut e = econ(0.0, 0.05);
        e.n = 0.02;
        assert!((ode_rhs(&e, 10.0, 0.0).unwrap() + 0.7).abs() < 1e-15);
    }

    #[test]
    fn rk4_decays_above_critical_depreciation() {
        let traj = ode_solve_rk4(&econ(1.0, 0.5), 100.0, 50.0, RK4_DT).unwrap();
        let (t, k) = *traj.last().unwrap();
        assert_eq!(t, 50.0);
        assert!((0.0..1e-3).contains(&k));
    }

    #[test]
    fn rk4_constant_without_forces() {
        let traj = ode_solve_rk4(&econ(0.0, 0.0), 100.0, 10.0, 0.1).unwrap();
        assert_eq!(traj.len(), 101);
        assert!(traj.iter().all(|&(_, k)| k == 100.0));
    }

    #[test]
    fn rk4_fourth_order_on_pure_decay() {
        // s = 0: k(t) = k0 exp(-delta t)
        let e = econ(0.0, 0.5);
        let exact = 100.0 * (-5.0f64).exp();
        let err = |dt| {
            (ode_solve_rk4(&e, 100.0, 10.0, dt)
                .unwrap()
                .last()
                .unwrap()
                .1
                - exact)
                .abs()
        };
        let order = (err(0.2) / err(0.1)).log2();
        assert!((order - 4.0).abs() < 0.1, "order {order}");
    }

    #[test]
    fn rk4_step_errors() {
        let e = econ(1.0, 0.05);
        assert!(matches!(
            ode_solve_rk4(&e, 1.0, 1.0, 0.0),
            Err(Error::StepSize { .. })
        ));
        assert!(matches!(
            ode_solve_rk4(&e, 1.0, 1.0, -0.1),
            Err(Error::StepSize { .. })
        ));
        assert!(matches!(
            ode_solve_rk4(&e, 1.0, 1.0, 2.0),
            Err(Error::StepSize { .. })
        ));
    }

    #[test]
    fn rk4_overflow_guard() {
        // exponential tech with huge rate overwhelms the saturating production
        let e = EconParams::new(
            1.0,
            0.0,
            ProductionParams::default(),
            TechProgress::ExponentialInTime(5.0),
        )
        .unwrap();
        assert!(matches!(
            ode_solve_rk4(&e, 100.0, 10.0, 0.01),
            Err(Error::Divergence { .. })
        ));
    }
}
