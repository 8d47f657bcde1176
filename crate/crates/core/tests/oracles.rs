//! Cross-checks of the solver against independent references: the scalar
//! RK4 integrator, high-precision constants, fine quadrature and structural
//! properties of the scheme.

// Reference constants are kept at the precision they were computed with.
#![allow(clippy::excessive_precision)]

use capflow::econ::{
    critical_depreciation, find_equilibria, ode_solve_rk4, BoundaryFlux, EconParams,
    InitialProfile, TechProgress, RK4_DT,
};
use capflow::scenario::{preset, PresetId, ScenarioConfig};
use capflow::solver::{initial_field, run, self_convergence, total_capital, Grid1D, ObservedOrder};
use capflow::Error;

fn econ(delta: f64) -> EconParams {
    EconParams {
        delta,
        ..EconParams::default()
    }
}

#[test]
fn roots_match_high_precision_values() {
    let r = find_equilibria(&econ(0.05)).unwrap().root_values();
    let want = [0.0, 5.122740444455002631, 19.739990523966186029];
    assert_eq!(r.len(), 3);
    for (a, b) in r.iter().zip(want) {
        assert!((a - b).abs() < 1e-9, "{a} vs {b}");
    }
    let dc = critical_depreciation(&econ(0.05)).unwrap();
    assert!((dc - 0.085216452485062452638).abs() < 1e-9);
}

#[test]
fn unique_root_above_critical_depreciation() {
    let r = find_equilibria(&econ(0.09)).unwrap();
    assert_eq!(r.root_values(), vec![0.0]);
    let r = find_equilibria(&econ(0.5)).unwrap();
    assert_eq!(r.root_values(), vec![0.0]);
}

#[test]
fn rk4_settles_on_the_basin_root() {
    let e = econ(0.05);
    let roots = find_equilibria(&e).unwrap().root_values();
    // between the unstable and the upper root: monotone rise to the upper root
    let path = ode_solve_rk4(&e, 10.0, 1000.0, RK4_DT).unwrap();
    assert!(path.windows(2).all(|w| w[1].1 >= w[0].1));
    assert!((path.last().unwrap().1 - roots[2]).abs() < 1e-8);
    // just below the threshold: decay to zero
    let path = ode_solve_rk4(&e, roots[1] - 0.01, 1000.0, RK4_DT).unwrap();
    assert!(path.last().unwrap().1 < 1e-3);
}

#[test]
fn pde_uniform_run_tracks_rk4() {
    let mut c = preset(PresetId::Fig1a)
        .with_t_end(20.0)
        .unwrap()
        .with_dt(1e-3)
        .unwrap();
    c.snapshot_stride = 1000;
    let s = run(&c).unwrap();
    let oracle = ode_solve_rk4(&c.econ, 100.0, 20.0, RK4_DT).unwrap();
    let pde = s.last();
    let spread = pde.summary.max - pde.summary.min;
    assert!(spread <= 1e-12 * pde.summary.max);
    let k = oracle.last().unwrap().1;
    // forward Euler error is O(dt)
    assert!(
        (pde.summary.mean - k).abs() / k < 1e-3,
        "{} vs {k}",
        pde.summary.mean
    );
}

#[test]
fn gaussian_quadrature_against_fine_grid() {
    let c = preset(PresetId::Fig3a);
    let coarse = total_capital(&initial_field(&c).unwrap(), &c.grid);
    assert!((coarse - 5462.7829186431663).abs() < 1e-9);
    let mut fine = c.clone();
    fine.grid = Grid1D::new(100.0, 100_000).unwrap();
    let f = initial_field(&fine).unwrap();
    let exact = 5462.9197178514799173;
    assert!((total_capital(&f, &fine.grid) - exact).abs() < 1e-6);
    // second-order quadrature: coarse error about 0.137
    assert!((coarse - exact).abs() < 0.2);
}

#[test]
fn zero_field_stays_zero() {
    let mut c = preset(PresetId::Fig1b);
    c.initial = InitialProfile::Uniform { level: 0.0 };
    let s = run(&c).unwrap();
    assert!(s
        .snapshots
        .iter()
        .all(|snap| snap.field.values.iter().all(|&v| v == 0.0)));
}

#[test]
fn pure_diffusion_flattens_and_conserves() {
    let mut c = preset(PresetId::Fig3a);
    c.econ.s = 0.0;
    c.econ.delta = 0.0;
    c.bc = BoundaryFlux::zero();
    c = c.with_t_end(25_000.0).unwrap();
    let s = run(&c).unwrap();
    // slowest mode decays like exp(-pi^2 t / L^2)
    let first = s.first().summary;
    let last = s.last().summary;
    assert!((last.total - first.total).abs() / first.total < 1e-10);
    assert!(last.max - last.min < 1e-6);
    let mut prev = f64::INFINITY;
    for snap in &s.snapshots {
        let width = snap.summary.max - snap.summary.min;
        assert!(width <= prev);
        prev = width;
    }
}

#[test]
fn fig1b_decays_monotonically() {
    let s = run(&preset(PresetId::Fig1b)).unwrap();
    let means: Vec<f64> = s.snapshots.iter().map(|x| x.summary.mean).collect();
    assert!(means.windows(2).all(|w| w[1] < w[0]));
    assert!(*means.last().unwrap() < 1e-3);
}

#[test]
fn fig1a_settles_on_upper_root() {
    let c = preset(PresetId::Fig1a);
    let s = run(&c).unwrap();
    let upper = find_equilibria(&c.econ).unwrap().root_values()[2];
    assert!((s.last().summary.mean - upper).abs() < 1e-6);
}

#[test]
fn exponential_tech_needs_no_constant_level() {
    let c = preset(PresetId::Fig2a);
    assert!(matches!(c.econ.tech, TechProgress::ExponentialInTime(_)));
    assert!(matches!(find_equilibria(&c.econ), Err(Error::Config(_))));
}

#[test]
fn convergence_of_uniform_run_is_exact() {
    let c = preset(PresetId::Fig1b).with_t_end(2.0).unwrap();
    // a flat field has no spatial error at all, and dt/dx^2 is fixed, so the
    // levels only differ in dt; the report still yields a finite order
    let r = self_convergence(&c, 3).unwrap();
    assert_eq!(r.dx, vec![1.0, 0.5, 0.25]);
    assert_eq!(r.differences.len(), 2);
    let mut zero = c.clone();
    zero.initial = InitialProfile::Uniform { level: 0.0 };
    assert_eq!(
        self_convergence(&zero, 3).unwrap().observed(),
        ObservedOrder::Exact
    );
}

#[test]
fn convergence_refuses_unstable_and_shallow_studies() {
    let c: ScenarioConfig = preset(PresetId::Fig3b);
    assert!(matches!(self_convergence(&c, 2), Err(Error::Config(_))));
    let mut bad = c.clone();
    bad = bad.with_dt(0.6).unwrap();
    assert!(matches!(
        self_convergence(&bad, 3),
        Err(Error::Stability { .. })
    ));
}
