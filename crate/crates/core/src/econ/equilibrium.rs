//! Rest points of the lumped ODE and the depreciation threshold above which
//! zero is the only one.
//!
//! With the S-shaped production function, `s A f(k) = delta k` has up to three
//! nonnegative roots for moderate `delta`: the stable origin, an unstable
//! threshold and a stable upper level. Economies starting below the threshold
//! decay to zero (the poverty trap).

use super::EconParams;
use crate::error::{Error, Result};

const SCAN_INTERVALS: usize = 10_000;
const MERGE_TOL: f64 = 1e-6;
const GOLDEN_RTOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stability {
    Stable,
    Unstable,
    /// Merged or tangent root; no claim is made.
    Degenerate,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Equilibrium {
    pub k: f64,
    pub stability: Stability,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    /// Sorted ascending; the origin is always first.
    pub roots: Vec<Equilibrium>,
    /// `None` when the production exponents admit no interior maximum of `f(k)/k`.
    pub critical_delta: Option<f64>,
    /// Upper end of the scanned interval.
    pub scan_max: f64,
}

impl EquilibriumReport {
    pub fn root_values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.k).collect()
    }
}

fn constant_tech(econ: &EconParams) -> Result<f64> {
    econ.tech.constant_level().ok_or_else(|| {
        Error::Config(format!(
            "equilibrium analysis needs constant technology, got {:?}",
            econ.tech
        ))
    })
}

/// Upper end of the root scan: ten times the largest balanced level reachable
/// with saturated production, and never below 1000.
pub fn scan_limit(econ: &EconParams, level: f64) -> f64 {
    let p = &econ.production;
    let depreciation = econ.delta + econ.n;
    (10.0 * econ.s * level * p.alpha() / p.beta() / depreciation).max(1e3)
}

pub fn find_equilibria(econ: &EconParams) -> Result<EquilibriumReport> {
    econ.validate()?;
    let level = constant_tech(econ)?;
    if !(econ.delta > 0.0) {
        return Err(Error::Config(format!(
            "equilibrium analysis needs delta > 0, got {}",
            econ.delta
        )));
    }
    let depreciation = econ.delta + econ.n;
    let gain = econ.s * level;
    let g = |k: f64| gain * econ.production.eval_raw(k) - depreciation * k;

    let k_max = scan_limit(econ, level);
    let h = k_max / SCAN_INTERVALS as f64;

    let mut found = vec![0.0];
    let mut prev_k = h;
    let mut prev_g = g(prev_k);
    if prev_g == 0.0 {
        found.push(prev_k);
    }
    for i in 2..=SCAN_INTERVALS {
        let k = i as f64 * h;
        let gk = g(k);
        if gk == 0.0 {
            found.push(k);
        } else if prev_g != 0.0 && prev_g.signum() != gk.signum() {
            found.push(bisect(&g, prev_k, k, prev_g));
        }
        prev_k = k;
        prev_g = gk;
    }

    // merge near-coincident roots
    let mut roots: Vec<Equilibrium> = Vec::with_capacity(found.len());
    for k in found {
        match roots.last_mut() {
            Some(last) if k - last.k < MERGE_TOL => last.stability = Stability::Degenerate,
            _ => roots.push(Equilibrium {
                k,
                stability: Stability::Stable,
            }),
        }
    }

    let values: Vec<f64> = roots.iter().map(|r| r.k).collect();
    for (i, root) in roots.iter_mut().enumerate() {
        if root.stability == Stability::Degenerate {
            continue;
        }
        let right_gap = values.get(i + 1).map_or(h, |next| next - root.k);
        let right = g(root.k + 0.5 * right_gap.min(h));
        let left = if i == 0 {
            None
        } else {
            let left_gap = root.k - values[i - 1];
            Some(g(root.k - 0.5 * left_gap.min(h)))
        };
        root.stability = match (left, right) {
            (None, r) if r < 0.0 => Stability::Stable,
            (None, r) if r > 0.0 => Stability::Unstable,
            (Some(l), r) if l > 0.0 && r < 0.0 => Stability::Stable,
            (Some(l), r) if l < 0.0 && r > 0.0 => Stability::Unstable,
            _ => Stability::Degenerate,
        };
    }

    let critical_delta = critical_depreciation(econ).ok();
    Ok(EquilibriumReport {
        roots,
        critical_delta,
        scan_max: k_max,
    })
}

fn bisect(g: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, mut g_lo: f64) -> f64 {
    // Halve until the bracket is two adjacent floats; the sign change of g
    // is then resolved to machine precision.
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        if g_mid == 0.0 {
            return mid;
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn check_interior_max(econ: &EconParams) -> Result<f64> {
    econ.validate()?;
    let level = constant_tech(econ)?;
    let p = econ.production;
    if p.p() <= 1.0 {
        return Err(Error::Config(format!(
            "critical depreciation needs p > 1 for an interior maximum, got p = {}",
            p.p()
        )));
    }
    if p.q() <= p.p() - 1.0 {
        return Err(Error::Config(format!(
            "f(k)/k is unbounded or has no interior maximum for q <= p - 1 (p = {}, q = {})",
            p.p(),
            p.q()
        )));
    }
    Ok(level)
}

/// Argmax of the unimodal `f(k)/k`: geometric bracketing, then golden section
/// to relative width `GOLDEN_RTOL`.
fn ratio_argmax(econ: &EconParams) -> f64 {
    let p = econ.production;
    let ratio = |k: f64| p.eval_raw(k) / k;

    let mut mid = 1.0;
    while ratio(2.0 * mid) > ratio(mid) {
        mid *= 2.0;
    }
    while ratio(0.5 * mid) > ratio(mid) {
        mid *= 0.5;
    }
    let (mut a, mut b) = (0.5 * mid, 2.0 * mid);

    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (ratio(c), ratio(d));
    while (b - a) > GOLDEN_RTOL * 0.5 * (a + b) {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = ratio(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = ratio(d);
        }
    }
    0.5 * (a + b)
}

/// Largest depreciation rate that still admits a positive equilibrium,
/// `max_{k > 0} s A f(k) / k`.
pub fn critical_depreciation(econ: &EconParams) -> Result<f64> {
    let level = check_interior_max(econ)?;
    let gain = econ.s * level;
    if gain == 0.0 {
        return Ok(0.0);
    }
    let k_star = ratio_argmax(econ);
    Ok(gain * econ.production.eval_raw(k_star) / k_star)
}

/// Capital level where `f(k)/k` peaks; independent of `s` and `A`.
pub fn critical_capital(econ: &EconParams) -> Result<f64> {
    check_interior_max(econ)?;
    Ok(ratio_argmax(econ))
}
