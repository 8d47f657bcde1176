//! Model ingredients of the spatial Solow economy.
//!
//! The capital stock `k(x, t)` evolves under
//!
//! ```text
//! dk/dt = d2k/dx2 + s A(x,t) f(k) - delta k
//! f(k)  = alpha k^p / (1 + beta k^q)
//! ```
//!
//! This module holds the pointwise pieces: the S-shaped production function,
//! technological progress `A`, the initial capital profiles and the border
//! flux laws. The spatially lumped ODE and its equilibrium analysis live in
//! [`ode`] and [`equilibrium`].

pub mod equilibrium;
pub mod ode;

use crate::error::{Error, Result};

pub use equilibrium::{
    critical_capital, critical_depreciation, find_equilibria, Equilibrium, EquilibriumReport,
    Stability,
};
pub use ode::{ode_rhs, ode_solve_rk4, RK4_DT};

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite, got {v}")))
    }
}

/// `k^e`, using repeated multiplication when the exponent is integral.
#[inline]
fn pow(k: f64, e: f64, int_exp: Option<i32>) -> f64 {
    match int_exp {
        Some(i) => k.powi(i),
        None => k.powf(e),
    }
}

fn integral(e: f64) -> Option<i32> {
    (e.fract() == 0.0 && e.abs() <= 64.0).then_some(e as i32)
}

/// Coefficients of the S-shaped production function `alpha k^p / (1 + beta k^q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductionParams {
    alpha: f64,
    beta: f64,
    p: f64,
    q: f64,
}

impl ProductionParams {
    pub fn new(alpha: f64, beta: f64, p: f64, q: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta), ("p", p), ("q", q)] {
            check_finite(name, v)?;
        }
        if alpha <= 0.0 || beta <= 0.0 {
            return Err(Error::Domain(format!(
                "production scales must be positive (alpha = {alpha}, beta = {beta})"
            )));
        }
        if p < 1.0 || q < 1.0 {
            return Err(Error::Domain(format!(
                "production exponents must be >= 1 (p = {p}, q = {q})"
            )));
        }
        Ok(ProductionParams { alpha, beta, p, q })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    /// Output per capita at capital level `k`.
    pub fn eval(&self, k: f64) -> Result<f64> {
        check_finite("k", k)?;
        if k < 0.0 {
            return Err(Error::Domain(format!(
                "capital must be nonnegative, got {k}"
            )));
        }
        Ok(self.eval_raw(k))
    }

    /// The bare formula, with no domain check. Used by the solver kernel,
    /// which must keep running (and report) when capital turns negative.
    #[inline]
    pub(crate) fn eval_raw(&self, k: f64) -> f64 {
        let num = self.alpha * pow(k, self.p, integral(self.p));
        num / (1.0 + self.beta * pow(k, self.q, integral(self.q)))
    }
}

impl Default for ProductionParams {
    /// alpha = beta = 0.0005, p = q = 4.
    fn default() -> Self {
        ProductionParams {
            alpha: 0.0005,
            beta: 0.0005,
            p: 4.0,
            q: 4.0,
        }
    }
}

pub fn eval_production(params: &ProductionParams, k: f64) -> Result<f64> {
    params.eval(k)
}

/// Technological progress `A(x, t)`. None of the variants depend on `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TechProgress {
    Constant(f64),
    LinearInTime,
    ExponentialInTime(f64),
}

impl TechProgress {
    pub fn validate(&self) -> Result<()> {
        match *self {
            TechProgress::Constant(c) => {
                check_finite("tech level", c)?;
                if c < 0.0 {
                    return Err(Error::Domain(format!(
                        "tech level must be nonnegative, got {c}"
                    )));
                }
                Ok(())
            }
            TechProgress::LinearInTime => Ok(()),
            TechProgress::ExponentialInTime(r) => check_finite("tech rate", r),
        }
    }

    pub fn eval(&self, _x: f64, t: f64) -> Result<f64> {
        check_finite("t", t)?;
        if t < 0.0 {
            return Err(Error::Domain(format!("time must be nonnegative, got {t}")));
        }
        Ok(self.at(t))
    }

    #[inline]
    pub(crate) fn at(&self, t: f64) -> f64 {
        match *self {
            TechProgress::Constant(c) => c,
            TechProgress::LinearInTime => t,
            TechProgress::ExponentialInTime(r) => (r * t).exp(),
        }
    }

    pub fn constant_level(&self) -> Option<f64> {
        match *self {
            TechProgress::Constant(c) => Some(c),
            _ => None,
        }
    }
}

impl Default for TechProgress {
    fn default() -> Self {
        TechProgress::Constant(1.0)
    }
}

pub fn eval_tech(tech: &TechProgress, x: f64, t: f64) -> Result<f64> {
    tech.eval(x, t)
}

/// Initial capital distribution `k0(x)` on `[0, L]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialProfile {
    Uniform {
        level: f64,
    },
    /// `peak * exp(-(x - center)^2 / spread)`.
    Gaussian {
        peak: f64,
        center: f64,
        spread: f64,
    },
    /// Ramp `slope * x` up to a plateau `c_max` on `[ramp_left, ramp_right]`,
    /// then the mirrored ramp down.
    PiecewiseLinear {
        slope: f64,
        c_max: f64,
        ramp_left: f64,
        ramp_right: f64,
    },
    /// `exp(rate * x)` up to the plateau `exp(rate * ramp_left)`, then the
    /// mirrored decay `exp(rate * (ramp_left + ramp_right - x))`.
    PiecewiseExponential {
        rate: f64,
        ramp_left: f64,
        ramp_right: f64,
    },
}

impl InitialProfile {
    pub fn piecewise_linear(
        slope: f64,
        c_max: f64,
        ramp_left: f64,
        ramp_right: f64,
    ) -> Result<Self> {
        let p = InitialProfile::PiecewiseLinear {
            slope,
            c_max,
            ramp_left,
            ramp_right,
        };
        p.check_shape()?;
        Ok(p)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InitialProfile::Uniform { .. } => "uniform",
            InitialProfile::Gaussian { .. } => "gaussian",
            InitialProfile::PiecewiseLinear { .. } => "piecewise-linear",
            InitialProfile::PiecewiseExponential { .. } => "piecewise-exponential",
        }
    }

    fn check_shape(&self) -> Result<()> {
        match *self {
            InitialProfile::Uniform { level } => {
                check_finite("ic level", level)?;
                if level < 0.0 {
                    return Err(Error::Domain(format!(
                        "uniform level must be nonnegative, got {level}"
                    )));
                }
            }
            InitialProfile::Gaussian {
                peak,
                center,
                spread,
            } => {
                check_finite("ic peak", peak)?;
                check_finite("ic center", center)?;
                check_finite("ic spread", spread)?;
                if peak < 0.0 || spread <= 0.0 {
                    return Err(Error::Domain(format!(
                        "gaussian needs peak >= 0 and spread > 0 (peak = {peak}, spread = {spread})"
                    )));
                }
            }
            InitialProfile::PiecewiseLinear {
                slope,
                c_max,
                ramp_left,
                ramp_right,
            } => {
                for (n, v) in [
                    ("ic slope", slope),
                    ("ic c_max", c_max),
                    ("ic ramp_left", ramp_left),
                    ("ic ramp_right", ramp_right),
                ] {
                    check_finite(n, v)?;
                }
                if slope < 0.0 || ramp_left < 0.0 || ramp_right < ramp_left {
                    return Err(Error::Domain(format!(
                        "piecewise-linear needs slope >= 0 and 0 <= ramp_left <= ramp_right \
                         (slope = {slope}, ramps = [{ramp_left}, {ramp_right}])"
                    )));
                }
                if c_max != slope * ramp_left {
                    return Err(Error::Domain(format!(
                        "piecewise-linear plateau must equal slope * ramp_left for continuity \
                         (c_max = {c_max}, slope * ramp_left = {})",
                        slope * ramp_left
                    )));
                }
            }
            InitialProfile::PiecewiseExponential {
                rate,
                ramp_left,
                ramp_right,
            } => {
                for (n, v) in [
                    ("ic rate", rate),
                    ("ic ramp_left", ramp_left),
                    ("ic ramp_right", ramp_right),
                ] {
                    check_finite(n, v)?;
                }
                if ramp_left < 0.0 || ramp_right < ramp_left {
                    return Err(Error::Domain(format!(
                        "piecewise-exponential needs 0 <= ramp_left <= ramp_right (got [{ramp_left}, {ramp_right}])"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks the profile against a domain `[0, length]`: ramps must fit and
    /// the profile must stay nonnegative at the far end.
    pub fn validate(&self, length: f64) -> Result<()> {
        self.check_shape()?;
        if let InitialProfile::PiecewiseLinear { ramp_right, .. }
        | InitialProfile::PiecewiseExponential { ramp_right, .. } = *self
        {
            if ramp_right > length {
                return Err(Error::Config(format!(
                    "initial profile ramp_right = {ramp_right} lies outside [0, {length}]"
                )));
            }
        }
        let end = self.value(length);
        if !(end >= 0.0) || !end.is_finite() {
            return Err(Error::Config(format!(
                "initial profile is negative or non-finite at x = {length} (value {end})"
            )));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64, length: f64) -> Result<f64> {
        check_finite("x", x)?;
        if !(length > 0.0) {
            return Err(Error::Domain(format!(
                "domain length must be positive, got {length}"
            )));
        }
        if x < 0.0 || x > length {
            return Err(Error::Domain(format!("x = {x} outside [0, {length}]")));
        }
        self.check_shape()?;
        Ok(self.value(x))
    }

    pub(crate) fn value(&self, x: f64) -> f64 {
        match *self {
            InitialProfile::Uniform { level } => level,
            InitialProfile::Gaussian {
                peak,
                center,
                spread,
            } => {
                let d = x - center;
                peak * (-(d * d) / spread).exp()
            }
            InitialProfile::PiecewiseLinear {
                slope,
                c_max,
                ramp_left,
                ramp_right,
            } => {
                if x <= ramp_left {
                    slope * x
                } else if x <= ramp_right {
                    c_max
                } else {
                    -slope * (x - ramp_right) + c_max
                }
            }
            InitialProfile::PiecewiseExponential {
                rate,
                ramp_left,
                ramp_right,
            } => {
                if x <= ramp_left {
                    (rate * x).exp()
                } else if x <= ramp_right {
                    (rate * ramp_left).exp()
                } else {
                    (rate * (ramp_left + ramp_right - x)).exp()
                }
            }
        }
    }
}

pub fn eval_initial(profile: &InitialProfile, x: f64, length: f64) -> Result<f64> {
    profile.eval(x, length)
}

/// A Neumann flux law `h(k)` at one border.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FluxLaw {
    Zero,
    Constant(f64),
    /// `coeff * k` at the border the law is attached to.
    ProportionalToLocal(f64),
    /// `coeff * k(0, t)` regardless of which border the law is attached to.
    ProportionalToLeft(f64),
}

impl FluxLaw {
    /// Evaluates the law for the boundary value it receives. The caller picks
    /// that value (see [`FluxLaw::ProportionalToLeft`]).
    pub fn eval(&self, k_boundary: f64) -> Result<f64> {
        check_finite("boundary capital", k_boundary)?;
        Ok(self.eval_raw(k_boundary))
    }

    #[inline]
    pub(crate) fn eval_raw(&self, k: f64) -> f64 {
        match *self {
            FluxLaw::Zero => 0.0,
            FluxLaw::Constant(v) => v,
            FluxLaw::ProportionalToLocal(d) | FluxLaw::ProportionalToLeft(d) => d * k,
        }
    }

    /// Parameter of the law (value or coefficient); `None` for [`FluxLaw::Zero`].
    pub fn parameter(&self) -> Option<f64> {
        match *self {
            FluxLaw::Zero => None,
            FluxLaw::Constant(v)
            | FluxLaw::ProportionalToLocal(v)
            | FluxLaw::ProportionalToLeft(v) => Some(v),
        }
    }

    pub fn with_parameter(&self, v: f64) -> Option<FluxLaw> {
        match self {
            FluxLaw::Zero => None,
            FluxLaw::Constant(_) => Some(FluxLaw::Constant(v)),
            FluxLaw::ProportionalToLocal(_) => Some(FluxLaw::ProportionalToLocal(v)),
            FluxLaw::ProportionalToLeft(_) => Some(FluxLaw::ProportionalToLeft(v)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.parameter().is_none_or(|v| v == 0.0)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            FluxLaw::Zero => "zero",
            FluxLaw::Constant(_) => "constant",
            FluxLaw::ProportionalToLocal(_) => "proportional-local",
            FluxLaw::ProportionalToLeft(_) => "proportional-left",
        }
    }
}

pub fn eval_flux(law: &FluxLaw, k_boundary: f64) -> Result<f64> {
    law.eval(k_boundary)
}

/// Flux laws at both borders together with their scale factors `d0`, `dL`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryFlux {
    pub left: FluxLaw,
    pub right: FluxLaw,
    pub d0: f64,
    pub d_l: f64,
}

impl BoundaryFlux {
    pub fn zero() -> Self {
        BoundaryFlux {
            left: FluxLaw::Zero,
            right: FluxLaw::Zero,
            d0: 1.0,
            d_l: 1.0,
        }
    }

    pub fn new(left: FluxLaw, right: FluxLaw, d0: f64, d_l: f64) -> Self {
        BoundaryFlux {
            left,
            right,
            d0,
            d_l,
        }
    }

    /// True when some border actually carries capital.
    pub fn has_flux(&self) -> bool {
        (!self.left.is_zero() && self.d0 != 0.0) || (!self.right.is_zero() && self.d_l != 0.0)
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("bc.d0", self.d0)?;
        check_finite("bc.d_l", self.d_l)?;
        for law in [self.left, self.right] {
            if let Some(v) = law.parameter() {
                check_finite("flux parameter", v)?;
            }
        }
        Ok(())
    }
}

impl Default for BoundaryFlux {
    fn default() -> Self {
        BoundaryFlux::zero()
    }
}

/// Economic parameters shared by the PDE and the lumped ODE.
///
/// `n` (labor growth) only enters the ODE; the spatial model uses `delta` alone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EconParams {
    pub s: f64,
    pub delta: f64,
    pub n: f64,
    pub production: ProductionParams,
    pub tech: TechProgress,
}

impl EconParams {
    pub fn new(
        s: f64,
        delta: f64,
        production: ProductionParams,
        tech: TechProgress,
    ) -> Result<Self> {
        let econ = EconParams {
            s,
            delta,
            n: 0.0,
            production,
            tech,
        };
        econ.validate()?;
        Ok(econ)
    }

    pub fn validate(&self) -> Result<()> {
        check_finite("s", self.s)?;
        check_finite("delta", self.delta)?;
        check_finite("n", self.n)?;
        if !(0.0..=1.0).contains(&self.s) {
            return Err(Error::Config(format!(
                "savings rate s must lie in [0, 1], got {}",
                self.s
            )));
        }
        if self.delta < 0.0 {
            return Err(Error::Config(format!(
                "delta must be nonnegative, got {}",
                self.delta
            )));
        }
        if self.n < 0.0 {
            return Err(Error::Config(format!(
                "labor growth n must be nonnegative, got {}",
                self.n
            )));
        }
        self.tech.validate()
    }

    /// Fraction of output consumed.
    pub fn consumption(&self) -> f64 {
        1.0 - self.s
    }
}

impl Default for EconParams {
    /// s = 1, delta = 0.05, A = 1, default production.
    fn default() -> Self {
        EconParams {
            s: 1.0,
            delta: 0.05,
            n: 0.0,
            production: ProductionParams::default(),
            tech: TechProgress::default(),
        }
    }
}
