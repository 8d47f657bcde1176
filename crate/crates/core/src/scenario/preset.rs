use std::fmt;
use std::str::FromStr;

use super::{default_stride, ScenarioConfig};
use crate::econ::{
    BoundaryFlux, EconParams, FluxLaw, InitialProfile, ProductionParams, TechProgress,
};
use crate::error::Error;
use crate::solver::{Grid1D, SolverOptions, TimeGrid};

/// Border slope of the Gaussian profile `100 exp(-(x-50)^2/1000)` at `x = 0`:
/// `10 exp(-2.5)`.
pub fn flux_intensity() -> f64 {
    10.0 * (-2.5f64).exp()
}

const LENGTH: f64 = 100.0;
const DX: f64 = 1.0;
const DT: f64 = 0.4;

/// The ten reference scenarios. The `a` member of each pair is the left
/// panel of the corresponding figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PresetId {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig4a,
    Fig4b,
    Fig5a,
    Fig5b,
}

impl PresetId {
    pub const ALL: [PresetId; 10] = [
        PresetId::Fig1a,
        PresetId::Fig1b,
        PresetId::Fig2a,
        PresetId::Fig2b,
        PresetId::Fig3a,
        PresetId::Fig3b,
        PresetId::Fig4a,
        PresetId::Fig4b,
        PresetId::Fig5a,
        PresetId::Fig5b,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            PresetId::Fig1a => "fig1a",
            PresetId::Fig1b => "fig1b",
            PresetId::Fig2a => "fig2a",
            PresetId::Fig2b => "fig2b",
            PresetId::Fig3a => "fig3a",
            PresetId::Fig3b => "fig3b",
            PresetId::Fig4a => "fig4a",
            PresetId::Fig4b => "fig4b",
            PresetId::Fig5a => "fig5a",
            PresetId::Fig5b => "fig5b",
        }
    }

    pub fn description(&self) -> &'static str {
        match self {
            PresetId::Fig1a => "uniform k0=100, no border flux, A=1, delta=0.05, T=500",
            PresetId::Fig1b => "uniform k0=100, no border flux, A=1, delta=0.5, T=50",
            PresetId::Fig2a => "uniform k0=100, no border flux, A=exp(0.01t), delta=0.05, T=500",
            PresetId::Fig2b => "uniform k0=100, no border flux, A=exp(0.01t), delta=0.5, T=500",
            PresetId::Fig3a => {
                "gaussian k0 (peak 100, d=1000), constant outflow 10e^-2.5, delta=0.05, T=200"
            }
            PresetId::Fig3b => {
                "gaussian k0 (peak 100, d=1000), constant outflow 10e^-2.5, delta=0.0005, T=200"
            }
            PresetId::Fig4a => {
                "piecewise-linear k0 (m=100, Cmax=1000), constant outflow m, delta=0.05, T=200"
            }
            PresetId::Fig4b => {
                "piecewise-linear k0 (m=100, Cmax=1000), constant outflow m, delta=0.005, T=200"
            }
            PresetId::Fig5a => {
                "piecewise-exponential k0 (D=1), outflow D*k at each border, delta=0.05, T=200"
            }
            PresetId::Fig5b => {
                "piecewise-exponential k0 (D=1), outflow D*k at each border, delta=0.005, T=200"
            }
        }
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        PresetId::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown preset {s:?} (expected fig1a..fig5b)")))
    }
}

/// Derivative conditions `dk/dx(0) = h`, `dk/dx(L) = -h` (capital leaves
/// through both borders).
fn outflow(left: FluxLaw, right: FluxLaw) -> BoundaryFlux {
    BoundaryFlux::new(left, right, -1.0, 1.0)
}

pub fn preset(id: PresetId) -> ScenarioConfig {
    use PresetId::*;

    let delta = match id {
        Fig1a | Fig2a | Fig3a | Fig4a | Fig5a => 0.05,
        Fig1b | Fig2b => 0.5,
        Fig3b => 0.0005,
        Fig4b | Fig5b => 0.005,
    };
    let t_end = match id {
        Fig1a | Fig2a | Fig2b => 500.0,
        Fig1b => 50.0,
        _ => 200.0,
    };
    let tech = match id {
        Fig2a | Fig2b => TechProgress::ExponentialInTime(0.01),
        _ => TechProgress::Constant(1.0),
    };
    let (initial, bc) = match id {
        Fig1a | Fig1b | Fig2a | Fig2b => (
            InitialProfile::Uniform { level: 100.0 },
            BoundaryFlux::zero(),
        ),
        Fig3a | Fig3b => {
            let d0 = flux_intensity();
            (
                InitialProfile::Gaussian {
                    peak: 100.0,
                    center: 50.0,
                    spread: 1000.0,
                },
                outflow(FluxLaw::Constant(d0), FluxLaw::Constant(-d0)),
            )
        }
        Fig4a | Fig4b => (
            InitialProfile::PiecewiseLinear {
                slope: 100.0,
                c_max: 1000.0,
                ramp_left: 10.0,
                ramp_right: 90.0,
            },
            outflow(FluxLaw::Constant(100.0), FluxLaw::Constant(-100.0)),
        ),
        Fig5a | Fig5b => (
            InitialProfile::PiecewiseExponential {
                rate: 1.0,
                ramp_left: 10.0,
                ramp_right: 90.0,
            },
            outflow(
                FluxLaw::ProportionalToLocal(1.0),
                FluxLaw::ProportionalToLocal(-1.0),
            ),
        ),
    };

    let time = TimeGrid::new(DT, t_end).expect("preset time grid");
    ScenarioConfig {
        name: id.as_str().to_string(),
        econ: EconParams {
            s: 1.0,
            delta,
            n: 0.0,
            production: ProductionParams::default(),
            tech,
        },
        grid: Grid1D::with_spacing(LENGTH, DX).expect("preset grid"),
        time,
        initial,
        bc,
        opts: SolverOptions::default(),
        snapshot_stride: default_stride(&time),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::cfl_check;

    #[test]
    fn all_presets_validate() {
        for id in PresetId::ALL {
            let c = preset(id);
            c.validate().unwrap_or_else(|e| panic!("{id}: {e}"));
            assert!(cfl_check(&c.grid, &c.time).unwrap() <= 0.5);
            assert_eq!(c.name, id.as_str());
            assert_eq!(id.as_str().parse::<PresetId>().unwrap(), id);
        }
        assert!("fig6a".parse::<PresetId>().is_err());
    }

    #[test]
    fn fig1b_contents() {
        let c = preset(PresetId::Fig1b);
        assert_eq!(c.econ.delta, 0.5);
        assert_eq!(c.initial, InitialProfile::Uniform { level: 100.0 });
        assert_eq!(c.bc, BoundaryFlux::zero());
        assert_eq!(c.econ.tech, TechProgress::Constant(1.0));
        assert_eq!(c.time.n_steps(), 125);
        assert_eq!(c.snapshot_stride, 1);
    }

    #[test]
    fn fig3b_contents() {
        let c = preset(PresetId::Fig3b);
        assert_eq!(c.econ.delta, 0.0005);
        let d0 = 10.0 * (-2.5f64).exp();
        assert_eq!(c.bc.left, FluxLaw::Constant(d0));
        assert_eq!(c.bc.right, FluxLaw::Constant(-d0));
        assert!((d0 - 0.820850).abs() < 1e-6);
        assert_eq!(
            c.initial,
            InitialProfile::Gaussian {
                peak: 100.0,
                center: 50.0,
                spread: 1000.0
            }
        );
    }

    #[test]
    fn fig5a_contents() {
        let c = preset(PresetId::Fig5a);
        assert_eq!(c.econ.delta, 0.05);
        assert_eq!(c.bc.left, FluxLaw::ProportionalToLocal(1.0));
        assert_eq!(c.bc.right, FluxLaw::ProportionalToLocal(-1.0));
        assert!(
            matches!(c.initial, InitialProfile::PiecewiseExponential { rate, .. } if rate == 1.0)
        );
    }

    #[test]
    fn initial_profiles_match_border_slopes() {
        // each profile satisfies its own derivative condition at x = 0
        for id in [PresetId::Fig3a, PresetId::Fig4a, PresetId::Fig5a] {
            let c = preset(id);
            let h = 1e-6;
            let k0 = c.initial.eval(0.0, 100.0).unwrap();
            let slope = (c.initial.eval(h, 100.0).unwrap() - k0) / h;
            let want = c.bc.left.eval(k0).unwrap();
            assert!(
                (slope - want).abs() < 1e-3 * want.abs().max(1.0),
                "{id}: {slope} vs {want}"
            );
        }
    }
}
