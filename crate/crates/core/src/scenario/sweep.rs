use std::fmt;
use std::str::FromStr;

use super::ScenarioConfig;
use crate::econ::{InitialProfile, TechProgress};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParameter {
    Delta,
    S,
    /// Rate of exponential technological progress.
    TechRate,
    /// Magnitude of both border flux laws; each side keeps its sign.
    FluxMagnitude,
    /// Spread `d` of a Gaussian initial profile.
    DSpread,
}

impl SweepParameter {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepParameter::Delta => "delta",
            SweepParameter::S => "s",
            SweepParameter::TechRate => "tech_rate",
            SweepParameter::FluxMagnitude => "flux_magnitude",
            SweepParameter::DSpread => "d_spread",
        }
    }
}

impl fmt::Display for SweepParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SweepParameter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "delta" => Ok(SweepParameter::Delta),
            "s" => Ok(SweepParameter::S),
            "tech_rate" => Ok(SweepParameter::TechRate),
            "flux_magnitude" => Ok(SweepParameter::FluxMagnitude),
            "d_spread" => Ok(SweepParameter::DSpread),
            _ => Err(Error::Config(format!(
                "unknown sweep parameter {s:?} (expected delta, s, tech_rate, flux_magnitude, d_spread)"
            ))),
        }
    }
}

fn apply(base: &ScenarioConfig, parameter: SweepParameter, value: f64) -> Result<ScenarioConfig> {
    let mut c = base.clone();
    c.name = format!("{}-{}-{}", base.name, parameter, value);
    match parameter {
        SweepParameter::Delta => c.econ.delta = value,
        SweepParameter::S => c.econ.s = value,
        SweepParameter::TechRate => match c.econ.tech {
            TechProgress::ExponentialInTime(_) => {
                c.econ.tech = TechProgress::ExponentialInTime(value)
            }
            other => {
                return Err(Error::Config(format!(
                    "tech_rate sweep needs exponential technology, base has {other:?}"
                )))
            }
        },
        SweepParameter::FluxMagnitude => {
            if c.bc.left.parameter().is_none() && c.bc.right.parameter().is_none() {
                return Err(Error::Config(
                    "flux_magnitude sweep needs a nonzero flux law".into(),
                ));
            }
            let magnitude = value.abs();
            for law in [&mut c.bc.left, &mut c.bc.right] {
                if let Some(old) = law.parameter() {
                    *law = law
                        .with_parameter(magnitude.copysign(old))
                        .expect("law has a parameter");
                }
            }
        }
        SweepParameter::DSpread => match &mut c.initial {
            InitialProfile::Gaussian { spread, .. } => *spread = value,
            other => {
                return Err(Error::Config(format!(
                    "d_spread sweep needs a gaussian initial profile, base has {}",
                    other.kind()
                )))
            }
        },
    }
    c.validate()?;
    Ok(c)
}

/// One validated config per value, named `<base>-<parameter>-<value>`.
/// The base is left untouched.
pub fn sweep(
    base: &ScenarioConfig,
    parameter: SweepParameter,
    values: &[f64],
) -> Result<Vec<ScenarioConfig>> {
    values.iter().map(|&v| apply(base, parameter, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::econ::FluxLaw;
    use crate::scenario::{preset, PresetId};

    #[test]
    fn delta_sweep_gives_fig1_pair() {
        let base = preset(PresetId::Fig1a);
        let out = sweep(&base, SweepParameter::Delta, &[0.05, 0.5]).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].econ, preset(PresetId::Fig1a).econ);
        assert_eq!(out[1].econ, preset(PresetId::Fig1b).econ);
        assert_eq!(out[1].name, "fig1a-delta-0.5");
        assert_eq!(base, preset(PresetId::Fig1a));
    }

    #[test]
    fn empty_sweep() {
        assert!(sweep(&preset(PresetId::Fig1a), SweepParameter::Delta, &[])
            .unwrap()
            .is_empty());
    }

    #[test]
    fn invalid_value_rejected() {
        let r = sweep(&preset(PresetId::Fig1a), SweepParameter::S, &[0.5, 1.5]);
        assert!(matches!(r, Err(Error::Config(_))));
    }

    #[test]
    fn flux_magnitude_keeps_signs() {
        let out = sweep(
            &preset(PresetId::Fig3a),
            SweepParameter::FluxMagnitude,
            &[2.0],
        )
        .unwrap();
        assert_eq!(out[0].bc.left, FluxLaw::Constant(2.0));
        assert_eq!(out[0].bc.right, FluxLaw::Constant(-2.0));
        assert!(sweep(
            &preset(PresetId::Fig1a),
            SweepParameter::FluxMagnitude,
            &[2.0]
        )
        .is_err());
    }

    #[test]
    fn kind_specific_parameters() {
        let r = sweep(&preset(PresetId::Fig2a), SweepParameter::TechRate, &[0.02]).unwrap();
        assert_eq!(r[0].econ.tech, TechProgress::ExponentialInTime(0.02));
        assert!(sweep(&preset(PresetId::Fig1a), SweepParameter::TechRate, &[0.02]).is_err());
        let r = sweep(&preset(PresetId::Fig3b), SweepParameter::DSpread, &[500.0]).unwrap();
        assert!(matches!(r[0].initial, InitialProfile::Gaussian { spread, .. } if spread == 500.0));
        assert!(sweep(&preset(PresetId::Fig4a), SweepParameter::DSpread, &[500.0]).is_err());
        assert!("gamma".parse::<SweepParameter>().is_err());
    }
}
