//! Environmental decoherence estimates, for comparison with the collapse rates.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::units::{AMU_KG, BOLTZMANN_J_PER_K};

/// Bath of scatterers for the collisional estimate λ_DEC ∼ n v σ_DEC.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CollisionalEnvironment {
    /// m⁻³
    pub number_density: f64,
    /// m/s
    pub relative_velocity: f64,
    /// m²
    pub cross_section: f64,
}

impl CollisionalEnvironment {
    pub fn new(number_density: f64, relative_velocity: f64, cross_section: f64) -> Result<Self> {
        for (name, v) in [
            ("number_density", number_density),
            ("relative_velocity", relative_velocity),
            ("cross_section", cross_section),
        ] {
            if !(v >= 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("must be >= 0, got {v}")));
            }
        }
        Ok(CollisionalEnvironment {
            number_density,
            relative_velocity,
            cross_section,
        })
    }
}

pub fn collisional_rate(env: &CollisionalEnvironment) -> f64 {
    env.number_density * env.relative_velocity * env.cross_section
}

/// Mean Maxwell–Boltzmann speed √(8kT/πm) of a gas particle of `mass_amu`, m/s.
pub fn thermal_speed(temperature_k: f64, mass_amu: f64) -> Result<f64> {
    if !(temperature_k >= 0.0 && temperature_k.is_finite()) {
        return Err(Error::invalid("temperature", format!("must be >= 0, got {temperature_k}")));
    }
    if !(mass_amu > 0.0 && mass_amu.is_finite()) {
        return Err(Error::invalid("gas_mass", format!("must be positive, got {mass_amu}")));
    }
    let m = mass_amu * AMU_KG;
    Ok((8.0 * BOLTZMANN_J_PER_K * temperature_k / (std::f64::consts::PI * m)).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Medium {
    OuterSpace,
    Atmosphere,
}

impl FromStr for Medium {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "outer_space" | "outer-space" | "space" => Ok(Medium::OuterSpace),
            "atmosphere" | "atm" => Ok(Medium::Atmosphere),
            other => Err(Error::invalid("medium", format!("unknown medium `{other}`"))),
        }
    }
}

impl fmt::Display for Medium {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Medium::OuterSpace => "outer_space",
            Medium::Atmosphere => "atmosphere",
        })
    }
}

/// Neutrino decoherence coefficients λ_medium = c_medium · E/(1 eV).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NeutrinoMedia {
    /// Hz at 1 eV in outer space
    pub outer_space: f64,
    /// Hz at 1 eV in the atmosphere
    pub atmosphere: f64,
    /// Time spent crossing the atmosphere, s
    pub atmosphere_time: f64,
}

impl Default for NeutrinoMedia {
    fn default() -> Self {
        NeutrinoMedia {
            outer_space: 1e-43,
            atmosphere: 1e-20,
            atmosphere_time: 1e-4,
        }
    }
}

impl NeutrinoMedia {
    pub fn rate(&self, energy_ev: f64, medium: Medium) -> Result<f64> {
        if !(energy_ev > 0.0 && energy_ev.is_finite()) {
            return Err(Error::Domain(format!("neutrino energy must be positive, got {energy_ev}")));
        }
        let coeff = match medium {
            Medium::OuterSpace => self.outer_space,
            Medium::Atmosphere => self.atmosphere,
        };
        Ok(coeff * energy_ev)
    }

    /// λ_out (t − t_atm) + λ_atm t_atm.
    pub fn cumulative_damping(&self, energy_ev: f64, total_time: f64, atmosphere_time: f64) -> Result<f64> {
        if !(total_time >= 0.0 && atmosphere_time >= 0.0) {
            return Err(Error::Domain("flight times must be non-negative".into()));
        }
        if atmosphere_time > total_time {
            return Err(Error::Domain(format!(
                "atmosphere time {atmosphere_time} s exceeds total flight time {total_time} s"
            )));
        }
        if energy_ev == 0.0 {
            return Ok(0.0);
        }
        Ok(self.rate(energy_ev, Medium::OuterSpace)? * (total_time - atmosphere_time)
            + self.rate(energy_ev, Medium::Atmosphere)? * atmosphere_time)
    }
}

/// Decoherence rate with the default medium coefficients.
pub fn neutrino_decoherence_rate(energy_ev: f64, medium: Medium) -> Result<f64> {
    NeutrinoMedia::default().rate(energy_ev, medium)
}

/// Cumulative damping with the default medium coefficients.
pub fn neutrino_cumulative_damping(energy_ev: f64, total_time: f64, atmosphere_time: f64) -> Result<f64> {
    NeutrinoMedia::default().cumulative_damping(energy_ev, total_time, atmosphere_time)
}

/// Measured spontaneous-factorization parameter ζ of an entangled meson pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ZetaMeasurement {
    pub zeta_mean: f64,
    pub sigma_stat: f64,
    pub sigma_syst: f64,
    pub confidence_level: f64,
    /// Time over which ζ ≈ λ_DEC t is assumed, s.
    pub timescale: f64,
}

/// K_S lifetime, s.
pub const KS_LIFETIME: f64 = 0.8954e-10;

impl Default for ZetaMeasurement {
    fn default() -> Self {
        ZetaMeasurement {
            zeta_mean: 0.003,
            sigma_stat: 0.018,
            sigma_syst: 0.006,
            confidence_level: 0.90,
            timescale: KS_LIFETIME,
        }
    }
}

impl ZetaMeasurement {
    /// One-sided Gaussian upper limit with the two errors added in quadrature.
    pub fn upper_limit(&self) -> Result<f64> {
        if !(self.sigma_stat >= 0.0 && self.sigma_syst >= 0.0) {
            return Err(Error::invalid("sigma", "uncertainties must be >= 0"));
        }
        if !(self.confidence_level > 0.0 && self.confidence_level < 1.0) {
            return Err(Error::invalid(
                "confidence_level",
                format!("must lie in (0, 1), got {}", self.confidence_level),
            ));
        }
        let z = Normal::standard().inverse_cdf(self.confidence_level);
        Ok(self.zeta_mean + z * self.sigma_stat.hypot(self.sigma_syst))
    }
}

/// ζ_up / timescale, Hz.
pub fn meson_decoherence_bound(zm: &ZetaMeasurement) -> Result<f64> {
    if !(zm.timescale > 0.0 && zm.timescale.is_finite()) {
        return Err(Error::Domain(format!("timescale must be positive, got {}", zm.timescale)));
    }
    Ok(zm.upper_limit()? / zm.timescale)
}
