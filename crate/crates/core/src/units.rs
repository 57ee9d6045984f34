//! Physical constants, the CSL parameter set and the handful of unit
//! conversions the rest of the crate needs.
//!
//! Canonical internal units: cm for length, amu for mass, Hz for rates,
//! eV for particle energies and s for time.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Atomic mass unit expressed as an energy, eV (CODATA 2018: 931.49410242 MeV).
pub const AMU_EV: f64 = 931.494_102_42e6;
/// Atomic mass unit, kg.
pub const AMU_KG: f64 = 1.660_539_066_60e-27;
/// Boltzmann constant, J/K.
pub const BOLTZMANN_J_PER_K: f64 = 1.380_649e-23;
/// Boltzmann constant, eV/K.
pub const BOLTZMANN_EV_PER_K: f64 = 8.617_333_262e-5;
/// Reduced Planck constant, eV·s.
pub const HBAR_EV_S: f64 = 6.582_119_569e-16;
/// Speed of light, m/s.
pub const SPEED_OF_LIGHT_M_S: f64 = 2.997_924_58e8;
/// One ångström in cm.
pub const ANGSTROM_CM: f64 = 1e-8;

/// Adler's collapse strength, cm³/s.
pub const GAMMA_ADLER: f64 = 1e-22;
/// Ghirardi–Pearle–Rimini collapse strength, cm³/s.
pub const GAMMA_GRW: f64 = 1e-30;
/// Standard CSL correlation length, cm.
pub const R_C_STANDARD: f64 = 1e-5;

/// Reduced collapse rate Λ = γ / (8 π^{3/2} r_C³), in Hz.
pub fn derive_lambda(gamma: f64, r_c: f64) -> Result<f64> {
    check_positive("gamma", gamma)?;
    check_positive("r_c", r_c)?;
    Ok(gamma / (8.0 * PI.powf(1.5) * r_c.powi(3)))
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(name, format!("must be positive and finite, got {value}")))
    }
}

/// CSL model constants. Λ is always recomputed from γ and r_C.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CslParams {
    gamma: f64,
    r_c: f64,
    m0: f64,
}

impl CslParams {
    /// `gamma` in cm³/s, `r_c` in cm, `m0` in amu.
    pub fn new(gamma: f64, r_c: f64, m0: f64) -> Result<Self> {
        check_positive("gamma", gamma)?;
        check_positive("r_c", r_c)?;
        check_positive("m0", m0)?;
        Ok(CslParams { gamma, r_c, m0 })
    }

    pub fn adler() -> Self {
        CslParams {
            gamma: GAMMA_ADLER,
            r_c: R_C_STANDARD,
            m0: 1.0,
        }
    }

    pub fn grw() -> Self {
        CslParams {
            gamma: GAMMA_GRW,
            ..Self::adler()
        }
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn r_c(&self) -> f64 {
        self.r_c
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    /// Λ in Hz.
    pub fn lambda(&self) -> f64 {
        self.gamma / (8.0 * PI.powf(1.5) * self.r_c.powi(3))
    }

    /// Rest energy of the reference mass, eV.
    pub fn m0_ev(&self) -> f64 {
        self.m0 * AMU_EV
    }

    pub fn with_gamma(self, gamma: f64) -> Result<Self> {
        Self::new(gamma, self.r_c, self.m0)
    }

    pub fn with_r_c(self, r_c: f64) -> Result<Self> {
        Self::new(self.gamma, r_c, self.m0)
    }

    pub fn with_m0(self, m0: f64) -> Result<Self> {
        Self::new(self.gamma, self.r_c, m0)
    }
}

impl Default for CslParams {
    fn default() -> Self {
        Self::adler()
    }
}

/// Unit tags understood by [`convert`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    Hz,
    Second,
    ElectronVolt,
    MeV,
    Amu,
    Centimeter,
    Angstrom,
    Meter,
    PerCubicMeter,
    CubicCmPerSecond,
    Dimensionless,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Dimension {
    Frequency,
    Time,
    // mass and energy share a dimension through E = m c²
    MassEnergy,
    Length,
    NumberDensity,
    CollapseStrength,
    None,
}

impl Unit {
    pub fn symbol(self) -> &'static str {
        match self {
            Unit::Hz => "Hz",
            Unit::Second => "s",
            Unit::ElectronVolt => "eV",
            Unit::MeV => "MeV",
            Unit::Amu => "amu",
            Unit::Centimeter => "cm",
            Unit::Angstrom => "Å",
            Unit::Meter => "m",
            Unit::PerCubicMeter => "m^-3",
            Unit::CubicCmPerSecond => "cm^3/s",
            Unit::Dimensionless => "1",
        }
    }

    fn dimension(self) -> Dimension {
        match self {
            Unit::Hz => Dimension::Frequency,
            Unit::Second => Dimension::Time,
            Unit::ElectronVolt | Unit::MeV | Unit::Amu => Dimension::MassEnergy,
            Unit::Centimeter | Unit::Angstrom | Unit::Meter => Dimension::Length,
            Unit::PerCubicMeter => Dimension::NumberDensity,
            Unit::CubicCmPerSecond => Dimension::CollapseStrength,
            Unit::Dimensionless => Dimension::None,
        }
    }

    /// Multiplier taking a magnitude in this unit to the canonical unit of its dimension.
    fn to_canonical(self) -> f64 {
        match self {
            Unit::ElectronVolt => 1.0,
            Unit::MeV => 1e6,
            Unit::Amu => AMU_EV,
            Unit::Centimeter => 1.0,
            Unit::Angstrom => ANGSTROM_CM,
            Unit::Meter => 100.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitValue {
    pub magnitude: f64,
    pub unit: Unit,
}

impl UnitValue {
    pub fn new(magnitude: f64, unit: Unit) -> Self {
        UnitValue { magnitude, unit }
    }
}

/// Rescale `x` into `target`. Mass and energy are interconvertible via the amu rest energy.
pub fn convert(x: UnitValue, target: Unit) -> Result<UnitValue> {
    if x.unit == target {
        return Ok(x);
    }
    if x.unit.dimension() != target.dimension() {
        return Err(Error::Conversion {
            from: x.unit.symbol(),
            to: target.symbol(),
        });
    }
    let magnitude = x.magnitude * x.unit.to_canonical() / target.to_canonical();
    Ok(UnitValue::new(magnitude, target))
}

/// Convenience: a mass or energy in MeV expressed in amu.
pub fn mev_to_amu(mev: f64) -> f64 {
    mev * 1e6 / AMU_EV
}
