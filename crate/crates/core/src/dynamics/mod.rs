//! Two-level collapse dynamics.
//!
//! The state lives on the σ_z eigenbasis {|+⟩, |−⟩} with Hamiltonian
//! H = (ω_x/2) σ_x. Collapse (or any σ_z dephasing) at rate λ acts either on
//! single pure-state trajectories ([`sse`]) or on the averaged density matrix
//! through its Bloch vector ([`bloch`]). The second is the stochastic average
//! of the first; [`ensemble`] makes that comparison measurable.

pub mod bloch;
pub mod ensemble;
pub mod sse;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use bloch::{bloch_ode_rhs, lindblad_solution, visibility_envelope};
pub use ensemble::{ensemble_average, EnsembleOptions, EnsembleResult};
pub use sse::{euler_maruyama_increment, sde_step, simulate_trajectory, Trajectory};

/// Oscillation frequency ω_x and collapse rate λ, both in Hz.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelParams {
    omega_x: f64,
    lambda: f64,
}

impl TwoLevelParams {
    pub fn new(omega_x: f64, lambda: f64) -> Result<Self> {
        if !(omega_x.is_finite() && omega_x >= 0.0) {
            return Err(Error::invalid("omega_x", format!("must be >= 0, got {omega_x}")));
        }
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(Error::invalid("lambda", format!("must be >= 0, got {lambda}")));
        }
        Ok(TwoLevelParams { omega_x, lambda })
    }

    pub fn omega_x(&self) -> f64 {
        self.omega_x
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Largest admissible Euler–Maruyama step, or `None` when both rates vanish.
    pub fn max_step(&self) -> Option<f64> {
        let fastest = self.omega_x.max(self.lambda);
        (fastest > 0.0).then(|| 0.01 / fastest)
    }
}

const NORM_TOL: f64 = 1e-9;
pub(crate) const INPUT_NORM_TOL: f64 = 1e-6;

/// Pure state c₊|+⟩ + c₋|−⟩.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateVector {
    pub(crate) c_plus: Complex64,
    pub(crate) c_minus: Complex64,
}

impl StateVector {
    /// Rejects amplitudes whose norm differs from one by more than 1e-9.
    pub fn new(c_plus: Complex64, c_minus: Complex64) -> Result<Self> {
        let norm = c_plus.norm_sqr() + c_minus.norm_sqr();
        if norm.is_nan() || (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::State(format!("state norm {norm} is not 1")));
        }
        Ok(StateVector { c_plus, c_minus })
    }

    /// Normalizes arbitrary non-zero amplitudes.
    pub fn normalized(c_plus: Complex64, c_minus: Complex64) -> Result<Self> {
        let norm = (c_plus.norm_sqr() + c_minus.norm_sqr()).sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::State("cannot normalize a zero or non-finite state".into()));
        }
        Ok(StateVector {
            c_plus: c_plus / norm,
            c_minus: c_minus / norm,
        })
    }

    pub fn plus() -> Self {
        StateVector {
            c_plus: Complex64::new(1.0, 0.0),
            c_minus: Complex64::new(0.0, 0.0),
        }
    }

    pub fn minus() -> Self {
        StateVector {
            c_plus: Complex64::new(0.0, 0.0),
            c_minus: Complex64::new(1.0, 0.0),
        }
    }

    /// Real superposition with Born weight `p_plus` on |+⟩.
    pub fn with_plus_population(p_plus: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_plus) {
            return Err(Error::invalid("p_plus", format!("must lie in [0, 1], got {p_plus}")));
        }
        Ok(StateVector {
            c_plus: Complex64::new(p_plus.sqrt(), 0.0),
            c_minus: Complex64::new((1.0 - p_plus).sqrt(), 0.0),
        })
    }

    pub fn c_plus(&self) -> Complex64 {
        self.c_plus
    }

    pub fn c_minus(&self) -> Complex64 {
        self.c_minus
    }

    pub fn norm_sqr(&self) -> f64 {
        self.c_plus.norm_sqr() + self.c_minus.norm_sqr()
    }

    /// ⟨σ_z⟩ = |c₊|² − |c₋|²
    pub fn sigma_z(&self) -> f64 {
        self.c_plus.norm_sqr() - self.c_minus.norm_sqr()
    }

    /// Bloch vector of |ψ⟩⟨ψ|.
    pub fn to_bloch(&self) -> BlochVector {
        let coherence = self.c_plus * self.c_minus.conj();
        BlochVector {
            x: 2.0 * coherence.re,
            y: -2.0 * coherence.im,
            z: self.sigma_z(),
        }
    }
}

/// ρ = (I + r·σ)/2.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    /// Rejects vectors outside the Bloch ball (|r| > 1 + 1e-9).
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let r = BlochVector { x, y, z };
        if r.norm().is_nan() || r.norm() > 1.0 + NORM_TOL {
            return Err(Error::State(format!(
                "Bloch vector ({x}, {y}, {z}) lies outside the unit ball"
            )));
        }
        Ok(r)
    }

    pub const fn zero() -> Self {
        BlochVector { x: 0.0, y: 0.0, z: 0.0 }
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }
}
