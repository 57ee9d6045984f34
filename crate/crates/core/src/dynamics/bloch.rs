//! Closed-form Bloch-vector solution of the averaged dynamics
//!
//!   dρ/dt = −i(ω_x/2)[σ_x, ρ] − (λ/2)[σ_z, [σ_z, ρ]]
//!
//! which in Bloch form reads
//!
//!   ṙ_x = −2λ r_x,   ṙ_y = −ω_x r_z − 2λ r_y,   ṙ_z = ω_x r_y.
//!
//! r_x decouples. Both r_y and r_z obey the damped oscillator
//! ü + 2λ u̇ + ω_x² u = 0, so each is evaluated from its own initial value
//! and slope. Nothing here divides by ω_x.

use crate::error::{Error, Result};

use super::{BlochVector, TwoLevelParams};

/// Relative width of the band around ω_x² = λ² treated as critical damping.
const CRITICAL_BAND: f64 = 1e-12;

/// Time derivative of the Bloch vector.
pub fn bloch_ode_rhs(params: &TwoLevelParams, r: &BlochVector) -> BlochVector {
    let (w, lam) = (params.omega_x(), params.lambda());
    BlochVector {
        x: -2.0 * lam * r.x,
        y: -w * r.z - 2.0 * lam * r.y,
        z: w * r.y,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Regime {
    Under { omega: f64 },
    Critical,
    Over { omega: f64 },
}

fn regime(w: f64, lam: f64) -> Regime {
    let diff = w * w - lam * lam;
    if diff.abs() <= CRITICAL_BAND * w * w {
        Regime::Critical
    } else if diff > 0.0 {
        Regime::Under { omega: diff.sqrt() }
    } else {
        Regime::Over { omega: (-diff).sqrt() }
    }
}

/// u(t) for ü + 2λu̇ + ω²u = 0 with u(0) = u0, u̇(0) = v0.
fn damped_oscillator(w: f64, lam: f64, u0: f64, v0: f64, t: f64) -> f64 {
    let b = v0 + lam * u0;
    match regime(w, lam) {
        Regime::Critical => (-lam * t).exp() * (u0 + b * t),
        Regime::Under { omega } => {
            (-lam * t).exp() * (u0 * (omega * t).cos() + b * (omega * t).sin() / omega)
        }
        Regime::Over { omega } => {
            // e^{-λt} cosh(Ωt) and e^{-λt} sinh(Ωt)/Ω without overflow;
            // λ − Ω is formed as ω²/(λ + Ω) to avoid cancellation.
            let slow = w * w / (lam + omega);
            let fast = lam + omega;
            let slow_decay = (-slow * t).exp();
            let cosh_part = 0.5 * (slow_decay + (-fast * t).exp());
            let sinh_part = slow_decay * (-(-2.0 * omega * t).exp_m1()) / (2.0 * omega);
            u0 * cosh_part + b * sinh_part
        }
    }
}

/// Exact Bloch vector at time `t` starting from `r0`.
pub fn lindblad_solution(params: &TwoLevelParams, r0: &BlochVector, t: f64) -> Result<BlochVector> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("time must be finite and >= 0, got {t}")));
    }
    let (w, lam) = (params.omega_x(), params.lambda());
    let dz0 = w * r0.y;
    let dy0 = -w * r0.z - 2.0 * lam * r0.y;
    Ok(BlochVector {
        x: r0.x * (-2.0 * lam * t).exp(),
        y: damped_oscillator(w, lam, r0.y, dy0, t),
        z: damped_oscillator(w, lam, r0.z, dz0, t),
    })
}

/// Decay envelope of ⟨σ_z(t)⟩ for r0 = (0, 0, 1).
///
/// e^{−λt} while λ ≤ ω_x; above that the slower of the two real exponents,
/// e^{−(λ − Ω)t} with Ω = √(λ² − ω_x²), which tends to e^{−(ω_x²/2λ)t}.
pub fn visibility_envelope(params: &TwoLevelParams, t: f64) -> f64 {
    let (w, lam) = (params.omega_x(), params.lambda());
    if lam == 0.0 {
        return 1.0;
    }
    match regime(w, lam) {
        Regime::Under { .. } | Regime::Critical => (-lam * t).exp(),
        Regime::Over { omega } => (-(w * w / (lam + omega)) * t).exp(),
    }
}
