//! Pure-state trajectories of the nonlinear collapse equation
//!
//!   d|ψ⟩ = [−i(ω_x/2)σ_x dt + √λ(σ_z − ⟨σ_z⟩) dW − (λ/2)(σ_z − ⟨σ_z⟩)² dt] |ψ⟩
//!
//! integrated by Euler–Maruyama with renormalization after every step.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

use super::{StateVector, TwoLevelParams, INPUT_NORM_TOL};

impl StateVector {
    /// Wraps amplitudes without checking the norm; [`sde_step`] rejects
    /// anything further than 1e-6 from unit norm.
    pub fn from_raw(c_plus: Complex64, c_minus: Complex64) -> Self {
        StateVector { c_plus, c_minus }
    }
}

/// One Euler–Maruyama increment, before renormalization.
pub fn euler_maruyama_increment(
    params: &TwoLevelParams,
    psi: &StateVector,
    dw: f64,
    dt: f64,
) -> (Complex64, Complex64) {
    Stepper::new(params, dt).raw(psi, dw)
}

/// One Euler–Maruyama step followed by renormalization.
pub fn sde_step(params: &TwoLevelParams, psi: &StateVector, dw: f64, dt: f64) -> Result<StateVector> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid("dt", format!("must be positive, got {dt}")));
    }
    if !dw.is_finite() {
        return Err(Error::invalid("dW", "must be finite"));
    }
    let norm = psi.norm_sqr();
    if (norm - 1.0).abs() > INPUT_NORM_TOL {
        return Err(Error::State(format!("input state has norm² {norm}")));
    }
    Ok(Stepper::new(params, dt).step(psi, dw))
}

/// Precomputed coefficients for a fixed (params, dt).
#[derive(Clone, Copy)]
pub(crate) struct Stepper {
    half_omega_dt: f64,
    sqrt_lambda: f64,
    half_lambda_dt: f64,
    sqrt_dt: f64,
}

impl Stepper {
    pub(crate) fn new(params: &TwoLevelParams, dt: f64) -> Self {
        Stepper {
            half_omega_dt: 0.5 * params.omega_x() * dt,
            sqrt_lambda: params.lambda().sqrt(),
            half_lambda_dt: 0.5 * params.lambda() * dt,
            sqrt_dt: dt.sqrt(),
        }
    }

    #[inline]
    fn raw(&self, psi: &StateVector, dw: f64) -> (Complex64, Complex64) {
        let (cp, cm) = (psi.c_plus, psi.c_minus);
        let m = cp.norm_sqr() - cm.norm_sqr();
        // eigenvalues of σ_z − ⟨σ_z⟩ on |+⟩ and |−⟩
        let ap = 1.0 - m;
        let am = -1.0 - m;
        let rot = Complex64::new(0.0, -self.half_omega_dt);
        let gp = self.sqrt_lambda * ap * dw - self.half_lambda_dt * ap * ap;
        let gm = self.sqrt_lambda * am * dw - self.half_lambda_dt * am * am;
        (cp + rot * cm + cp * gp, cm + rot * cp + cm * gm)
    }

    #[inline]
    pub(crate) fn step(&self, psi: &StateVector, dw: f64) -> StateVector {
        let (cp, cm) = self.raw(psi, dw);
        let norm = (cp.norm_sqr() + cm.norm_sqr()).sqrt();
        StateVector {
            c_plus: cp / norm,
            c_minus: cm / norm,
        }
    }

    /// Step with a standard-normal draw scaled to variance dt.
    #[inline]
    pub(crate) fn step_with_rng(&self, psi: &StateVector, rng: &mut ChaCha8Rng) -> StateVector {
        let z: f64 = StandardNormal.sample(rng);
        self.step(psi, self.sqrt_dt * z)
    }
}

/// RNG stream `index` of `seed`. Trajectory i of an ensemble always sees the same noise.
pub(crate) fn trajectory_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Validates horizon and step, returning the number of steps.
pub(crate) fn step_count(params: &TwoLevelParams, total_time: f64, dt: f64) -> Result<usize> {
    if !(total_time > 0.0 && total_time.is_finite()) {
        return Err(Error::invalid("T", format!("must be positive, got {total_time}")));
    }
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::invalid("dt", format!("must be positive, got {dt}")));
    }
    if let Some(limit) = params.max_step() {
        if dt > limit * (1.0 + 1e-12) {
            return Err(Error::StepSize { dt, limit });
        }
    }
    Ok((total_time / dt - 1e-9).ceil().max(1.0) as usize)
}

/// A sampled path of ⟨σ_z⟩. `times[k] = k·dt`; the last sample is at or just past T.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub sigma_z_expectations: Vec<f64>,
    pub seed: u64,
    pub step: f64,
}

impl Trajectory {
    pub fn final_sigma_z(&self) -> f64 {
        *self.sigma_z_expectations.last().expect("trajectory has at least one sample")
    }

    /// CSV with columns `t,sigma_z`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,sigma_z\n");
        for (t, z) in self.times.iter().zip(&self.sigma_z_expectations) {
            out.push_str(&format!("{t:e},{z:e}\n"));
        }
        out
    }
}

/// Integrates one trajectory from `psi0` over `[0, T]`.
///
/// Refuses steps larger than 0.01/max(ω_x, λ). Output depends only on
/// (params, psi0, T, dt, seed); it equals trajectory 0 of an ensemble with
/// the same base seed.
pub fn simulate_trajectory(
    params: &TwoLevelParams,
    psi0: &StateVector,
    total_time: f64,
    dt: f64,
    seed: u64,
) -> Result<Trajectory> {
    let n_steps = step_count(params, total_time, dt)?;
    let stepper = Stepper::new(params, dt);
    let mut rng = trajectory_rng(seed, 0);
    let mut psi = *psi0;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut sz = Vec::with_capacity(n_steps + 1);
    times.push(0.0);
    sz.push(psi.sigma_z());
    for k in 1..=n_steps {
        psi = stepper.step_with_rng(&psi, &mut rng);
        times.push(k as f64 * dt);
        sz.push(psi.sigma_z());
    }
    Ok(Trajectory {
        times,
        sigma_z_expectations: sz,
        seed,
        step: dt,
    })
}
