//! Monte Carlo ensembles of trajectories.
//!
//! Trajectory i draws its noise from stream i of the base seed, so results do
//! not depend on how rayon schedules the work. Per-trajectory samples are
//! merged in index order.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::bloch::visibility_envelope;
use super::sse::{step_count, trajectory_rng, Stepper};
use super::{StateVector, TwoLevelParams};

/// A trajectory counts as collapsed when |⟨σ_z⟩| exceeds this at the final time.
pub const COLLAPSE_THRESHOLD: f64 = 0.99;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnsembleOptions {
    pub n_trajectories: usize,
    pub total_time: f64,
    pub dt: f64,
    pub base_seed: u64,
    /// Number of sample times, including t = 0 and the final time.
    pub n_samples: usize,
}

impl EnsembleOptions {
    pub fn new(n_trajectories: usize, total_time: f64, dt: f64, base_seed: u64) -> Self {
        EnsembleOptions {
            n_trajectories,
            total_time,
            dt,
            base_seed,
            n_samples: 101,
        }
    }

    pub fn with_samples(mut self, n_samples: usize) -> Self {
        self.n_samples = n_samples;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleResult {
    pub times: Vec<f64>,
    pub mean_sigma_z: Vec<f64>,
    /// Population variance of ⟨σ_z⟩ across trajectories.
    pub var_sigma_z: Vec<f64>,
    pub fraction_plus: f64,
    pub fraction_minus: f64,
    pub n_trajectories: usize,
    pub omega_x: f64,
    pub lambda: f64,
}

impl EnsembleResult {
    /// Fraction of trajectories that did not reach either pole.
    pub fn fraction_unresolved(&self) -> f64 {
        1.0 - self.fraction_plus - self.fraction_minus
    }

    /// CSV with columns `t,mean,var,envelope`.
    pub fn to_csv(&self) -> String {
        let params = TwoLevelParams::new(self.omega_x, self.lambda)
            .expect("result built from validated parameters");
        let mut out = String::from("t,mean,var,envelope\n");
        for ((t, m), v) in self.times.iter().zip(&self.mean_sigma_z).zip(&self.var_sigma_z) {
            out.push_str(&format!("{t:e},{m:e},{v:e},{:e}\n", visibility_envelope(&params, *t)));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ensemble result serializes")
    }
}

/// Step indices at which ⟨σ_z⟩ is recorded: evenly spread over [0, n_steps].
fn sample_indices(n_steps: usize, n_samples: usize) -> Vec<usize> {
    if n_samples > n_steps {
        return (0..=n_steps).collect();
    }
    let mut idx: Vec<usize> = (0..n_samples)
        .map(|k| ((k as f64) * n_steps as f64 / (n_samples - 1) as f64).round() as usize)
        .collect();
    idx.dedup();
    idx
}

/// Averages `n` trajectories started in `psi0`.
pub fn ensemble_average(
    params: &TwoLevelParams,
    psi0: &StateVector,
    opts: &EnsembleOptions,
) -> Result<EnsembleResult> {
    if opts.n_trajectories == 0 {
        return Err(Error::invalid("n", "need at least one trajectory"));
    }
    if opts.n_samples < 2 {
        return Err(Error::invalid("n_samples", "need at least two sample times"));
    }
    let n_steps = step_count(params, opts.total_time, opts.dt)?;
    let indices = sample_indices(n_steps, opts.n_samples);
    let stepper = Stepper::new(params, opts.dt);

    let paths: Vec<Vec<f64>> = (0..opts.n_trajectories)
        .into_par_iter()
        .map(|i| {
            let mut rng = trajectory_rng(opts.base_seed, i as u64);
            let mut psi = *psi0;
            let mut samples = Vec::with_capacity(indices.len());
            let mut next = 0;
            for k in 0..=n_steps {
                if k > 0 {
                    psi = stepper.step_with_rng(&psi, &mut rng);
                }
                if indices[next] == k {
                    samples.push(psi.sigma_z());
                    next += 1;
                    if next == indices.len() {
                        break;
                    }
                }
            }
            samples
        })
        .collect();

    let n = opts.n_trajectories as f64;
    let mut mean = vec![0.0; indices.len()];
    let mut var = vec![0.0; indices.len()];
    for path in &paths {
        for (m, z) in mean.iter_mut().zip(path) {
            *m += z;
        }
    }
    mean.iter_mut().for_each(|m| *m /= n);
    for path in &paths {
        for ((v, m), z) in var.iter_mut().zip(&mean).zip(path) {
            *v += (z - m) * (z - m);
        }
    }
    var.iter_mut().for_each(|v| *v /= n);

    let finals = paths.iter().map(|p| *p.last().expect("non-empty path"));
    let (mut plus, mut minus) = (0usize, 0usize);
    for z in finals {
        if z > COLLAPSE_THRESHOLD {
            plus += 1;
        } else if z < -COLLAPSE_THRESHOLD {
            minus += 1;
        }
    }

    Ok(EnsembleResult {
        times: indices.iter().map(|&k| k as f64 * opts.dt).collect(),
        mean_sigma_z: mean,
        var_sigma_z: var,
        fraction_plus: plus as f64 / n,
        fraction_minus: minus as f64 / n,
        n_trajectories: opts.n_trajectories,
        omega_x: params.omega_x(),
        lambda: params.lambda(),
    })
}
