//! CSL collapse rates for neutrinos, neutral mesons and chiral molecules,
//! and the bound on Λ implied by an observed tunnelling splitting.
//!
//! Every rate is linear in Λ. Masses enter through m/m0 with m0 the CSL
//! reference mass.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{mass_weighted_displacement, norm_sqr, nucleon_expand, sub, EnantiomerGeometry, NucleonCloud};
use crate::units::{mev_to_amu, CslParams, ANGSTROM_CM, BOLTZMANN_EV_PER_K, HBAR_EV_S};

/// Full-energy kinematics for the neutrino rate (instead of E_j ≈ pc).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExactKinematics {
    /// p·c, eV
    pub momentum_ev: f64,
    /// m_k²c⁴ of the lighter state, eV²
    pub m2_light_ev2: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NeutrinoSpec {
    energy_ev: f64,
    flight_time_s: f64,
    delta_m2_ev2: f64,
    exact: Option<ExactKinematics>,
}

impl NeutrinoSpec {
    pub fn new(energy_ev: f64, flight_time_s: f64, delta_m2_ev2: f64) -> Result<Self> {
        if !(energy_ev > 0.0 && energy_ev.is_finite()) {
            return Err(Error::Domain(format!("neutrino energy must be positive, got {energy_ev}")));
        }
        if !(flight_time_s >= 0.0 && flight_time_s.is_finite()) {
            return Err(Error::invalid("flight_time", format!("must be >= 0, got {flight_time_s}")));
        }
        if !(delta_m2_ev2 >= 0.0 && delta_m2_ev2.is_finite()) {
            return Err(Error::invalid("delta_m2", format!("must be >= 0, got {delta_m2_ev2}")));
        }
        Ok(NeutrinoSpec {
            energy_ev,
            flight_time_s,
            delta_m2_ev2,
            exact: None,
        })
    }

    /// Switches to the exact E_j = √(p²c² + m_j²c⁴) form.
    pub fn with_exact_kinematics(mut self, momentum_ev: f64, m2_light_ev2: f64) -> Result<Self> {
        if !(momentum_ev > 0.0 && momentum_ev.is_finite()) {
            return Err(Error::Domain(format!("momentum must be positive, got {momentum_ev}")));
        }
        if !(m2_light_ev2 >= 0.0 && m2_light_ev2.is_finite()) {
            return Err(Error::invalid("m2_light", format!("must be >= 0, got {m2_light_ev2}")));
        }
        self.exact = Some(ExactKinematics {
            momentum_ev,
            m2_light_ev2,
        });
        Ok(self)
    }

    pub fn energy_ev(&self) -> f64 {
        self.energy_ev
    }

    pub fn flight_time_s(&self) -> f64 {
        self.flight_time_s
    }

    pub fn delta_m2_ev2(&self) -> f64 {
        self.delta_m2_ev2
    }

    pub fn exact(&self) -> Option<ExactKinematics> {
        self.exact
    }
}

/// λ = (Λ / 2m0²c⁴)(m_j²c⁴/E_j − m_k²c⁴/E_k)², Hz.
pub fn neutrino_rate(spec: &NeutrinoSpec, csl: &CslParams) -> f64 {
    let m0 = csl.m0_ev();
    let gap = match spec.exact {
        None => spec.delta_m2_ev2 / spec.energy_ev,
        Some(k) => {
            let p2 = k.momentum_ev * k.momentum_ev;
            let heavy = k.m2_light_ev2 + spec.delta_m2_ev2;
            let light = k.m2_light_ev2;
            heavy / (p2 + heavy).sqrt() - light / (p2 + light).sqrt()
        }
    };
    0.5 * csl.lambda() * gap * gap / (m0 * m0)
}

/// Damping factor λ·t accumulated over the flight time.
pub fn neutrino_damping(spec: &NeutrinoSpec, csl: &CslParams) -> f64 {
    neutrino_rate(spec, csl) * spec.flight_time_s
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MesonSpec {
    pub name: String,
    delta_m_amu: f64,
}

impl MesonSpec {
    pub fn new(name: impl Into<String>, delta_m_amu: f64) -> Result<Self> {
        if !(delta_m_amu >= 0.0 && delta_m_amu.is_finite()) {
            return Err(Error::invalid("delta_m", format!("must be >= 0, got {delta_m_amu}")));
        }
        Ok(MesonSpec {
            name: name.into(),
            delta_m_amu,
        })
    }

    /// Mass difference given in MeV/c².
    pub fn from_mev(name: impl Into<String>, delta_m_mev: f64) -> Result<Self> {
        Self::new(name, mev_to_amu(delta_m_mev))
    }

    pub fn delta_m_amu(&self) -> f64 {
        self.delta_m_amu
    }
}

/// λ = Λ (m₂ − m₁)² / 2m0², Hz.
pub fn meson_rate(spec: &MesonSpec, csl: &CslParams) -> f64 {
    let ratio = spec.delta_m_amu / csl.m0();
    0.5 * csl.lambda() * ratio * ratio
}

/// Exact double sum over point nucleons with F(r) = exp(−r²/4r_C²), Hz.
///
/// The constant parts of F cancel between the three terms, so each kernel is
/// evaluated as expm1 to keep precision when all separations are ≪ r_C.
/// Runs of coincident sites (as produced by [`nucleon_expand`]) are merged
/// first; this changes nothing mathematically but shrinks an N² sum to one
/// over atoms.
pub fn chiral_rate_exact(cloud: &NucleonCloud, csl: &CslParams) -> f64 {
    let scale = 1.0 / (4.0 * csl.r_c() * csl.r_c());
    let kernel = |a: &[f64; 3], b: &[f64; 3]| (-norm_sqr(&sub(a, b)) * scale).exp_m1();
    let mut sites: Vec<([f64; 3], [f64; 3], f64)> = Vec::new();
    for ((l, r), w) in cloud.left().iter().zip(cloud.right()).zip(cloud.weights()) {
        match sites.last_mut() {
            Some((pl, pr, pw)) if pl == l && pr == r => *pw += w,
            _ => sites.push((*l, *r, *w)),
        }
    }
    let mut total = Neumaier::default();
    for (i, (li, ri, wi)) in sites.iter().enumerate() {
        // pair (i, j) and (j, i) together; F is even
        let mut row = Neumaier::default();
        row.add(0.5 * wi * (2.0 * kernel(li, li) - 2.0 * kernel(li, ri)));
        for (lj, rj, wj) in &sites[i + 1..] {
            row.add(wj * (kernel(li, lj) + kernel(ri, rj) - kernel(li, rj) - kernel(ri, lj)));
        }
        total.add(2.0 * wi * row.sum());
    }
    let m0 = csl.m0();
    0.5 * csl.lambda() * total.sum() / (m0 * m0)
}

/// Compensated summation.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    carry: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        self.carry += if self.sum.abs() >= x.abs() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.sum = t;
    }

    fn sum(&self) -> f64 {
        self.sum + self.carry
    }
}

/// [`chiral_rate_exact`] on the nucleon expansion of `geom`.
pub fn chiral_rate_exact_geometry(geom: &EnantiomerGeometry, csl: &CslParams) -> f64 {
    chiral_rate_exact(&nucleon_expand(geom), csl)
}

/// Leading-order rate (Λ/4r_C²)|Σ m_i(x_i^L − x_i^R)|², Hz.
///
/// Refuses geometries with any displacement ≥ r_C, where the expansion is
/// meaningless; logs a warning above 0.1 r_C.
pub fn chiral_rate_dipole(geom: &EnantiomerGeometry, csl: &CslParams) -> Result<f64> {
    let max_d = geom.max_displacement();
    if max_d >= csl.r_c() {
        return Err(Error::Domain(format!(
            "displacement {max_d:e} cm is not small against r_C = {:e} cm",
            csl.r_c()
        )));
    }
    if max_d > 0.1 * csl.r_c() {
        log::warn!("displacement {max_d:e} cm exceeds 0.1 r_C; dipole approximation is poor");
    }
    let s = mass_weighted_displacement(geom);
    let m0 = csl.m0();
    Ok(csl.lambda() / (4.0 * csl.r_c() * csl.r_c()) * norm_sqr(&s) / (m0 * m0))
}

/// Effective one-coordinate description of a double-well molecule.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DoubleWellSpec {
    mu_amu: f64,
    q0_cm: f64,
    omega_x_hz: f64,
    /// barrier height, eV
    pub barrier_ev: Option<f64>,
    /// small-oscillation frequency in either well, Hz
    pub well_frequency_hz: Option<f64>,
}

impl DoubleWellSpec {
    /// `mu` in amu, `q0` in cm, tunnelling splitting `omega_x` in Hz.
    pub fn new(mu_amu: f64, q0_cm: f64, omega_x_hz: f64) -> Result<Self> {
        if !(mu_amu >= 0.0 && mu_amu.is_finite()) {
            return Err(Error::invalid("mu", format!("must be >= 0, got {mu_amu}")));
        }
        if !(q0_cm >= 0.0 && q0_cm.is_finite()) {
            return Err(Error::invalid("q0", format!("must be >= 0, got {q0_cm}")));
        }
        if !(omega_x_hz >= 0.0 && omega_x_hz.is_finite()) {
            return Err(Error::invalid("omega_x", format!("must be >= 0, got {omega_x_hz}")));
        }
        Ok(DoubleWellSpec {
            mu_amu,
            q0_cm,
            omega_x_hz,
            barrier_ev: None,
            well_frequency_hz: None,
        })
    }

    /// Same as [`DoubleWellSpec::new`] with `q0` in Å.
    pub fn from_angstrom(mu_amu: f64, q0_angstrom: f64, omega_x_hz: f64) -> Result<Self> {
        Self::new(mu_amu, q0_angstrom * ANGSTROM_CM, omega_x_hz)
    }

    pub fn with_well(mut self, barrier_ev: f64, well_frequency_hz: f64) -> Self {
        self.barrier_ev = Some(barrier_ev);
        self.well_frequency_hz = Some(well_frequency_hz);
        self
    }

    pub fn with_omega_x(mut self, omega_x_hz: f64) -> Result<Self> {
        if !(omega_x_hz >= 0.0 && omega_x_hz.is_finite()) {
            return Err(Error::invalid("omega_x", format!("must be >= 0, got {omega_x_hz}")));
        }
        self.omega_x_hz = omega_x_hz;
        Ok(self)
    }

    pub fn mu_amu(&self) -> f64 {
        self.mu_amu
    }

    pub fn q0_cm(&self) -> f64 {
        self.q0_cm
    }

    pub fn omega_x_hz(&self) -> f64 {
        self.omega_x_hz
    }
}

/// λ ≈ (Λ/4r_C²)(μ q0)², Hz.
pub fn chiral_rate_doublewell(spec: &DoubleWellSpec, csl: &CslParams) -> f64 {
    let size = spec.mu_amu * spec.q0_cm / csl.m0();
    csl.lambda() / (4.0 * csl.r_c() * csl.r_c()) * size * size
}

/// (2r_C / μq0)² ω, the factor multiplying a splitting or a resolution.
pub fn bound_coefficient(mu_q0_amu_cm: f64, omega_hz: f64, csl: &CslParams) -> f64 {
    let ratio = 2.0 * csl.r_c() * csl.m0() / mu_q0_amu_cm;
    ratio * ratio * omega_hz
}

/// Λ_max = (2r_C / μq0)² ω_x: an observed splitting requires λ < ω_x.
pub fn lambda_upper_bound(spec: &DoubleWellSpec, csl: &CslParams) -> Result<f64> {
    if spec.omega_x_hz <= 0.0 {
        return Err(Error::Domain("no tunnelling splitting observed, so no bound".into()));
    }
    let size = spec.mu_amu * spec.q0_cm;
    if size <= 0.0 {
        return Err(Error::Domain("μ·q0 must be positive for a bound".into()));
    }
    Ok(bound_coefficient(size, spec.omega_x_hz, csl))
}

/// Typical spectroscopic mode frequencies, Hz (microwave to UV).
pub const MODE_FREQUENCY_RANGE: (f64, f64) = (1e9, 1e14);

/// Bound reachable when a splitting ω_x = R·ω is just resolved.
pub fn bound_from_resolution(
    resolution: f64,
    mode_frequency_hz: f64,
    spec: &DoubleWellSpec,
    csl: &CslParams,
) -> Result<f64> {
    if !(resolution > 0.0 && resolution <= 1.0) {
        return Err(Error::Domain(format!("resolution must lie in (0, 1], got {resolution}")));
    }
    let (lo, hi) = MODE_FREQUENCY_RANGE;
    if !(lo..=hi).contains(&mode_frequency_hz) {
        log::warn!("mode frequency {mode_frequency_hz:e} Hz outside the usual {lo:e}-{hi:e} Hz window");
    }
    lambda_upper_bound(&spec.with_omega_x(resolution * mode_frequency_hz)?, csl)
}

/// Extremes of (2r_C/μq0)²·ω over rectangular ranges of μq0 (amu·cm) and ω (Hz).
pub fn bound_coefficient_range(mu_q0: (f64, f64), omega: (f64, f64), csl: &CslParams) -> (f64, f64) {
    (
        bound_coefficient(mu_q0.1, omega.0, csl),
        bound_coefficient(mu_q0.0, omega.1, csl),
    )
}

/// Whether the two-state reduction holds: V0 ≫ ħω0 ≫ k_B T with "≫" read as a factor of 10.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoLevelValidity {
    pub barrier_ratio: Option<f64>,
    pub thermal_ratio: Option<f64>,
    pub valid: bool,
    pub notes: Vec<String>,
}

const VALIDITY_FACTOR: f64 = 10.0;

pub fn validate_twolevel(spec: &DoubleWellSpec, temperature_k: f64) -> TwoLevelValidity {
    let mut notes = Vec::new();
    let quantum = spec.well_frequency_hz.map(|w| HBAR_EV_S * w);
    let barrier_ratio = match (spec.barrier_ev, quantum) {
        (Some(v0), Some(q)) if q > 0.0 => Some(v0 / q),
        _ => None,
    };
    let thermal_ratio = match quantum {
        Some(q) if temperature_k > 0.0 => Some(q / (BOLTZMANN_EV_PER_K * temperature_k)),
        Some(_) => Some(f64::INFINITY),
        None => None,
    };
    let ok = |r: f64| r >= VALIDITY_FACTOR * (1.0 - 1e-12);
    match barrier_ratio {
        None => notes.push("barrier height or well frequency missing".to_string()),
        Some(r) if !ok(r) => notes.push(format!("V0/ħω0 = {r:.3} < 10: barrier too low")),
        _ => {}
    }
    match thermal_ratio {
        None => notes.push("well frequency missing".to_string()),
        Some(r) if !ok(r) => notes.push(format!("ħω0/kT = {r:.3} < 10: thermal regime")),
        _ => {}
    }
    let valid = barrier_ratio.is_some_and(ok) && thermal_ratio.is_some_and(ok);
    TwoLevelValidity {
        barrier_ratio,
        thermal_ratio,
        valid,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_pair, build_pair_with, AtomSite, Fixture, PairOptions};
    use crate::units::CslParams;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn neutrino_coefficient() {
        let csl = CslParams::adler();
        assert_eq!(neutrino_rate(&NeutrinoSpec::new(1.0, 1.0, 0.0).unwrap(), &csl), 0.0);
        let r = neutrino_rate(&NeutrinoSpec::new(1.0, 1.0, 7.6e-5).unwrap(), &csl);
        // 0.5 * 2.245e-9 * (7.6e-5)^2 / (931.494e6)^2
        assert!(rel(r, 7.47e-36) < 1e-2, "{r:e}");
        assert!(NeutrinoSpec::new(0.0, 1.0, 7.6e-5).is_err());
    }

    #[test]
    fn neutrino_damping_examples() {
        let csl = CslParams::adler();
        let d = neutrino_damping(&NeutrinoSpec::new(1e6, 500.0, 7.6e-5).unwrap(), &csl);
        assert!(d > 4e-45 / 3.0 && d < 4e-45 * 3.0, "{d:e}");
        let d = neutrino_damping(&NeutrinoSpec::new(1e10, 2e-2, 7.6e-5).unwrap(), &csl);
        assert!(d > 2e-57 / 3.0 && d < 2e-57 * 3.0, "{d:e}");
        assert_eq!(neutrino_damping(&NeutrinoSpec::new(1e6, 0.0, 7.6e-5).unwrap(), &csl), 0.0);
    }

    #[test]
    fn exact_kinematics_reduce_to_relativistic() {
        let csl = CslParams::adler();
        let rel_spec = NeutrinoSpec::new(1e6, 1.0, 2.4e-3).unwrap();
        let exact = rel_spec.with_exact_kinematics(1e6, 1e-4).unwrap();
        let a = neutrino_rate(&rel_spec, &csl);
        let b = neutrino_rate(&exact, &csl);
        assert!(rel(b, a) < 1e-9, "{a:e} {b:e}");
        // far from the relativistic limit the two differ
        let slow = NeutrinoSpec::new(0.1, 1.0, 2.4e-3).unwrap().with_exact_kinematics(0.01, 1e-4).unwrap();
        let fast = NeutrinoSpec::new(0.01, 1.0, 2.4e-3).unwrap();
        assert!(rel(neutrino_rate(&slow, &csl), neutrino_rate(&fast, &csl)) > 1e-2);
    }

    #[test]
    fn meson_examples() {
        let csl = CslParams::adler();
        assert_eq!(meson_rate(&MesonSpec::new("zero", 0.0).unwrap(), &csl), 0.0);
        let k = meson_rate(&MesonSpec::from_mev("K", 3.48e-12).unwrap(), &csl);
        assert!(k > 1.5e-38 / 3.0 && k < 1.5e-38 * 3.0, "{k:e}");
        let bs = meson_rate(&MesonSpec::from_mev("Bs", 1.17e-8).unwrap(), &csl);
        assert!(bs > 1.7e-31 / 3.0 && bs < 1.7e-31 * 3.0, "{bs:e}");
    }

    fn one_nucleon(d: f64) -> NucleonCloud {
        NucleonCloud::unit(vec![[0.0; 3]], vec![[d, 0.0, 0.0]]).unwrap()
    }

    #[test]
    fn exact_rate_limits() {
        let csl = CslParams::adler();
        let same = NucleonCloud::unit(vec![[1e-8, 2e-8, 0.0], [0.0; 3]], vec![[1e-8, 2e-8, 0.0], [0.0; 3]]).unwrap();
        assert_eq!(chiral_rate_exact(&same, &csl), 0.0);
        let far = chiral_rate_exact(&one_nucleon(1.0), &csl);
        assert!(rel(far, csl.lambda()) < 1e-12);
        let d = 1e-3 * csl.r_c();
        let near = chiral_rate_exact(&one_nucleon(d), &csl);
        let oracle = csl.lambda() * -(-(d * d) / (4.0 * csl.r_c() * csl.r_c())).exp_m1();
        assert!(rel(near, oracle) < 1e-12);
        let taylor = csl.lambda() * d * d / (4.0 * csl.r_c() * csl.r_c());
        assert!(rel(near, taylor) < 1e-5);
    }

    #[test]
    fn dipole_matches_single_atom_formula() {
        let csl = CslParams::adler();
        let d = [0.0, 3e-8, 4e-8];
        let l = vec![AtomSite::new("C", [0.0; 3]).unwrap(), AtomSite::new("Cl", d).unwrap()];
        let r = vec![AtomSite::new("C", [0.0; 3]).unwrap(), AtomSite::new("Cl", [0.0; 3]).unwrap()];
        let opts = PairOptions {
            max_radial_mismatch: None,
            ..PairOptions::default()
        };
        let g = build_pair_with(l, r, 0, &opts).unwrap();
        let m = g.left()[1].mass;
        let dip = chiral_rate_dipole(&g, &csl).unwrap();
        let expected = csl.lambda() * m * m * 25e-16 / (4.0 * csl.r_c() * csl.r_c());
        assert!(rel(dip, expected) < 1e-12);
        let exact = chiral_rate_exact_geometry(&g, &csl);
        // (|d|/r_C)² = 2.5e-5
        assert!(rel(exact, dip) < 1e-4, "{exact:e} {dip:e}");
    }

    #[test]
    fn dipole_refuses_large_displacements() {
        let csl = CslParams::adler();
        let opts = PairOptions {
            max_radial_mismatch: None,
            ..PairOptions::default()
        };
        let l = vec![AtomSite::new("C", [0.0; 3]).unwrap(), AtomSite::new("H", [2e-5, 0.0, 0.0]).unwrap()];
        let r = vec![AtomSite::new("C", [0.0; 3]).unwrap(), AtomSite::new("H", [0.0; 3]).unwrap()];
        let g = build_pair_with(l, r, 0, &opts).unwrap();
        assert!(matches!(chiral_rate_dipole(&g, &csl), Err(Error::Domain(_))));
        let sites = Fixture::find("ammonia").unwrap().geometry().unwrap().left().to_vec();
        let g = build_pair(sites.clone(), sites, 0).unwrap();
        assert_eq!(chiral_rate_dipole(&g, &csl).unwrap(), 0.0);
    }

    #[test]
    fn doublewell_examples() {
        let csl = CslParams::adler();
        assert_eq!(chiral_rate_doublewell(&DoubleWellSpec::new(0.0, 1e-8, 1.0).unwrap(), &csl), 0.0);
        let ammonia = DoubleWellSpec::from_angstrom(3.0, 0.8, 24e9).unwrap();
        let r = chiral_rate_doublewell(&ammonia, &csl);
        assert!(rel(r, 3.2e-15) < 0.02, "{r:e}");

        // one effective particle of mass μ displaced by q0
        let l = vec![AtomSite::with_mass("X", 1.0, [0.0; 3]).unwrap(), AtomSite::with_mass("Y", 3.0, [0.0, 0.0, 0.8e-8]).unwrap()];
        let rgt = vec![AtomSite::with_mass("X", 1.0, [0.0; 3]).unwrap(), AtomSite::with_mass("Y", 3.0, [0.0; 3]).unwrap()];
        let opts = PairOptions {
            max_radial_mismatch: None,
            ..PairOptions::default()
        };
        let g = build_pair_with(l, rgt, 0, &opts).unwrap();
        assert!(rel(chiral_rate_dipole(&g, &csl).unwrap(), r) < 1e-12);
    }

    #[test]
    fn upper_bounds() {
        let csl = CslParams::adler();
        let ammonia = DoubleWellSpec::from_angstrom(3.0, 0.8, 24e9).unwrap();
        let b = lambda_upper_bound(&ammonia, &csl).unwrap();
        assert!(rel(b, 1.667e16) < 1e-3, "{b:e}");
        let rud2 = DoubleWellSpec::from_angstrom(2.0, 2.0, 1.0).unwrap();
        let b = lambda_upper_bound(&rud2, &csl).unwrap();
        assert!(rel(b, 2.5e5) < 1e-12, "{b:e}");
        let doubled = lambda_upper_bound(&rud2.with_omega_x(2.0).unwrap(), &csl).unwrap();
        assert!(rel(doubled, 2.0 * b) < 1e-14);
        assert!(matches!(
            lambda_upper_bound(&rud2.with_omega_x(0.0).unwrap(), &csl),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn resolution_bounds() {
        let csl = CslParams::adler();
        let big = DoubleWellSpec::from_angstrom(100.0, 10.0, 1.0).unwrap();
        let b = bound_from_resolution(1e-14, 1e9, &big, &csl).unwrap();
        assert!(rel(b, 4e-5) < 1e-9, "{b:e}");
        let direct = lambda_upper_bound(&big.with_omega_x(1e9).unwrap(), &csl).unwrap();
        assert_eq!(bound_from_resolution(1.0, 1e9, &big, &csl).unwrap(), direct);
        assert!(bound_from_resolution(0.0, 1e9, &big, &csl).is_err());
        assert!(bound_from_resolution(1.5, 1e9, &big, &csl).is_err());

        let (lo, hi) = bound_coefficient_range((ANGSTROM_CM, 1000.0 * ANGSTROM_CM), MODE_FREQUENCY_RANGE, &csl);
        assert!(rel(lo, 4e9) < 1e-9 && rel(hi, 4e20) < 1e-9, "{lo:e} {hi:e}");
    }

    #[test]
    fn validity_checks() {
        let w0 = 1e13;
        let q = HBAR_EV_S * w0;
        let t_for = |ratio: f64| q / (BOLTZMANN_EV_PER_K * ratio);
        let ok = DoubleWellSpec::new(3.0, 1e-8, 1.0).unwrap().with_well(100.0 * q, w0);
        assert!(validate_twolevel(&ok, t_for(100.0)).valid);
        let hot = validate_twolevel(&ok, t_for(1.0));
        assert!(!hot.valid);
        assert!(hot.notes.iter().any(|n| n.contains("thermal")));
        let edge = DoubleWellSpec::new(3.0, 1e-8, 1.0).unwrap().with_well(10.0 * q, w0);
        assert!(validate_twolevel(&edge, t_for(10.0)).valid);
        let missing = DoubleWellSpec::new(3.0, 1e-8, 1.0).unwrap();
        assert!(!validate_twolevel(&missing, 300.0).valid);
    }

    #[test]
    fn rates_are_linear_in_gamma() {
        let a = CslParams::adler();
        let b = a.with_gamma(2.0 * a.gamma()).unwrap();
        let nu = NeutrinoSpec::new(1e6, 1.0, 7.6e-5).unwrap();
        let me = MesonSpec::from_mev("K", 3.48e-12).unwrap();
        let dw = DoubleWellSpec::from_angstrom(3.0, 0.8, 24e9).unwrap();
        let g = Fixture::find("ammonia").unwrap().geometry().unwrap();
        let pairs = [
            (neutrino_rate(&nu, &a), neutrino_rate(&nu, &b)),
            (meson_rate(&me, &a), meson_rate(&me, &b)),
            (chiral_rate_doublewell(&dw, &a), chiral_rate_doublewell(&dw, &b)),
            (chiral_rate_dipole(&g, &a).unwrap(), chiral_rate_dipole(&g, &b).unwrap()),
            (chiral_rate_exact_geometry(&g, &a), chiral_rate_exact_geometry(&g, &b)),
        ];
        for (x, y) in pairs {
            assert!(rel(y, 2.0 * x) < 1e-14, "{x:e} {y:e}");
        }
    }

    #[test]
    fn shipped_fixtures_agree_between_exact_and_dipole() {
        let csl = CslParams::adler();
        for f in crate::geometry::FIXTURES {
            let g = f.geometry().unwrap();
            let exact = chiral_rate_exact_geometry(&g, &csl);
            let dip = chiral_rate_dipole(&g, &csl).unwrap();
            // molecule extent bounds the Taylor remainder
            let extent = g.left().iter().chain(g.right()).map(|s| norm_sqr(&s.position).sqrt()).fold(0.0, f64::max);
            let band = 10.0 * (extent / csl.r_c()).powi(2);
            assert!(rel(exact, dip) < band, "{}: {exact:e} vs {dip:e}, band {band:e}", f.name);
        }
    }
}
