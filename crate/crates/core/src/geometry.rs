//! Enantiomer structure pairs: XYZ parsing, pairing, and the two reductions
//! used by the chiral collapse rates (mass-weighted displacement and the
//! nucleon-level expansion).
//!
//! Positions are stored in cm. XYZ files carry Å.
//!
//! Element tokens resolve to the most abundant isotope. A leading mass
//! number selects another isotope (`13C`, `18O`, `37Cl`), and `D` / `T` are
//! accepted for deuterium and tritium.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::units::ANGSTROM_CM;

pub type Vec3 = [f64; 3];

pub(crate) fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub(crate) fn norm_sqr(a: &Vec3) -> f64 {
    a[0] * a[0] + a[1] * a[1] + a[2] * a[2]
}

// (symbol, mass number, mass in amu) of the most abundant isotope
const ELEMENTS: &[(&str, u32, f64)] = &[
    ("H", 1, 1.007_825_03),
    ("He", 4, 4.002_603_25),
    ("Li", 7, 7.016_003_4),
    ("Be", 9, 9.012_183_1),
    ("B", 11, 11.009_305_4),
    ("C", 12, 12.0),
    ("N", 14, 14.003_074_0),
    ("O", 16, 15.994_914_6),
    ("F", 19, 18.998_403_2),
    ("Ne", 20, 19.992_440_2),
    ("Na", 23, 22.989_769_3),
    ("Mg", 24, 23.985_041_7),
    ("Al", 27, 26.981_538_4),
    ("Si", 28, 27.976_926_5),
    ("P", 31, 30.973_762_0),
    ("S", 32, 31.972_071_2),
    ("Cl", 35, 34.968_852_7),
    ("Ar", 40, 39.962_383_1),
    ("K", 39, 38.963_706_5),
    ("Ca", 40, 39.962_590_9),
    ("Fe", 56, 55.934_936_3),
    ("Co", 59, 58.933_194_3),
    ("Ni", 58, 57.935_342_4),
    ("Cu", 63, 62.929_597_7),
    ("Zn", 64, 63.929_142_0),
    ("Se", 80, 79.916_521_8),
    ("Br", 79, 78.918_337_6),
    ("Ru", 102, 101.904_344),
    ("Rh", 103, 102.905_498),
    ("Pd", 106, 105.903_480),
    ("Ag", 107, 106.905_092),
    ("Sn", 120, 119.902_202),
    ("I", 127, 126.904_473),
    ("Pt", 195, 194.964_792),
    ("Au", 197, 196.966_570),
];

// minor isotopes reachable through a mass-number prefix
const ISOTOPES: &[(&str, u32, f64)] = &[
    ("H", 2, 2.014_101_78),
    ("H", 3, 3.016_049_28),
    ("C", 13, 13.003_354_84),
    ("C", 14, 14.003_241_99),
    ("N", 15, 15.000_108_90),
    ("O", 17, 16.999_131_76),
    ("O", 18, 17.999_159_61),
    ("S", 34, 33.967_867_0),
    ("Cl", 37, 36.965_902_6),
    ("Br", 81, 80.916_290_6),
];

/// Resolves an element token to (canonical element symbol, mass in amu).
pub fn resolve_element(token: &str) -> Option<(&'static str, f64)> {
    match token {
        "D" => return lookup_isotope("H", 2),
        "T" => return lookup_isotope("H", 3),
        _ => {}
    }
    let digits = token.chars().take_while(|c| c.is_ascii_digit()).count();
    let (number, symbol) = token.split_at(digits);
    let symbol = normalize_symbol(symbol)?;
    let (sym, main_a, main_mass) = ELEMENTS.iter().find(|(s, _, _)| *s == symbol)?;
    if number.is_empty() {
        return Some((sym, *main_mass));
    }
    let a: u32 = number.parse().ok()?;
    if a == *main_a {
        Some((sym, *main_mass))
    } else {
        lookup_isotope(sym, a)
    }
}

fn lookup_isotope(symbol: &str, a: u32) -> Option<(&'static str, f64)> {
    let (sym, _, _) = ELEMENTS.iter().find(|(s, _, _)| *s == symbol)?;
    ISOTOPES
        .iter()
        .find(|(s, n, _)| *s == symbol && *n == a)
        .map(|(_, _, m)| (*sym, *m))
}

fn normalize_symbol(s: &str) -> Option<String> {
    let mut chars = s.chars();
    let first = chars.next()?;
    if !first.is_ascii_alphabetic() || s.len() > 2 {
        return None;
    }
    let mut out = first.to_ascii_uppercase().to_string();
    out.extend(chars.map(|c| c.to_ascii_lowercase()));
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AtomSite {
    /// Token as written in the input (`C`, `D`, `13C`).
    pub label: String,
    pub element: String,
    /// amu
    pub mass: f64,
    /// cm
    pub position: Vec3,
}

impl AtomSite {
    /// Resolves the mass of `label` from the element table. `position` is in cm.
    pub fn new(label: &str, position: Vec3) -> Result<Self> {
        let (element, mass) = resolve_element(label)
            .ok_or_else(|| Error::Geometry(format!("unknown element `{label}`")))?;
        Ok(AtomSite {
            label: label.to_string(),
            element: element.to_string(),
            mass,
            position,
        })
    }

    /// Site with an explicit mass (amu), bypassing the table.
    pub fn with_mass(label: &str, mass: f64, position: Vec3) -> Result<Self> {
        if !(mass > 0.0 && mass.is_finite()) {
            return Err(Error::invalid("mass", format!("must be positive, got {mass}")));
        }
        Ok(AtomSite {
            label: label.to_string(),
            element: label.to_string(),
            mass,
            position,
        })
    }

    /// Number of nucleons the site stands for.
    pub fn nucleons(&self) -> usize {
        (self.mass.round() as usize).max(1)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Parses an XYZ document: atom count, comment, then `Element x y z` in Å.
pub fn parse_xyz(text: &str) -> Result<Vec<AtomSite>> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let count: usize = header
        .trim()
        .parse()
        .map_err(|_| parse_err(1, format!("expected atom count, got `{}`", header.trim())))?;
    if lines.next().is_none() {
        return Err(parse_err(2, "missing comment line"));
    }

    let mut sites = Vec::with_capacity(count);
    for (line_no, line) in lines {
        let line = line.trim();
        if sites.len() == count {
            if line.is_empty() {
                continue;
            }
            return Err(parse_err(line_no, format!("more than the declared {count} atoms")));
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(parse_err(line_no, format!("expected `Element x y z`, got `{line}`")));
        }
        let mut pos = [0.0; 3];
        for (axis, field) in pos.iter_mut().zip(&fields[1..4]) {
            *axis = field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| parse_err(line_no, format!("malformed coordinate `{field}`")))?
                * ANGSTROM_CM;
        }
        let site = AtomSite::new(fields[0], pos)
            .map_err(|_| parse_err(line_no, format!("unknown element `{}`", fields[0])))?;
        sites.push(site);
    }
    if sites.len() < count {
        return Err(parse_err(
            sites.len() + 3,
            format!("declared {count} atoms but found {}", sites.len()),
        ));
    }
    Ok(sites)
}

/// Inverse of [`parse_xyz`]; positions written in Å with 10 decimals.
pub fn write_xyz(sites: &[AtomSite], comment: &str) -> String {
    let mut out = format!("{}\n{}\n", sites.len(), comment.replace('\n', " "));
    for s in sites {
        let p = s.position.map(|v| v / ANGSTROM_CM);
        let _ = writeln!(out, "{} {:.10} {:.10} {:.10}", s.label, p[0], p[1], p[2]);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairOptions {
    /// Atoms displaced by less than this (cm) are spectators.
    pub spectator_threshold: f64,
    /// Largest tolerated difference (cm) between an atom's distance from the
    /// chirality center in the two structures; `None` disables the check.
    pub max_radial_mismatch: Option<f64>,
}

impl Default for PairOptions {
    fn default() -> Self {
        PairOptions {
            spectator_threshold: 1e-3 * ANGSTROM_CM,
            max_radial_mismatch: Some(0.5 * ANGSTROM_CM),
        }
    }
}

/// Two conformations sharing atom order, both centred on the chirality center.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnantiomerGeometry {
    left: Vec<AtomSite>,
    right: Vec<AtomSite>,
    center_index: usize,
    superposed: Vec<bool>,
    nucleon_count: usize,
}

impl EnantiomerGeometry {
    pub fn left(&self) -> &[AtomSite] {
        &self.left
    }

    pub fn right(&self) -> &[AtomSite] {
        &self.right
    }

    pub fn center_index(&self) -> usize {
        self.center_index
    }

    /// Number of atoms in spatial superposition.
    pub fn n_superposed(&self) -> usize {
        self.superposed.iter().filter(|&&s| s).count()
    }

    pub fn is_superposed(&self, atom: usize) -> bool {
        self.superposed[atom]
    }

    /// Total nucleon count N over all sites.
    pub fn nucleon_count(&self) -> usize {
        self.nucleon_count
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    /// x_i^L − x_i^R
    pub fn displacement(&self, atom: usize) -> Vec3 {
        sub(&self.left[atom].position, &self.right[atom].position)
    }

    /// Largest |x_i^L − x_i^R| over all atoms, cm.
    pub fn max_displacement(&self) -> f64 {
        (0..self.len())
            .map(|i| norm_sqr(&self.displacement(i)).sqrt())
            .fold(0.0, f64::max)
    }

    /// The same pair with the roles of the two structures exchanged.
    pub fn swapped(&self) -> Self {
        EnantiomerGeometry {
            left: self.right.clone(),
            right: self.left.clone(),
            ..self.clone()
        }
    }
}

pub fn build_pair(left: Vec<AtomSite>, right: Vec<AtomSite>, center_index: usize) -> Result<EnantiomerGeometry> {
    build_pair_with(left, right, center_index, &PairOptions::default())
}

/// Pairs atoms positionally and moves both structures so the center atom sits at the origin.
pub fn build_pair_with(
    mut left: Vec<AtomSite>,
    mut right: Vec<AtomSite>,
    center_index: usize,
    opts: &PairOptions,
) -> Result<EnantiomerGeometry> {
    if left.len() != right.len() {
        return Err(Error::Geometry(format!(
            "structures have {} and {} atoms",
            left.len(),
            right.len()
        )));
    }
    if let Some(i) = left.iter().zip(&right).position(|(l, r)| l.label != r.label) {
        return Err(Error::Geometry(format!(
            "atom {i} is `{}` on the left but `{}` on the right",
            left[i].label, right[i].label
        )));
    }
    if left.is_empty() {
        return Ok(EnantiomerGeometry {
            left,
            right,
            center_index: 0,
            superposed: Vec::new(),
            nucleon_count: 0,
        });
    }
    if center_index >= left.len() {
        return Err(Error::Geometry(format!(
            "center index {center_index} out of range for {} atoms",
            left.len()
        )));
    }
    for structure in [&mut left, &mut right] {
        let origin = structure[center_index].position;
        for site in structure.iter_mut() {
            site.position = sub(&site.position, &origin);
        }
    }
    if let Some(tol) = opts.max_radial_mismatch {
        for (i, (l, r)) in left.iter().zip(&right).enumerate() {
            let dl = norm_sqr(&l.position).sqrt();
            let dr = norm_sqr(&r.position).sqrt();
            if (dl - dr).abs() > tol {
                return Err(Error::Geometry(format!(
                    "atom {i} sits {:.4} Å from the center on the left but {:.4} Å on the right; \
                     the structures do not share a frame",
                    dl / ANGSTROM_CM,
                    dr / ANGSTROM_CM
                )));
            }
        }
    }
    let superposed = left
        .iter()
        .zip(&right)
        .map(|(l, r)| norm_sqr(&sub(&l.position, &r.position)).sqrt() > opts.spectator_threshold)
        .collect();
    let nucleon_count = left.iter().map(AtomSite::nucleons).sum();
    Ok(EnantiomerGeometry {
        left,
        right,
        center_index,
        superposed,
        nucleon_count,
    })
}

/// Σ m_i (x_i^L − x_i^R), in amu·cm.
pub fn mass_weighted_displacement(geom: &EnantiomerGeometry) -> Vec3 {
    let mut acc = [0.0; 3];
    for i in 0..geom.len() {
        let d = geom.displacement(i);
        let m = geom.left[i].mass;
        for (a, di) in acc.iter_mut().zip(d) {
            *a += m * di;
        }
    }
    acc
}

/// Point nucleons of both conformations.
///
/// Each atom becomes round(m) coincident sites. Every site carries the weight
/// m / round(m), so the weights of an atom add up to its actual mass and the
/// leading-order expansion of the exact double sum equals the mass-weighted
/// dipole form.
#[derive(Clone, Debug, PartialEq)]
pub struct NucleonCloud {
    left: Vec<Vec3>,
    right: Vec<Vec3>,
    weights: Vec<f64>,
}

impl NucleonCloud {
    pub fn new(left: Vec<Vec3>, right: Vec<Vec3>, weights: Vec<f64>) -> Result<Self> {
        if left.len() != right.len() || left.len() != weights.len() {
            return Err(Error::Geometry(format!(
                "nucleon site counts differ: {} left, {} right, {} weights",
                left.len(),
                right.len(),
                weights.len()
            )));
        }
        Ok(NucleonCloud { left, right, weights })
    }

    /// Unit-weight sites.
    pub fn unit(left: Vec<Vec3>, right: Vec<Vec3>) -> Result<Self> {
        let weights = vec![1.0; left.len()];
        Self::new(left, right, weights)
    }

    pub fn left(&self) -> &[Vec3] {
        &self.left
    }

    pub fn right(&self) -> &[Vec3] {
        &self.right
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }
}

pub fn nucleon_expand(geom: &EnantiomerGeometry) -> NucleonCloud {
    let n = geom.nucleon_count();
    let mut left = Vec::with_capacity(n);
    let mut right = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for (l, r) in geom.left.iter().zip(&geom.right) {
        let count = l.nucleons();
        let w = l.mass / count as f64;
        for _ in 0..count {
            left.push(l.position);
            right.push(r.position);
            weights.push(w);
        }
    }
    NucleonCloud { left, right, weights }
}

/// Built-in enantiomer pairs (xyz text of both structures and the center atom index).
pub struct Fixture {
    pub name: &'static str,
    pub left_xyz: &'static str,
    pub right_xyz: &'static str,
    pub center_index: usize,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "ammonia",
        left_xyz: include_str!("../data/fixtures/ammonia_left.xyz"),
        right_xyz: include_str!("../data/fixtures/ammonia_right.xyz"),
        center_index: 0,
    },
    Fixture {
        name: "yxxy",
        left_xyz: include_str!("../data/fixtures/yxxy_left.xyz"),
        right_xyz: include_str!("../data/fixtures/yxxy_right.xyz"),
        center_index: 0,
    },
];

impl Fixture {
    pub fn find(name: &str) -> Option<&'static Fixture> {
        FIXTURES.iter().find(|f| f.name == name)
    }

    pub fn geometry(&self) -> Result<EnantiomerGeometry> {
        build_pair(parse_xyz(self.left_xyz)?, parse_xyz(self.right_xyz)?, self.center_index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ammonia() -> EnantiomerGeometry {
        Fixture::find("ammonia").unwrap().geometry().unwrap()
    }

    #[test]
    fn single_hydrogen() {
        let sites = parse_xyz("1\nhydrogen\nH 0 0 0\n").unwrap();
        assert_eq!(sites.len(), 1);
        assert!((sites[0].mass - 1.008).abs() < 1e-3);
        assert_eq!(sites[0].position, [0.0; 3]);
    }

    #[test]
    fn deuterium_and_isotopes() {
        let sites = parse_xyz("3\n\nD 0 0 1\n13C 0 0 0\nc 1 0 0\n").unwrap();
        assert!((sites[0].mass - 2.014).abs() < 1e-3);
        assert_eq!(sites[0].element, "H");
        assert!((sites[0].position[2] - 1e-8).abs() < 1e-22);
        assert!((sites[1].mass - 13.00335).abs() < 1e-4);
        assert_eq!(sites[2].mass, 12.0);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_xyz("4\ncomment\nH 0 0 0\nH 0 0 1\nH 0 1 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 6, .. }), "{err}");
        let err = parse_xyz("2\n\nH 0 0 0\nXx 0 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        let err = parse_xyz("1\n\nH 0 zero 0\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_xyz("one\n\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = parse_xyz("1\n\nH 0 0 0\nH 1 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }), "{err}");
        assert!(parse_xyz("1\n\nH 0 0 0\n\n\n").is_ok());
        assert!(parse_xyz("1\n\n99H 0 0 0\n").is_err());
    }

    #[test]
    fn identical_structures_have_no_superposition() {
        let sites = parse_xyz(Fixture::find("ammonia").unwrap().left_xyz).unwrap();
        let g = build_pair(sites.clone(), sites, 0).unwrap();
        assert_eq!(g.n_superposed(), 0);
        assert_eq!(g.max_displacement(), 0.0);
        assert_eq!(mass_weighted_displacement(&g), [0.0; 3]);
    }

    #[test]
    fn ammonia_has_three_superposed_hydrogens() {
        let g = ammonia();
        assert_eq!(g.n_superposed(), 3);
        assert!(!g.is_superposed(0));
        assert_eq!(g.nucleon_count(), 17);
        assert_eq!(g.left()[0].position, [0.0; 3]);
        assert_eq!(g.right()[0].position, [0.0; 3]);
    }

    #[test]
    fn swap_flips_sign_only() {
        let g = ammonia();
        let a = mass_weighted_displacement(&g);
        let b = mass_weighted_displacement(&g.swapped());
        for k in 0..3 {
            assert!((a[k] + b[k]).abs() < 1e-24);
        }
    }

    #[test]
    fn pairing_errors() {
        let l = parse_xyz("2\n\nN 0 0 0\nH 0 0 1\n").unwrap();
        let r = parse_xyz("2\n\nN 0 0 0\nD 0 0 -1\n").unwrap();
        assert!(matches!(build_pair(l.clone(), r, 0), Err(Error::Geometry(_))));
        assert!(matches!(build_pair(l.clone(), l[..1].to_vec(), 0), Err(Error::Geometry(_))));
        assert!(matches!(build_pair(l.clone(), l.clone(), 5), Err(Error::Geometry(_))));
        let far = parse_xyz("2\n\nN 0 0 0\nH 0 0 3\n").unwrap();
        assert!(matches!(build_pair(l.clone(), far.clone(), 0), Err(Error::Geometry(_))));
        let opts = PairOptions {
            max_radial_mismatch: None,
            ..PairOptions::default()
        };
        assert!(build_pair_with(l, far, 0, &opts).is_ok());
    }

    #[test]
    fn centering_moves_both_structures() {
        let l = parse_xyz("2\n\nN 1 1 1\nH 1 1 2\n").unwrap();
        let r = parse_xyz("2\n\nN -2 0 0\nH -2 0 -1\n").unwrap();
        let g = build_pair(l, r, 0).unwrap();
        let d = mass_weighted_displacement(&g);
        let m = g.left()[1].mass;
        assert!((d[2] - 2.0 * m * ANGSTROM_CM).abs() < 1e-20);
    }

    #[test]
    fn single_displaced_hydrogen() {
        // fixed carbon as the center, hydrogen moved by 1 Å along z
        let l = vec![
            AtomSite::new("C", [0.0; 3]).unwrap(),
            AtomSite::new("H", [0.0, 0.0, ANGSTROM_CM]).unwrap(),
        ];
        let r = vec![
            AtomSite::new("C", [0.0; 3]).unwrap(),
            AtomSite::new("H", [0.0; 3]).unwrap(),
        ];
        let opts = PairOptions {
            max_radial_mismatch: None,
            ..PairOptions::default()
        };
        let g = build_pair_with(l, r, 0, &opts).unwrap();
        let d = mass_weighted_displacement(&g);
        assert_eq!(d[0], 0.0);
        assert!((d[2] - 1.007_825_03e-8).abs() < 1e-20);
    }

    #[test]
    fn opposite_equal_displacements_cancel() {
        let mk = |z: f64| -> Vec<AtomSite> {
            vec![
                AtomSite::new("C", [0.0; 3]).unwrap(),
                AtomSite::new("Cl", [1e-8, 0.0, z]).unwrap(),
                AtomSite::new("Cl", [-1e-8, 0.0, -z]).unwrap(),
            ]
        };
        let g = build_pair(mk(0.3e-8), mk(-0.3e-8), 0).unwrap();
        assert_eq!(g.n_superposed(), 2);
        let d = mass_weighted_displacement(&g);
        assert!(norm_sqr(&d).sqrt() < 1e-24);
    }

    #[test]
    fn nucleon_expansion_counts() {
        let c = vec![AtomSite::new("C", [0.0; 3]).unwrap()];
        let g = build_pair(c.clone(), c, 0).unwrap();
        let cloud = nucleon_expand(&g);
        assert_eq!(cloud.len(), 12);
        assert!(cloud.weights().iter().all(|&w| w == 1.0));

        let g = ammonia();
        let cloud = nucleon_expand(&g);
        assert_eq!(cloud.len(), 17);
        assert_eq!(cloud.len(), g.nucleon_count());
        let total: f64 = cloud.weights().iter().sum();
        let mass: f64 = g.left().iter().map(|s| s.mass).sum();
        assert!((total - mass).abs() < 1e-12);

        let empty = build_pair(Vec::new(), Vec::new(), 0).unwrap();
        assert!(nucleon_expand(&empty).is_empty());
    }

    #[test]
    fn cloud_rejects_mismatched_counts() {
        assert!(NucleonCloud::unit(vec![[0.0; 3]], vec![]).is_err());
    }

    #[test]
    fn fixtures_parse() {
        for f in FIXTURES {
            let g = f.geometry().unwrap();
            assert!(g.n_superposed() >= 1, "{}", f.name);
        }
        assert_eq!(Fixture::find("yxxy").unwrap().geometry().unwrap().n_superposed(), 1);
    }

    proptest! {
        #[test]
        fn xyz_round_trip(coords in proptest::collection::vec((-50.0f64..50.0, -50.0f64..50.0, -50.0f64..50.0), 1..12)) {
            let labels = ["H", "C", "N", "O", "D", "13C", "Cl"];
            let sites: Vec<AtomSite> = coords
                .iter()
                .enumerate()
                .map(|(i, &(x, y, z))| AtomSite::new(labels[i % labels.len()], [x * 1e-8, y * 1e-8, z * 1e-8]).unwrap())
                .collect();
            let text = write_xyz(&sites, "round trip");
            let back = parse_xyz(&text).unwrap();
            prop_assert_eq!(back.len(), sites.len());
            for (a, b) in sites.iter().zip(&back) {
                prop_assert_eq!(&a.label, &b.label);
                prop_assert_eq!(a.mass, b.mass);
                for k in 0..3 {
                    prop_assert!((a.position[k] - b.position[k]).abs() / ANGSTROM_CM < 1e-6);
                }
            }
        }
    }
}
