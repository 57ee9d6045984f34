//! Rate records, the two summary tables and the collapse-vs-decoherence comparison.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::Serialize;

use crate::config::Defaults;
use crate::decoherence::{collisional_rate, meson_decoherence_bound};
use crate::error::{Error, Result};
use crate::rates::{
    bound_from_resolution, chiral_rate_exact_geometry, lambda_upper_bound, meson_rate, neutrino_damping,
    NeutrinoSpec, TwoLevelValidity,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportKind {
    Collapse,
    Decoherence,
    Bound,
}

/// One computed quantity with the inputs that produced it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RateReport {
    pub kind: ReportKind,
    pub system: String,
    pub inputs: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_csl_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_dec_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub damping_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_bound_hz: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validity: Option<TwoLevelValidity>,
}

impl RateReport {
    pub fn new(kind: ReportKind, system: impl Into<String>) -> Self {
        RateReport {
            kind,
            system: system.into(),
            inputs: BTreeMap::new(),
            lambda_csl_hz: None,
            lambda_dec_hz: None,
            damping_factor: None,
            lambda_bound_hz: None,
            validity: None,
        }
    }

    pub fn input(mut self, name: &str, value: f64) -> Self {
        self.inputs.insert(name.to_string(), value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum Tolerance {
    /// computed/published within [1/f, f]
    Factor(f64),
    /// |log10(computed/published)| ≤ d
    Decades(f64),
}

impl Tolerance {
    pub fn accepts(&self, computed: f64, published: f64) -> bool {
        if !(computed > 0.0 && published > 0.0) {
            return computed == published;
        }
        let r = computed / published;
        match *self {
            Tolerance::Factor(f) => r <= f && r >= 1.0 / f,
            Tolerance::Decades(d) => r.log10().abs() <= d,
        }
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Factor(x) => write!(f, "x{x}"),
            Tolerance::Decades(d) => write!(f, "{d} dec"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    /// No computed value (missing input) or nothing to compare against.
    NotComputed,
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RowStatus::Pass => "pass",
            RowStatus::Fail => "FAIL",
            RowStatus::NotComputed => "n/a",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TableRow {
    pub section: String,
    pub system: String,
    pub quantity: String,
    pub computed: Option<f64>,
    pub published: Option<f64>,
    pub tolerance: Tolerance,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl TableRow {
    fn new(section: &str, system: &str, quantity: &str, computed: Option<f64>, published: Option<f64>, tolerance: Tolerance) -> Self {
        let status = match (computed, published) {
            (Some(c), Some(p)) if tolerance.accepts(c, p) => RowStatus::Pass,
            (Some(_), Some(_)) => RowStatus::Fail,
            _ => RowStatus::NotComputed,
        };
        TableRow {
            section: section.into(),
            system: system.into(),
            quantity: quantity.into(),
            computed,
            published,
            tolerance,
            status,
            note: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub title: String,
    pub rows: Vec<TableRow>,
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "-".to_string(), |v| format!("{v:.2e}"))
}

impl Table {
    pub fn find(&self, system: &str) -> Option<&TableRow> {
        self.rows.iter().find(|r| r.system == system)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| r.status == RowStatus::Fail).count()
    }

    /// Columns: section,system,quantity,computed,published,tolerance,status
    pub fn to_csv(&self) -> String {
        let mut out = String::from("section,system,quantity,computed,published,tolerance,status\n");
        for r in &self.rows {
            let num = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:e}"));
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.section,
                r.system,
                r.quantity,
                num(r.computed),
                num(r.published),
                r.tolerance,
                r.status
            )
            .unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_text(&self) -> String {
        let w = self.rows.iter().map(|r| r.system.chars().count()).max().unwrap_or(6).max(6);
        let mut out = format!("{}\n", self.title);
        writeln!(
            out,
            "{:<12} {:<w$} {:<10} {:>10} {:>10} {:>8}  status",
            "section", "system", "quantity", "computed", "published", "tol"
        )
        .unwrap();
        for r in &self.rows {
            write!(
                out,
                "{:<12} {:<w$} {:<10} {:>10} {:>10} {:>8}  {}",
                r.section,
                r.system,
                r.quantity,
                fmt_opt(r.computed),
                fmt_opt(r.published),
                r.tolerance.to_string(),
                r.status
            )
            .unwrap();
            if let Some(n) = &r.note {
                write!(out, "  ({n})").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

const TABLE1_TOL: Tolerance = Tolerance::Factor(3.0);
const TABLE2_TOL: Tolerance = Tolerance::Decades(1.0);

const NEUTRINO_ROWS: &[(&str, &str, f64)] = &[
    ("cosmogenic", "Cosmogenic neutrino", 2e-55),
    ("solar", "Solar neutrino", 4e-45),
    ("laboratory", "Laboratory neutrino", 2e-57),
];

const MESON_ROWS: &[(&str, &str, f64)] = &[
    ("K", "K-meson", 1.5e-38),
    ("B", "B-meson", 1.4e-34),
    ("Bs", "Bs-meson", 1.7e-31),
    ("D", "D-meson", 3.2e-37),
];

/// Sulfoxide rows; computed only when `chiral.geometry.<key>.*` points at geometry files.
const SULFOXIDE_ROWS: &[(&str, &str, f64)] = &[
    ("tolyl", "SOCH3(p-CH3C6H4)", 6.3e-10),
    ("phenyl", "SOCH3(C6H5)", 7.9e-10),
    ("naphthylethyl", "SOCH3(CH2CH2-a-C10H7)", 2.5e-9),
    ("pyrenyl", "SOCH3(1-pyrenyl)", 5e-9),
];

fn neutrino_spec(d: &Defaults, source: &str) -> Result<NeutrinoSpec> {
    let (e, t) = d.neutrino_source(source)?;
    NeutrinoSpec::new(e, t, d.bound_delta_m2()?)
}

fn neutrino_dec_damping(d: &Defaults, source: &str) -> Result<f64> {
    let media = d.neutrino_media()?;
    let (e, t) = d.neutrino_source(source)?;
    media.cumulative_damping(e, t, media.atmosphere_time.min(t))
}

/// Collision-rate band (low, high) for a density label.
fn chiral_dec_band(d: &Defaults, density: &str) -> Result<(f64, f64)> {
    let (lo, hi) = d.chiral_environments(density)?;
    Ok((collisional_rate(&lo), collisional_rate(&hi)))
}

/// Collapse rates, damping factors and decoherence estimates across the three systems.
pub fn table_one(d: &Defaults) -> Result<Table> {
    let csl = d.csl()?;
    let mut rows = Vec::new();
    for &(key, label, published) in NEUTRINO_ROWS {
        let damping = neutrino_damping(&neutrino_spec(d, key)?, &csl);
        rows.push(TableRow::new("neutrinos", label, "lambda*t", Some(damping), Some(published), TABLE1_TOL));
    }
    rows.push(TableRow::new(
        "neutrinos",
        "Decoherence (solar)",
        "lambda*t",
        Some(neutrino_dec_damping(d, "solar")?),
        Some(1e-18),
        TABLE1_TOL,
    ));
    rows.push(TableRow::new(
        "neutrinos",
        "Decoherence (cosmogenic)",
        "lambda*t",
        Some(neutrino_dec_damping(d, "cosmogenic")?),
        Some(1e-5),
        TABLE1_TOL,
    ));
    for &(key, label, published) in MESON_ROWS {
        let rate = meson_rate(&d.meson(key)?, &csl);
        rows.push(TableRow::new("mesons", label, "rate_hz", Some(rate), Some(published), TABLE1_TOL));
    }
    rows.push(
        TableRow::new(
            "mesons",
            "Decoherence bound",
            "rate_hz",
            Some(meson_decoherence_bound(&d.zeta()?)?),
            Some(8e7),
            Tolerance::Decades(1.0),
        )
        .note("zeta timescale not fixed by the data; order of magnitude only"),
    );
    let external: BTreeMap<String, Result<_>> = d.external_geometries().into_iter().collect();
    for &(key, label, published) in SULFOXIDE_ROWS {
        let row = match external.get(key) {
            Some(Ok(geom)) => TableRow::new(
                "chiral",
                label,
                "rate_hz",
                Some(chiral_rate_exact_geometry(geom, &csl)),
                Some(published),
                TABLE1_TOL,
            ),
            Some(Err(e)) => TableRow::new("chiral", label, "rate_hz", None, Some(published), TABLE1_TOL)
                .note(format!("geometry error: {e}")),
            None => TableRow::new("chiral", label, "rate_hz", None, Some(published), TABLE1_TOL)
                .note(format!("needs chiral.geometry.{key}.left/right")),
        };
        rows.push(row);
    }
    let (lo, hi) = chiral_dec_band(d, "cryogenic")?;
    rows.push(TableRow::new("chiral", "Decoherence (low)", "rate_hz", Some(lo), Some(1e-11), TABLE1_TOL));
    rows.push(TableRow::new("chiral", "Decoherence (high)", "rate_hz", Some(hi), Some(1e-9), TABLE1_TOL));
    Ok(Table {
        title: "Table I: CSL collapse and decoherence rates".into(),
        rows,
    })
}

/// Upper bounds on Λ from observed tunnelling splittings.
pub fn table_two(d: &Defaults) -> Result<Table> {
    let csl = d.csl()?;
    let mut rows = Vec::new();
    for (key, label, published) in [
        ("ammonia", "Ammonia", 1e16),
        ("carboxylic_dimer", "Carboxylic acid dimers", 1e8),
        ("ru_d2", "Ru-D2 complex", 1e5),
    ] {
        let bound = lambda_upper_bound(&d.doublewell(key)?, &csl)?;
        rows.push(TableRow::new("tunnelling", label, "bound_hz", Some(bound), Some(published), TABLE2_TOL));
    }
    let (r, omega, spec) = d.spectroscopy()?;
    rows.push(TableRow::new(
        "proposal",
        "High resolution spectroscopy",
        "bound_hz",
        Some(bound_from_resolution(r, omega, &spec, &csl)?),
        Some(1e-5),
        TABLE2_TOL,
    ));
    rows.push(
        TableRow::new("reference", "Matter-wave interference", "bound_hz", None, Some(1e-5), TABLE2_TOL)
            .note("external measurement"),
    );
    rows.push(TableRow::new(
        "reference",
        "CSL value in use",
        "lambda_hz",
        Some(csl.lambda()),
        Some(1e-9),
        TABLE2_TOL,
    ));
    Ok(Table {
        title: "Table II: bounds on the CSL rate from tunnelling".into(),
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// λ_DEC exceeds λ_CSL by more than [`DOMINANCE_FACTOR`] in every case.
    DecoherenceDominates,
    /// Some environment brings λ_DEC to or below λ_CSL.
    CollapseAccessible,
    Inconclusive,
}

/// Margin read as "≫".
pub const DOMINANCE_FACTOR: f64 = 10.0;

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::DecoherenceDominates => "decoherence hides collapse (lambda_dec >> lambda_csl)",
            Verdict::CollapseAccessible => "collapse testable (lambda_dec <= lambda_csl achievable)",
            Verdict::Inconclusive => "inconclusive (rates within a factor of 10)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonEntry {
    pub case: String,
    /// `rate_hz` or `lambda*t`
    pub quantity: String,
    pub csl: f64,
    pub dec_low: f64,
    pub dec_high: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Comparison {
    pub system: String,
    pub entries: Vec<ComparisonEntry>,
    pub verdict: Verdict,
}

impl Comparison {
    fn from_entries(system: &str, entries: Vec<ComparisonEntry>) -> Self {
        let verdict = if entries.iter().any(|e| e.dec_low <= e.csl) {
            Verdict::CollapseAccessible
        } else if entries.iter().all(|e| e.dec_low > DOMINANCE_FACTOR * e.csl) {
            Verdict::DecoherenceDominates
        } else {
            Verdict::Inconclusive
        };
        Comparison {
            system: system.into(),
            entries,
            verdict,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            let dec = if e.dec_low == e.dec_high {
                format!("{:.2e}", e.dec_low)
            } else {
                format!("{:.2e} .. {:.2e}", e.dec_low, e.dec_high)
            };
            writeln!(out, "{} [{}] {}: csl {:.2e}  dec {}", self.system, e.case, e.quantity, e.csl, dec).unwrap();
        }
        writeln!(out, "verdict: {}", self.verdict).unwrap();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serializes")
    }
}

/// λ_CSL against λ_DEC for `neutrino`, `meson` or `chiral` under the given defaults.
pub fn compare(system: &str, d: &Defaults) -> Result<Comparison> {
    let csl = d.csl()?;
    let entry = |case: &str, quantity: &str, c: f64, lo: f64, hi: f64| ComparisonEntry {
        case: case.into(),
        quantity: quantity.into(),
        csl: c,
        dec_low: lo,
        dec_high: hi,
    };
    let entries = match system {
        "neutrino" | "neutrinos" => NEUTRINO_ROWS
            .iter()
            .map(|&(key, _, _)| {
                let c = neutrino_damping(&neutrino_spec(d, key)?, &csl);
                let dec = neutrino_dec_damping(d, key)?;
                Ok(entry(key, "lambda*t", c, dec, dec))
            })
            .collect::<Result<Vec<_>>>()?,
        "meson" | "mesons" => {
            let dec = meson_decoherence_bound(&d.zeta()?)?;
            d.mesons()?
                .iter()
                .map(|m| entry(&m.name, "rate_hz", meson_rate(m, &csl), dec, dec))
                .collect()
        }
        "chiral" => {
            let c = chiral_rate_exact_geometry(&d.chiral_geometry()?, &csl);
            let mut v = Vec::new();
            for density in ["uhv", "cryogenic"] {
                let (lo, hi) = chiral_dec_band(d, density)?;
                v.push(entry(density, "rate_hz", c, lo, hi));
            }
            v
        }
        other => {
            return Err(Error::invalid(
                "system",
                format!("unknown system `{other}` (expected neutrino, meson or chiral)"),
            ))
        }
    };
    Ok(Comparison::from_entries(system, entries))
}
