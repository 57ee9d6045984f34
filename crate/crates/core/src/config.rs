//! Plain-text `key = value` defaults.
//!
//! The shipped file is compiled in; a user file is layered on top of it, so
//! it only needs the keys it changes. Relative geometry paths resolve against
//! the directory of the file that set them.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::decoherence::{CollisionalEnvironment, NeutrinoMedia, ZetaMeasurement, thermal_speed};
use crate::error::{Error, Result};
use crate::geometry::{build_pair, parse_xyz, EnantiomerGeometry, Fixture};
use crate::rates::{DoubleWellSpec, MesonSpec};
use crate::units::CslParams;

/// Environment variable naming an alternative defaults file.
pub const DEFAULTS_ENV: &str = "CSLOSC_DEFAULTS";

pub const BUILTIN_DEFAULTS: &str = include_str!("../data/defaults.conf");

/// Meson labels in table order; any further `meson.<name>.delta_m` keys follow alphabetically.
const MESON_ORDER: &[&str] = &["K", "B", "Bs", "D"];

#[derive(Clone, Debug)]
struct Entry {
    value: String,
    base_dir: Option<PathBuf>,
}

#[derive(Clone, Debug)]
pub struct Defaults {
    entries: BTreeMap<String, Entry>,
}

fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: i + 1,
            message: format!("expected `key = value`, got `{line}`"),
        })?;
        let (key, value) = (key.trim(), value.trim());
        if key.is_empty() || value.is_empty() {
            return Err(Error::Parse {
                line: i + 1,
                message: format!("empty key or value in `{line}`"),
            });
        }
        out.push((key.to_string(), value.to_string()));
    }
    Ok(out)
}

impl Defaults {
    pub fn builtin() -> Self {
        let mut d = Defaults {
            entries: BTreeMap::new(),
        };
        d.merge_text(BUILTIN_DEFAULTS, None)
            .expect("shipped defaults parse");
        d
    }

    /// Layers `text` over the current values.
    pub fn merge_text(&mut self, text: &str, base_dir: Option<&Path>) -> Result<()> {
        for (key, value) in parse_pairs(text)? {
            self.entries.insert(
                key,
                Entry {
                    value,
                    base_dir: base_dir.map(Path::to_path_buf),
                },
            );
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut d = Self::builtin();
        d.merge_text(&text, path.parent())
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Ok(d)
    }

    /// Builtin values, overlaid by `path` or else by the file named in `CSLOSC_DEFAULTS`.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            Some(p) => Self::from_file(p),
            None => match std::env::var_os(DEFAULTS_ENV) {
                Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
                _ => Ok(Self::builtin()),
            },
        }
    }

    pub fn set(&mut self, key: &str, value: &str) {
        self.entries.insert(
            key.to_string(),
            Entry {
                value: value.to_string(),
                base_dir: None,
            },
        );
    }

    pub fn get_str(&self, key: &str) -> Result<&str> {
        self.entries
            .get(key)
            .map(|e| e.value.as_str())
            .ok_or_else(|| Error::Config(format!("missing key `{key}`")))
    }

    pub fn get_f64(&self, key: &str) -> Result<f64> {
        let raw = self.get_str(key)?;
        raw.parse::<f64>()
            .map_err(|_| Error::Config(format!("`{key}` = `{raw}` is not a number")))
    }

    fn path(&self, key: &str) -> Result<PathBuf> {
        let entry = self
            .entries
            .get(key)
            .ok_or_else(|| Error::Config(format!("missing key `{key}`")))?;
        let p = PathBuf::from(&entry.value);
        Ok(match (&entry.base_dir, p.is_relative()) {
            (Some(dir), true) => dir.join(p),
            _ => p,
        })
    }

    pub fn csl(&self) -> Result<CslParams> {
        CslParams::new(
            self.get_f64("csl.gamma")?,
            self.get_f64("csl.r_c")?,
            self.get_f64("csl.m0")?,
        )
    }

    pub fn neutrino_media(&self) -> Result<NeutrinoMedia> {
        Ok(NeutrinoMedia {
            outer_space: self.get_f64("neutrino.medium.outer_space")?,
            atmosphere: self.get_f64("neutrino.medium.atmosphere")?,
            atmosphere_time: self.get_f64("neutrino.atmosphere_time")?,
        })
    }

    /// Splitting used for the damping-bound coefficient, eV².
    pub fn bound_delta_m2(&self) -> Result<f64> {
        self.get_f64("neutrino.delta_m2.bound")
    }

    /// (energy eV, flight time s) of a named neutrino source.
    pub fn neutrino_source(&self, name: &str) -> Result<(f64, f64)> {
        Ok((
            self.get_f64(&format!("neutrino.{name}.energy"))?,
            self.get_f64(&format!("neutrino.{name}.time"))?,
        ))
    }

    pub fn meson(&self, name: &str) -> Result<MesonSpec> {
        MesonSpec::from_mev(name, self.get_f64(&format!("meson.{name}.delta_m"))?)
    }

    pub fn mesons(&self) -> Result<Vec<MesonSpec>> {
        let mut names: Vec<String> = MESON_ORDER
            .iter()
            .filter(|n| self.entries.contains_key(&format!("meson.{n}.delta_m")))
            .map(|n| n.to_string())
            .collect();
        for key in self.entries.keys() {
            if let Some(name) = key.strip_prefix("meson.").and_then(|k| k.strip_suffix(".delta_m")) {
                if !names.iter().any(|n| n == name) {
                    names.push(name.to_string());
                }
            }
        }
        names.iter().map(|n| self.meson(n)).collect()
    }

    pub fn zeta(&self) -> Result<ZetaMeasurement> {
        let zm = ZetaMeasurement {
            zeta_mean: self.get_f64("zeta.mean")?,
            sigma_stat: self.get_f64("zeta.sigma_stat")?,
            sigma_syst: self.get_f64("zeta.sigma_syst")?,
            confidence_level: self.get_f64("zeta.confidence_level")?,
            timescale: self.get_f64("zeta.timescale")?,
        };
        Ok(zm)
    }

    /// Collisional bath at the named density (`uhv` or `cryogenic`) for both ends of the
    /// cross-section band.
    pub fn chiral_environments(&self, density: &str) -> Result<(CollisionalEnvironment, CollisionalEnvironment)> {
        let n = self.get_f64(&format!("chiral.density.{density}"))?;
        let v = thermal_speed(self.get_f64("chiral.temperature")?, self.get_f64("chiral.gas_mass")?)?;
        Ok((
            CollisionalEnvironment::new(n, v, self.get_f64("chiral.cross_section.min")?)?,
            CollisionalEnvironment::new(n, v, self.get_f64("chiral.cross_section.max")?)?,
        ))
    }

    pub fn doublewell(&self, name: &str) -> Result<DoubleWellSpec> {
        DoubleWellSpec::from_angstrom(
            self.get_f64(&format!("doublewell.{name}.mu"))?,
            self.get_f64(&format!("doublewell.{name}.q0"))?,
            self.get_f64(&format!("doublewell.{name}.omega_x"))?,
        )
    }

    /// (resolution, mode frequency Hz, effective double well) of the spectroscopy proposal.
    pub fn spectroscopy(&self) -> Result<(f64, f64, DoubleWellSpec)> {
        let spec = DoubleWellSpec::from_angstrom(
            self.get_f64("spectroscopy.mu")?,
            self.get_f64("spectroscopy.q0")?,
            0.0,
        )?;
        Ok((
            self.get_f64("spectroscopy.resolution")?,
            self.get_f64("spectroscopy.mode_frequency")?,
            spec,
        ))
    }

    /// Geometry named by `chiral.fixture`: a built-in fixture name, or `<left.xyz>,<right.xyz>[,center]`.
    pub fn chiral_geometry(&self) -> Result<EnantiomerGeometry> {
        let spec = self.get_str("chiral.fixture")?;
        if let Some(f) = Fixture::find(spec) {
            return f.geometry();
        }
        let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
        let base = self.entries.get("chiral.fixture").and_then(|e| e.base_dir.clone());
        let resolve = |p: &str| match (&base, Path::new(p).is_relative()) {
            (Some(dir), true) => dir.join(p),
            _ => PathBuf::from(p),
        };
        match parts.as_slice() {
            [l, r] => load_pair(&resolve(l), &resolve(r), 0),
            [l, r, c] => {
                let center = c
                    .parse()
                    .map_err(|_| Error::Config(format!("bad center index `{c}` in chiral.fixture")))?;
                load_pair(&resolve(l), &resolve(r), center)
            }
            _ => Err(Error::Config(format!("unknown chiral fixture `{spec}`"))),
        }
    }

    /// Optional externally supplied geometries, keyed `chiral.geometry.<label>.{left,right,center}`.
    pub fn external_geometries(&self) -> Vec<(String, Result<EnantiomerGeometry>)> {
        let labels: Vec<String> = self
            .entries
            .keys()
            .filter_map(|k| k.strip_prefix("chiral.geometry.")?.strip_suffix(".left"))
            .map(str::to_string)
            .collect();
        labels
            .into_iter()
            .map(|label| {
                let prefix = format!("chiral.geometry.{label}");
                let geom = (|| {
                    let center = match self.get_str(&format!("{prefix}.center")) {
                        Ok(c) => c
                            .parse()
                            .map_err(|_| Error::Config(format!("bad center index for {label}")))?,
                        Err(_) => 0,
                    };
                    load_pair(
                        &self.path(&format!("{prefix}.left"))?,
                        &self.path(&format!("{prefix}.right"))?,
                        center,
                    )
                })();
                (label, geom)
            })
            .collect()
    }
}

impl Default for Defaults {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Reads and pairs two XYZ files, tagging errors with the offending file.
pub fn load_pair(left: &Path, right: &Path, center: usize) -> Result<EnantiomerGeometry> {
    let read = |p: &Path| -> Result<_> {
        let text = std::fs::read_to_string(p)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", p.display())))?;
        parse_xyz(&text).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line,
                message: format!("{}: {message}", p.display()),
            },
            other => other,
        })
    };
    build_pair(read(left)?, read(right)?, center)
}
