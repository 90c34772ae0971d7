//! Run configuration, read from a TOML file.
//!
//! ```toml
//! r = 1
//! base_field = "totally_real"   # totally_real | imaginary_cm | other
//! prime_bound = 100000          # optional, default 100000
//! tolerance = 0.25              # optional
//! seed = 0                      # optional, synthetic runs only
//! jobs = 0                      # optional, 0 = all cores
//! cache_dir = "cache"           # optional, relative to this file
//! output = "text"               # optional: text | csv | lines
//!
//! [[factor]]
//! id = "E"
//! kind = "elliptic"             # elliptic | surface
//! exponent = 2
//! curve = [0, 0, 1, -1, 0]      # or: euler_file = "E.csv", or: synthetic = true
//!
//! [[class]]                     # optional; default is one class per factor
//! members = ["E"]
//! kind = "non_cm"               # non_cm | cm | generic_surface
//! # field_in_base = false       # cm only
//! # cm_field = "Q(sqrt(-3))"    # cm only
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::galois::{BaseField, ClassKind, GaloisType, IsogenyClass};
use crate::lfunc::DEFAULT_TOLERANCE;
use crate::motive::{FactorKind, FactorSpec, ProductSpec};

pub const DEFAULT_PRIME_BOUND: u64 = 100_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Lines,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
            OutputFormat::Lines => "lines",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "lines" => Ok(OutputFormat::Lines),
            other => Err(Error::Config(format!(
                "unknown output format `{other}` (expected text, csv or lines)"
            ))),
        }
    }
}

/// Where a factor's Frobenius data comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DataSource {
    Curve([i64; 5]),
    EulerFile(PathBuf),
    Synthetic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    pub id: String,
    pub kind: FactorKind,
    pub exponent: u32,
    pub source: Option<DataSource>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub r: u32,
    pub base_field: BaseField,
    pub prime_bound: u64,
    pub tolerance: f64,
    pub seed: u64,
    pub jobs: usize,
    pub cache_dir: Option<PathBuf>,
    pub output: OutputFormat,
    pub factors: Vec<FactorConfig>,
    pub classes: Vec<IsogenyClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    r: u32,
    base_field: BaseField,
    #[serde(default = "default_bound")]
    prime_bound: u64,
    #[serde(default = "default_tolerance")]
    tolerance: f64,
    #[serde(default)]
    seed: u64,
    #[serde(default)]
    jobs: usize,
    cache_dir: Option<PathBuf>,
    #[serde(default)]
    output: OutputFormat,
    #[serde(rename = "factor", default)]
    factors: Vec<RawFactor>,
    #[serde(rename = "class", default)]
    classes: Vec<RawClass>,
}

fn default_bound() -> u64 {
    DEFAULT_PRIME_BOUND
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

fn default_exponent() -> u32 {
    1
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactor {
    id: String,
    kind: FactorKind,
    #[serde(default = "default_exponent")]
    exponent: u32,
    curve: Option<Vec<i64>>,
    euler_file: Option<PathBuf>,
    #[serde(default)]
    synthetic: bool,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum RawClassKind {
    NonCm,
    Cm,
    GenericSurface,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    members: Vec<String>,
    kind: RawClassKind,
    field_in_base: Option<bool>,
    cm_field: Option<String>,
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl RawFactor {
    fn into_factor(self, base_dir: &Path) -> Result<FactorConfig> {
        let id = self.id;
        let given =
            self.curve.is_some() as u8 + self.euler_file.is_some() as u8 + self.synthetic as u8;
        if given > 1 {
            return Err(config_err(format!(
                "factor `{id}`: give only one of curve, euler_file, synthetic"
            )));
        }
        let source = if let Some(c) = self.curve {
            if self.kind != FactorKind::Elliptic {
                return Err(config_err(format!(
                    "factor `{id}`: curve coefficients need kind = \"elliptic\""
                )));
            }
            let coeffs: [i64; 5] = c.try_into().map_err(|c: Vec<i64>| {
                config_err(format!(
                    "factor `{id}`: curve needs 5 coefficients [a1, a2, a3, a4, a6], got {}",
                    c.len()
                ))
            })?;
            Some(DataSource::Curve(coeffs))
        } else if let Some(f) = self.euler_file {
            Some(DataSource::EulerFile(base_dir.join(f)))
        } else if self.synthetic {
            Some(DataSource::Synthetic)
        } else {
            None
        };
        Ok(FactorConfig {
            id,
            kind: self.kind,
            exponent: self.exponent,
            source,
        })
    }
}

impl RawClass {
    fn into_class(self) -> Result<IsogenyClass> {
        let kind = match self.kind {
            RawClassKind::Cm => ClassKind::Cm {
                field_in_base: self.field_in_base.ok_or_else(|| {
                    config_err(format!("cm class {:?} needs field_in_base", self.members))
                })?,
                cm_field: self.cm_field.unwrap_or_else(|| self.members.join("+")),
            },
            other => {
                if self.field_in_base.is_some() || self.cm_field.is_some() {
                    return Err(config_err(format!(
                        "class {:?}: field_in_base and cm_field apply only to kind = \"cm\"",
                        self.members
                    )));
                }
                match other {
                    RawClassKind::NonCm => ClassKind::NonCm,
                    _ => ClassKind::GenericSurface,
                }
            }
        };
        Ok(IsogenyClass {
            members: self.members,
            kind,
        })
    }
}

impl RunConfig {
    /// Parse a TOML document; relative paths are resolved against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| config_err(e.to_string()))?;
        let factors = raw
            .factors
            .into_iter()
            .map(|f| f.into_factor(base_dir))
            .collect::<Result<Vec<_>>>()?;
        let mut classes = raw
            .classes
            .into_iter()
            .map(RawClass::into_class)
            .collect::<Result<Vec<_>>>()?;
        if classes.is_empty() {
            classes = factors
                .iter()
                .map(|f| IsogenyClass {
                    members: vec![f.id.clone()],
                    kind: match f.kind {
                        FactorKind::Elliptic => ClassKind::NonCm,
                        FactorKind::Surface => ClassKind::GenericSurface,
                    },
                })
                .collect();
        }
        let cfg = RunConfig {
            r: raw.r,
            base_field: raw.base_field,
            prime_bound: raw.prime_bound,
            tolerance: raw.tolerance,
            seed: raw.seed,
            jobs: raw.jobs,
            cache_dir: raw.cache_dir.map(|d| base_dir.join(d)),
            output: raw.output,
            factors,
            classes,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, dir)
    }

    /// Checks that do not need any Euler data. Rerun after overriding fields.
    pub fn validate(&self) -> Result<()> {
        if self.factors.is_empty() {
            return Err(config_err("no [[factor]] entries"));
        }
        let mut ids = BTreeSet::new();
        for f in &self.factors {
            if !ids.insert(f.id.as_str()) {
                return Err(config_err(format!("factor id `{}` appears twice", f.id)));
            }
        }
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(config_err(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.prime_bound < 3 {
            return Err(config_err("prime_bound must be at least 3"));
        }
        let synthetic = self
            .factors
            .iter()
            .filter(|f| f.source == Some(DataSource::Synthetic))
            .count();
        let with_source = self.factors.iter().filter(|f| f.source.is_some()).count();
        if synthetic > 0 && synthetic < with_source {
            return Err(config_err(
                "synthetic and real Euler data cannot be mixed in one run",
            ));
        }
        let spec = self.product_spec()?;
        self.galois_type().resolve(spec.factors())?;
        Ok(())
    }

    pub fn product_spec(&self) -> Result<ProductSpec> {
        let factors = self
            .factors
            .iter()
            .map(|f| FactorSpec {
                id: f.id.clone(),
                kind: f.kind,
                exponent: f.exponent,
            })
            .collect();
        ProductSpec::new(factors, self.r)
    }

    pub fn galois_type(&self) -> GaloisType {
        GaloisType {
            classes: self.classes.clone(),
            base_field: self.base_field,
        }
    }

    pub fn is_synthetic(&self) -> bool {
        self.factors
            .iter()
            .any(|f| f.source == Some(DataSource::Synthetic))
    }

    pub fn factor(&self, id: &str) -> Option<&FactorConfig> {
        self.factors.iter().find(|f| f.id == id)
    }
}
