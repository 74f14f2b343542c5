//! The JSON configuration file.
//!
//! ```json
//! {
//!   "coefficients": { "free_rank": 1, "torsion": [2] },
//!   "intersection": {
//!     "mode": "symbolic",
//!     "half_class": { "circle": "1/4", "g": [0, 0] },
//!     "products": { "D1.D2": { "degree": 2, "circle": "0", "g": [0, 0] } }
//!   },
//!   "seed": 7
//! }
//! ```
//!
//! Every field is optional. The default coefficient group is trivial, the default table is
//! symbolic with half-class `(1/4, e)`, and the default seed is 0.

use std::collections::BTreeMap;
use std::sync::Arc;

use cobk_core::abelian::{parse_rational, CircleValue, FGAbelianGroup, GroupElement};
use cobk_core::chow_k0::{default_half_class, ChowError, EllipticPoint, IntersectionTable, TableMode, ZeroCycle};
use num_bigint::BigInt;
use serde::Deserialize;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub coefficients: Option<Coefficients>,
    #[serde(default)]
    pub intersection: Option<IntersectionConfig>,
    #[serde(default)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Coefficients {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    #[serde(default = "zero_string")]
    pub circle: String,
    #[serde(default)]
    pub g: Option<Vec<i64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductConfig {
    #[serde(default)]
    pub degree: i64,
    #[serde(default = "zero_string")]
    pub circle: String,
    #[serde(default)]
    pub g: Option<Vec<i64>>,
}

fn zero_string() -> String {
    "0".to_string()
}

#[derive(Debug, Clone, Copy, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModeConfig {
    #[default]
    Symbolic,
    Pinned,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionConfig {
    #[serde(default)]
    pub mode: ModeConfig,
    #[serde(default)]
    pub half_class: Option<PointConfig>,
    #[serde(default)]
    pub products: BTreeMap<String, ProductConfig>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("config is not valid JSON: {0}")]
    Syntax(String),
    #[error("invalid config: {0}")]
    Invalid(String),
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Config {
    pub group: Arc<FGAbelianGroup>,
    /// Whether the file named a coefficient group.
    pub explicit_group: bool,
    pub table: IntersectionTable,
    pub seed: u64,
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

fn element(g: &Arc<FGAbelianGroup>, coords: &Option<Vec<i64>>) -> Result<GroupElement, ConfigError> {
    match coords {
        None => Ok(g.identity()),
        Some(c) => g.element_i64(c).map_err(|e| invalid(e.to_string())),
    }
}

fn circle(s: &str) -> Result<CircleValue, ConfigError> {
    parse_rational(s).map(CircleValue::new).ok_or_else(|| invalid(format!("'{s}' is not a rational number")))
}

fn chow(e: ChowError) -> ConfigError {
    invalid(e.to_string())
}

fn pair_index(name: &str) -> Result<(usize, usize), ConfigError> {
    let bad = || invalid(format!("'{name}' is not a product name like D1.D2"));
    let (a, b) = name.split_once('.').ok_or_else(bad)?;
    let index = |s: &str| -> Result<usize, ConfigError> {
        let i: usize = s.strip_prefix('D').and_then(|d| d.parse().ok()).ok_or_else(bad)?;
        i.checked_sub(1).ok_or_else(bad)
    };
    Ok((index(a)?, index(b)?))
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let file: ConfigFile = serde_json::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn from_file(file: &ConfigFile) -> Result<Self, ConfigError> {
        let c = file.coefficients.clone().unwrap_or_default();
        let group = Arc::new(FGAbelianGroup::from_i64(c.free_rank, &c.torsion).map_err(|e| invalid(e.to_string()))?);
        let ic = file.intersection.clone().unwrap_or_default();
        let half_class = match &ic.half_class {
            None => default_half_class(&group),
            Some(p) => EllipticPoint::new(circle(&p.circle)?, element(&group, &p.g)?),
        };
        let mode = match ic.mode {
            ModeConfig::Symbolic => TableMode::Symbolic,
            ModeConfig::Pinned => TableMode::PinnedOnly,
        };
        let mut table = IntersectionTable::new(half_class, mode).map_err(chow)?;
        for (name, p) in &ic.products {
            let (i, j) = pair_index(name)?;
            let value = ZeroCycle::new(BigInt::from(p.degree), EllipticPoint::new(circle(&p.circle)?, element(&group, &p.g)?));
            table = table.with_product(i, j, value).map_err(chow)?;
        }
        Ok(Config { group, explicit_group: file.coefficients.is_some(), table, seed: file.seed.unwrap_or(0) })
    }

    pub fn default_config() -> Self {
        Self::from_file(&ConfigFile::default()).expect("defaults are valid")
    }
}
