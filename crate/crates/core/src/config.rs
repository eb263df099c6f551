//! TOML description of a finite affine torus action.  A config names
//! the torus dimension and a list of diagonal generators, each with a
//! sign vector and a shift vector of exact rationals written as
//! strings (`"0"`, `"1/2"`, ...).  The built-in preset reproduces the
//! order-8 reflection group used throughout the suite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, rat_int};
use crate::torus::{AffineTorusMap, FiniteActionGroup};

/// One diagonal generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub name: String,
    pub signs: Vec<i64>,
    #[serde(default)]
    pub shift: Vec<String>,
}

/// A group description as read from TOML.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupConfig {
    pub dimension: usize,
    pub generators: Vec<GeneratorConfig>,
}

/// Parse a TOML group description.
pub fn parse_group_config(text: &str) -> Result<GroupConfig> {
    toml::from_str(text).map_err(|e| Error::Config(format!("invalid group config: {e}")))
}

/// Render a group description back to TOML.
pub fn group_config_to_toml(config: &GroupConfig) -> Result<String> {
    toml::to_string_pretty(config)
        .map_err(|e| Error::Config(format!("could not serialize group config: {e}")))
}

/// Build the generated group from a config.
pub fn group_from_config(config: &GroupConfig) -> Result<FiniteActionGroup> {
    if config.dimension == 0 {
        return Err(Error::Config("dimension must be positive".to_string()));
    }
    if config.generators.is_empty() {
        return Err(Error::Config("at least one generator is required".to_string()));
    }
    let mut generators = Vec::new();
    for gen in &config.generators {
        if gen.signs.len() != config.dimension {
            return Err(Error::Config(format!(
                "generator '{}' has {} signs, expected {}",
                gen.name,
                gen.signs.len(),
                config.dimension
            )));
        }
        if gen.signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::Config(format!(
                "generator '{}' has a sign entry outside {{1, -1}}",
                gen.name
            )));
        }
        let shift = if gen.shift.is_empty() {
            vec![rat_int(0); config.dimension]
        } else {
            if gen.shift.len() != config.dimension {
                return Err(Error::Config(format!(
                    "generator '{}' has {} shift entries, expected {}",
                    gen.name,
                    gen.shift.len(),
                    config.dimension
                )));
            }
            gen.shift
                .iter()
                .map(|s| {
                    parse_rational(s).map_err(|e| {
                        Error::Config(format!(
                            "generator '{}' has an unreadable shift entry '{s}': {e}",
                            gen.name
                        ))
                    })
                })
                .collect::<Result<Vec<_>>>()?
        };
        generators.push(AffineTorusMap::diagonal(&gen.name, &gen.signs, shift)?);
    }
    FiniteActionGroup::generate(generators)
}

/// The built-in preset as a config value.
pub fn builtin_group_config() -> GroupConfig {
    GroupConfig {
        dimension: 7,
        generators: vec![
            GeneratorConfig {
                name: "alpha".to_string(),
                signs: vec![1, 1, 1, -1, -1, -1, -1],
                shift: Vec::new(),
            },
            GeneratorConfig {
                name: "beta".to_string(),
                signs: vec![1, -1, -1, 1, 1, -1, -1],
                shift: ["0", "0", "0", "0", "0", "1/2", "0"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            },
            GeneratorConfig {
                name: "gamma".to_string(),
                signs: vec![-1, 1, -1, 1, -1, 1, -1],
                shift: ["0", "0", "0", "0", "1/2", "0", "1/2"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
            },
        ],
    }
}
