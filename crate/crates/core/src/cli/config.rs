use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::domainsim::{BodySizes, CompressorConfig, DomainSpec};

/// Simulation experiment, read from a flat TOML document.
///
/// ```toml
/// target_h = 0.5
/// alphabet_size = 1024
/// zipf_exponent = 2.0
/// body_size_bits = 64       # or one size per rank: [64, 64, ...]
/// s = 100000
/// trials = 100
/// seed = 1
/// prefixes = [1, 4, 16, 64, 256]   # optional incompleteness curve
/// literal_block_bits = 16          # optional
/// ```
///
/// Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub target_h: f64,
    pub alphabet_size: usize,
    pub zipf_exponent: f64,
    pub body_size_bits: BodySizes,
    pub s: u64,
    pub trials: usize,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prefixes: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub literal_block_bits: Option<u32>,
}

impl SimulationConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: SimulationConfig =
            toml::from_str(text).map_err(|e| CliError::usage(format!("invalid config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.trials == 0 {
            return Err(CliError::usage(
                "invalid config key `trials`: must be at least 1",
            ));
        }
        if self.s == 0 {
            return Err(CliError::usage("invalid config key `s`: must be positive"));
        }
        if self.literal_block_bits == Some(0) {
            return Err(CliError::usage(
                "invalid config key `literal_block_bits`: must be positive",
            ));
        }
        self.domain()
            .validate()
            .map_err(|e| CliError::usage(e.to_string()))
    }

    pub fn domain(&self) -> DomainSpec {
        DomainSpec {
            target_h: self.target_h,
            alphabet_size: self.alphabet_size,
            zipf_exponent: self.zipf_exponent,
            body_size_bits: self.body_size_bits.clone(),
            seed: self.seed,
        }
    }

    pub fn compressor(&self) -> CompressorConfig {
        match self.literal_block_bits {
            Some(literal_block_bits) => CompressorConfig { literal_block_bits },
            None => CompressorConfig::default(),
        }
    }
}
