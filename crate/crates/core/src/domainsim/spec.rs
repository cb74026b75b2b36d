use serde::{Deserialize, Serialize};

use super::SimError;

/// Component body sizes: one size for every rank, or one per rank.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BodySizes {
    Fixed(u32),
    PerRank(Vec<u32>),
}

/// Parameters of a synthetic problem domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainSpec {
    /// Fraction of program tokens that are fresh random bits; the planted
    /// entropy parameter.
    pub target_h: f64,
    pub alphabet_size: usize,
    /// Component `n` is drawn with weight `n^(−zipf_exponent)`.
    pub zipf_exponent: f64,
    pub body_size_bits: BodySizes,
    pub seed: u64,
}

impl DomainSpec {
    pub fn validate(&self) -> Result<(), SimError> {
        if !(0.0..=1.0).contains(&self.target_h) {
            return Err(SimError::Config(format!(
                "target_h must lie in [0, 1], got {}",
                self.target_h
            )));
        }
        if self.alphabet_size == 0 {
            return Err(SimError::Config("alphabet_size must be at least 1".into()));
        }
        if !(self.zipf_exponent.is_finite() && self.zipf_exponent > 0.0) {
            return Err(SimError::Config(format!(
                "zipf_exponent must be positive, got {}",
                self.zipf_exponent
            )));
        }
        match &self.body_size_bits {
            BodySizes::Fixed(0) => {
                return Err(SimError::Config("body_size_bits must be at least 1".into()))
            }
            BodySizes::Fixed(_) => {}
            BodySizes::PerRank(sizes) => {
                if sizes.len() != self.alphabet_size {
                    return Err(SimError::Config(format!(
                        "body_size_bits lists {} sizes for {} components",
                        sizes.len(),
                        self.alphabet_size
                    )));
                }
                if sizes.contains(&0) {
                    return Err(SimError::Config("body_size_bits must be at least 1".into()));
                }
            }
        }
        Ok(())
    }

    /// Body size of `rank` (1-based).
    pub fn body_size(&self, rank: usize) -> u32 {
        match &self.body_size_bits {
            BodySizes::Fixed(size) => *size,
            BodySizes::PerRank(sizes) => sizes[rank - 1],
        }
    }

    pub fn max_body_size(&self) -> u32 {
        (1..=self.alphabet_size)
            .map(|r| self.body_size(r))
            .max()
            .unwrap_or(1)
    }

    /// Unnormalized Zipf weights `n^(−a)` for ranks `1..=alphabet_size`.
    pub fn zipf_weights(&self) -> Vec<f64> {
        (1..=self.alphabet_size)
            .map(|n| (n as f64).powf(-self.zipf_exponent))
            .collect()
    }

    /// Size of one custom-code token: the Zipf-weighted mean body size,
    /// so that the planted fraction of tokens is also the fraction of bits.
    pub fn custom_block_bits(&self) -> u32 {
        match &self.body_size_bits {
            BodySizes::Fixed(size) => *size,
            BodySizes::PerRank(sizes) => {
                let weights = self.zipf_weights();
                let total: f64 = weights.iter().sum();
                let mean: f64 = weights
                    .iter()
                    .zip(sizes)
                    .map(|(w, &b)| w * f64::from(b))
                    .sum::<f64>()
                    / total;
                (mean.round() as u32).max(1)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> DomainSpec {
        DomainSpec {
            target_h: 0.5,
            alphabet_size: 3,
            zipf_exponent: 1.0,
            body_size_bits: BodySizes::PerRank(vec![10, 20, 40]),
            seed: 1,
        }
    }

    #[test]
    fn custom_block_is_weighted_mean() {
        // weights 1, 1/2, 1/3 -> (10 + 10 + 13.33) / 1.8333
        assert_eq!(spec().custom_block_bits(), 18);
        assert_eq!(spec().max_body_size(), 40);
    }

    #[test]
    fn validation_errors() {
        let mut s = spec();
        s.target_h = 1.5;
        assert!(s.validate().is_err());
        let mut s = spec();
        s.body_size_bits = BodySizes::PerRank(vec![1, 2]);
        assert!(s.validate().is_err());
        let mut s = spec();
        s.zipf_exponent = 0.0;
        assert!(s.validate().is_err());
        let mut s = spec();
        s.alphabet_size = 0;
        assert!(s.validate().is_err());
        assert!(spec().validate().is_ok());
    }
}
