use super::CodingError;

/// Absolute tolerance applied when checking that weights sum to one.
pub const PROBABILITY_TOLERANCE: f64 = 1e-9;

/// A probability distribution over outcomes `0..len`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDistribution {
    weights: Vec<f64>,
}

impl FiniteDistribution {
    /// Validates `weights` as a probability vector.
    pub fn new(weights: Vec<f64>) -> Result<Self, CodingError> {
        if weights.is_empty() {
            return Err(CodingError::EmptyDistribution);
        }
        for (index, &weight) in weights.iter().enumerate() {
            if !weight.is_finite() || !(0.0..=1.0).contains(&weight) {
                return Err(CodingError::InvalidWeight { index, weight });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > PROBABILITY_TOLERANCE {
            return Err(CodingError::NotNormalized {
                sum,
                tolerance: PROBABILITY_TOLERANCE,
            });
        }
        Ok(Self { weights })
    }

    /// Normalizes nonnegative, not-all-zero masses into a distribution.
    pub fn from_masses(masses: &[f64]) -> Result<Self, CodingError> {
        if masses.is_empty() {
            return Err(CodingError::EmptyDistribution);
        }
        for (index, &weight) in masses.iter().enumerate() {
            if !weight.is_finite() || weight < 0.0 {
                return Err(CodingError::InvalidWeight { index, weight });
            }
        }
        let total: f64 = masses.iter().sum();
        if total <= 0.0 {
            return Err(CodingError::NotNormalized {
                sum: total,
                tolerance: PROBABILITY_TOLERANCE,
            });
        }
        Self::new(masses.iter().map(|m| m / total).collect())
    }

    pub fn uniform(len: usize) -> Result<Self, CodingError> {
        if len == 0 {
            return Err(CodingError::EmptyDistribution);
        }
        Ok(Self {
            weights: vec![1.0 / len as f64; len],
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Number of outcomes with positive probability.
    pub fn support_size(&self) -> usize {
        self.weights.iter().filter(|&&w| w > 0.0).count()
    }
}

/// Shannon entropy in bits, with `0 log 0 = 0`.
pub fn entropy(d: &FiniteDistribution) -> f64 {
    d.weights
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}
