//! Information-theoretic primitives: entropy, iterated logarithms, Kraft
//! sums, Shannon–Fano codebooks and the Elias-omega identifier code.
//!
//! Everything here is a pure function of its inputs.

mod codebook;
mod distribution;
mod omega;

pub use codebook::{kraft_sum, shannon_fano_codebook, Codebook, Codeword, ShannonFanoCode};
pub use distribution::{entropy, FiniteDistribution, PROBABILITY_TOLERANCE};
pub use omega::{omega_codeword, omega_decode, omega_decode_all, omega_length};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CodingError {
    #[error("argument must be a positive integer, got 0")]
    ZeroArgument,
    #[error("distribution is empty")]
    EmptyDistribution,
    #[error("weight {index} is invalid: {weight}")]
    InvalidWeight { index: usize, weight: f64 },
    #[error("weights sum to {sum}, expected 1 within {tolerance}")]
    NotNormalized { sum: f64, tolerance: f64 },
    #[error("outcome {0} has zero probability and no codeword")]
    NoCodeword(usize),
    #[error("outcome {0} is outside the distribution support")]
    OutOfRange(usize),
    #[error("codeword {0} is empty")]
    EmptyCodeword(usize),
    #[error("codeword {earlier} is a prefix of codeword {later}")]
    NotPrefixFree { earlier: usize, later: usize },
    #[error("codeword lengths decrease at rank {0}")]
    LengthsDecrease(usize),
    #[error("Kraft sum exceeds 1")]
    KraftViolated,
    #[error("bit stream ended inside a codeword at bit {0}")]
    TruncatedCodeword(usize),
    #[error("decoded value overflows 64 bits at bit {0}")]
    Overflow(usize),
}

/// Iterated-logarithm sum `log n + log log n + ...` (base 2), keeping only
/// the strictly positive terms.
///
/// This is the minimum identifier length, up to lower-order terms, that a
/// uniquely decodable code can assign to the `n`th component.
pub fn log_plus(n: u64) -> Result<f64, CodingError> {
    if n == 0 {
        return Err(CodingError::ZeroArgument);
    }
    Ok(log_plus_f64(n as f64))
}

pub(crate) fn log_plus_f64(x: f64) -> f64 {
    let mut total = 0.0;
    let mut term = x.log2();
    while term > 0.0 {
        total += term;
        term = term.log2();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_plus_small_values() {
        assert_eq!(log_plus(1).unwrap(), 0.0);
        assert_eq!(log_plus(2).unwrap(), 1.0);
        assert_eq!(log_plus(16).unwrap(), 7.0);
        assert_eq!(log_plus(0), Err(CodingError::ZeroArgument));
    }

    #[test]
    fn log_plus_256() {
        // 8 + 3 + log2 3 + log2 log2 3; the next term is negative.
        let l3 = 3f64.log2();
        let expected = 8.0 + 3.0 + l3 + l3.log2();
        assert!((log_plus(256).unwrap() - expected).abs() < 1e-12);
        assert!((log_plus(256).unwrap() - 13.249).abs() < 1e-3);
    }

    #[test]
    fn log_plus_dominates_log2() {
        let mut prev = 0.0;
        for n in 2..5000u64 {
            let v = log_plus(n).unwrap();
            assert!(v >= (n as f64).log2());
            assert!(v >= prev, "not monotone at {n}");
            prev = v;
        }
    }
}
