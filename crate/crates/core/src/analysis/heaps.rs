use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{linear_fit, AnalysisError, FitResult};
use crate::ingest::Corpus;

pub const MIN_HEAPS_OBJECTS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeapsPoint {
    /// Corpus bits examined so far.
    pub bits: u64,
    /// Distinct components seen so far.
    pub distinct: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeapsFit {
    pub seed: u64,
    pub fit: FitResult,
    pub series: Vec<HeapsPoint>,
}

/// Vocabulary growth `distinct ∝ bits^α`, with objects visited in a
/// seeded random order.
///
/// A corpus whose objects all share one component yields `α = 0`; a corpus
/// without any components has no growth curve and is an error.
pub fn fit_heaps(corpus: &Corpus, seed: u64) -> Result<HeapsFit, AnalysisError> {
    if corpus.len() < MIN_HEAPS_OBJECTS {
        return Err(AnalysisError::InsufficientSample {
            needed: MIN_HEAPS_OBJECTS,
            got: corpus.len(),
        });
    }
    if corpus.component_count() == 0 {
        return Err(AnalysisError::UndefinedFit(
            "corpus has no components".into(),
        ));
    }
    let mut order: Vec<usize> = (0..corpus.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut seen: HashSet<&str> = HashSet::new();
    let mut bits = 0u64;
    let mut series = Vec::with_capacity(order.len());
    for i in order {
        let object = &corpus.objects()[i];
        bits += object.size_bits;
        seen.extend(object.refs.keys().map(String::as_str));
        if !seen.is_empty() {
            series.push(HeapsPoint {
                bits,
                distinct: seen.len() as u64,
            });
        }
    }
    let points: Vec<(f64, f64)> = series
        .iter()
        .map(|p| ((p.bits as f64).log2(), (p.distinct as f64).log2()))
        .collect();
    let (slope, intercept, r_squared) = linear_fit(&points)?;
    Ok(HeapsFit {
        seed,
        fit: FitResult {
            exponent: slope,
            log_scale: intercept,
            r_squared,
            n_points: points.len(),
        },
        series,
    })
}
