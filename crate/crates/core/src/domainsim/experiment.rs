use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    generate_program, CompressionReport, Compressor, CompressorConfig, DomainSpec, Library,
    SimError, SimProgram,
};
use crate::ingest::ObjectRecord;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub index: usize,
    pub seed: u64,
    pub planted_fraction: f64,
    pub program: SimProgram,
    pub report: CompressionReport,
}

/// Per-trial program seeds, derived from `base` on a stream separate from
/// the library's.
pub fn trial_seeds(base: u64, trials: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(base);
    rng.set_stream(1);
    (0..trials).map(|_| rng.next_u64()).collect()
}

/// Generates and compresses `trials` programs of size `s`. Trials run in
/// parallel; the result is ordered by trial index.
pub fn run_trials(
    spec: &DomainSpec,
    library: &Library,
    s: u64,
    trials: usize,
    config: CompressorConfig,
) -> Result<Vec<TrialOutcome>, SimError> {
    let compressor = Compressor::new(library, config);
    trial_seeds(spec.seed, trials)
        .into_par_iter()
        .enumerate()
        .map(|(index, seed)| {
            let program = generate_program(spec, library, s, seed)?;
            let (sim, report) = compressor.compress(&program.bits);
            Ok(TrialOutcome {
                index,
                seed,
                planted_fraction: program.planted_fraction(),
                program: sim,
                report,
            })
        })
        .collect()
}

pub fn mean_ratio(outcomes: &[TrialOutcome]) -> f64 {
    mean(outcomes.iter().map(|o| o.report.ratio))
}

pub fn mean_reuse_proportion(outcomes: &[TrialOutcome]) -> f64 {
    mean(outcomes.iter().map(|o| o.report.reuse_proportion))
}

fn mean(values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    if n == 0 {
        return f64::NAN;
    }
    values.sum::<f64>() / n as f64
}

/// Mean compression ratio against each library prefix.
///
/// Programs are drawn from the full library; trial `i` uses the same
/// program for every prefix size, so the curve compares paired samples.
pub fn incompleteness_curve(
    spec: &DomainSpec,
    prefixes: &[usize],
    s: u64,
    trials: usize,
    config: CompressorConfig,
) -> Result<Vec<(usize, f64)>, SimError> {
    if !(spec.target_h > 0.0 && spec.target_h < 1.0) {
        return Err(SimError::Config(format!(
            "incompleteness experiments need 0 < target_h < 1, got {}",
            spec.target_h
        )));
    }
    if prefixes.windows(2).any(|w| w[0] >= w[1])
        || prefixes.last().is_some_and(|&m| m > spec.alphabet_size)
    {
        return Err(SimError::BadPrefixes {
            alphabet_size: spec.alphabet_size,
        });
    }
    let library = Library::build(spec)?;
    let prefix_libraries: Vec<Library> = prefixes.iter().map(|&m| library.prefix(m)).collect();
    let compressors: Vec<Compressor<'_>> = prefix_libraries
        .iter()
        .map(|lib| Compressor::new(lib, config))
        .collect();

    let per_trial: Vec<Vec<f64>> = trial_seeds(spec.seed, trials)
        .into_par_iter()
        .map(|seed| {
            let program = generate_program(spec, &library, s, seed)?;
            Ok(compressors
                .iter()
                .map(|c| c.compress(&program.bits).1.ratio)
                .collect())
        })
        .collect::<Result<_, SimError>>()?;

    Ok(prefixes
        .iter()
        .enumerate()
        .map(|(j, &m)| (m, mean(per_trial.iter().map(|ratios| ratios[j]))))
        .collect())
}

/// Mean net bits saved per use, by rank, weighted by use counts. Ranks
/// never referenced are absent.
pub fn savings_profile(reports: &[CompressionReport]) -> BTreeMap<usize, f64> {
    let mut totals: BTreeMap<usize, (f64, u64)> = BTreeMap::new();
    for report in reports {
        for (&rank, &uses) in &report.refs {
            if uses == 0 {
                continue;
            }
            let per_use = report.savings.get(&rank).copied().unwrap_or(0.0);
            let entry = totals.entry(rank).or_default();
            entry.0 += per_use * uses as f64;
            entry.1 += uses;
        }
    }
    totals
        .into_iter()
        .map(|(rank, (saved, uses))| (rank, saved / uses as f64))
        .collect()
}

/// Component symbol name used for simulated corpora.
pub(crate) fn component_symbol(rank: usize) -> String {
    format!("component-{rank:05}")
}

/// One corpus record per trial: size is the compressed program size and
/// references are keyed by component symbol.
pub fn simulated_corpus(outcomes: &[TrialOutcome]) -> Vec<ObjectRecord> {
    outcomes
        .iter()
        .map(|o| ObjectRecord {
            name: format!("sim-{:05}", o.index),
            size_bits: o.program.compressed_bits.max(1),
            refs: o
                .program
                .refs
                .iter()
                .map(|(&rank, &count)| (component_symbol(rank), count))
                .collect(),
        })
        .collect()
}
