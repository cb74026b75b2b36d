#![allow(dead_code)]

pub mod elf_writer;

use std::collections::BTreeMap;
use std::path::PathBuf;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reuselaw::ingest::ObjectRecord;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("data")
}

pub fn golden_path() -> PathBuf {
    data_dir().join("golden_reloc.so")
}

pub fn zipf_weights(alphabet: usize, exponent: f64) -> Vec<f64> {
    (1..=alphabet).map(|n| (n as f64).powf(-exponent)).collect()
}

/// Objects whose references are i.i.d. Zipf draws over `alphabet` symbols;
/// each object is 64 bits per draw.
pub fn zipf_objects(
    seed: u64,
    alphabet: usize,
    exponent: f64,
    objects: usize,
    draws: impl Fn(usize) -> usize,
) -> Vec<ObjectRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = WeightedIndex::new(zipf_weights(alphabet, exponent)).unwrap();
    (0..objects)
        .map(|i| {
            let n = draws(i);
            let mut refs = BTreeMap::new();
            for _ in 0..n {
                *refs
                    .entry(format!("sym{:05}", dist.sample(&mut rng) + 1))
                    .or_insert(0) += 1;
            }
            ObjectRecord {
                name: format!("obj{i:05}"),
                size_bits: 64 * n.max(1) as u64,
                refs,
            }
        })
        .collect()
}
