//! Normality of per-object distinct-component counts.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use reuselaw::analysis::{erdos_kac_check, ErdosKacOptions};
use reuselaw::ingest::{build_corpus, ObjectRecord};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let zipf = WeightedIndex::new((1..=4096).map(|n| 1.0 / n as f64)).unwrap();
    let objects = (0..400)
        .map(|i| {
            let draws = 100 + 10 * (i % 20);
            let mut record = ObjectRecord {
                name: format!("obj{i:03}"),
                size_bits: 64 * draws as u64,
                refs: Default::default(),
            };
            for _ in 0..draws {
                *record
                    .refs
                    .entry(format!("sym{}", zipf.sample(&mut rng)))
                    .or_insert(0) += 1;
            }
            record
        })
        .collect();
    let report = erdos_kac_check(&build_corpus(objects), &ErdosKacOptions::default()).unwrap();
    for band in &report.bands {
        println!(
            "band {:>6}..{:<6} bits: {} objects, mean distinct {:.1}",
            band.min_size_bits, band.max_size_bits, band.count, band.mean_distinct
        );
    }
    println!(
        "c = {:.3e}, A^2 = {:.4}, p = {:.4}, pass at {}: {}",
        report.c_hat,
        report.statistic.unwrap_or(f64::NAN),
        report.p_value.unwrap_or(f64::NAN),
        report.significance,
        report.pass
    );
}
