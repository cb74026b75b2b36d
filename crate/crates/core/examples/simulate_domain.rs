//! Compress programs drawn from a domain with entropy parameter H and
//! compare the achieved ratio with H.
//!
//! `cargo run --example simulate_domain -- 0.25`

use reuselaw::domainsim::{
    mean_ratio, mean_reuse_proportion, run_trials, BodySizes, CompressorConfig, DomainSpec, Library,
};

fn main() {
    let target_h: f64 = std::env::args()
        .nth(1)
        .map_or(0.5, |a| a.parse().expect("H in [0, 1]"));
    let spec = DomainSpec {
        target_h,
        alphabet_size: 1024,
        zipf_exponent: 2.0,
        body_size_bits: BodySizes::Fixed(64),
        seed: 42,
    };
    let library = Library::build(&spec).unwrap();
    let outcomes = run_trials(&spec, &library, 100_000, 50, CompressorConfig::default()).unwrap();

    let first = &outcomes[0];
    println!(
        "trial 0: {} -> {} bits ({} custom, {} escape, {} reference)",
        first.program.uncompressed_bits,
        first.program.compressed_bits,
        first.program.custom_bits,
        first.program.escape_bits,
        first.program.reference_bits
    );
    let top: Vec<String> = first
        .program
        .refs
        .iter()
        .take(5)
        .map(|(r, c)| format!("{r}:{c}"))
        .collect();
    println!("references by rank: {} ...", top.join(" "));
    println!("N(s) = {} useful components", first.report.n_useful);
    println!(
        "H = {target_h}: mean ratio {:.4}, mean reuse proportion {:.4} over {} trials",
        mean_ratio(&outcomes),
        mean_reuse_proportion(&outcomes),
        outcomes.len()
    );
}
