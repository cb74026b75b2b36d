//! Zipf, Heaps and rate-bound analyses on a corpus file, or on a simulated
//! corpus when no path is given.
//!
//! `cargo run --example reuse_laws -- out/corpus.jsonl`

use reuselaw::analysis::{
    check_rate_bound, fit_heaps, fit_zipf, rank_frequency, DEFAULT_MIN_COUNT,
};
use reuselaw::domainsim::{
    run_trials, simulated_corpus, BodySizes, CompressorConfig, DomainSpec, Library,
};
use reuselaw::ingest::{build_corpus, load_corpus};

fn main() {
    let corpus = match std::env::args().nth(1) {
        Some(path) => load_corpus(path.as_ref()).unwrap(),
        None => {
            let spec = DomainSpec {
                target_h: 0.0,
                alphabet_size: 1024,
                zipf_exponent: 1.0,
                body_size_bits: BodySizes::Fixed(64),
                seed: 5,
            };
            let library = Library::build(&spec).unwrap();
            let outcomes =
                run_trials(&spec, &library, 200_000, 100, CompressorConfig::default()).unwrap();
            build_corpus(simulated_corpus(&outcomes))
        }
    };
    println!(
        "{} objects, {} components, {} references",
        corpus.len(),
        corpus.component_count(),
        corpus.total_refs()
    );

    let table = rank_frequency(&corpus, 0).unwrap();
    match fit_zipf(&table, DEFAULT_MIN_COUNT) {
        Ok(fit) => println!(
            "Zipf: a = {:.3} (r^2 {:.4}, {} ranks)",
            fit.exponent, fit.r_squared, fit.n_points
        ),
        Err(e) => println!("Zipf: {e}"),
    }
    match fit_heaps(&corpus, 0) {
        Ok(heaps) => println!(
            "Heaps: alpha = {:.3} (r^2 {:.4})",
            heaps.fit.exponent, heaps.fit.r_squared
        ),
        Err(e) => println!("Heaps: {e}"),
    }
    let bound = check_rate_bound(&table);
    println!(
        "rate bound: sum = {:.4}, satisfied {}",
        bound.sum, bound.satisfied
    );
}
