//! Mean compression ratio as the library is truncated to its top-k
//! components. No finite prefix reaches the planted floor H.

use reuselaw::domainsim::{incompleteness_curve, BodySizes, CompressorConfig, DomainSpec};

fn main() {
    let spec = DomainSpec {
        target_h: 0.5,
        alphabet_size: 1024,
        zipf_exponent: 2.0,
        body_size_bits: BodySizes::Fixed(64),
        seed: 3,
    };
    let prefixes = [0, 1, 4, 16, 64, 256, 1024];
    let curve =
        incompleteness_curve(&spec, &prefixes, 100_000, 100, CompressorConfig::default()).unwrap();
    println!("library size  mean ratio");
    for (k, ratio) in curve {
        println!("{k:>12}  {ratio:.4}");
    }
}
