//! DEFLATE ratio of random, constant and already-compressed data.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use reuselaw::analysis::incompressibility_probe;

fn main() {
    let mut random = vec![0u8; 1 << 20];
    ChaCha8Rng::seed_from_u64(1).fill_bytes(&mut random);
    let text: Vec<u8> = b"the quick brown fox jumps over the lazy dog. ".repeat(20_000);
    for (name, blob) in [
        ("random", random),
        ("zeros", vec![0u8; 1 << 20]),
        ("text", text),
    ] {
        let probe = incompressibility_probe(&blob).unwrap();
        println!(
            "{name:>7}: {:>8} -> {:>8} bytes, ratio {:.4}",
            probe.input_bytes, probe.compressed_bytes, probe.ratio
        );
    }
}
