//! Shannon–Fano codebooks and Elias-omega identifiers.

use reuselaw::infocode::{
    entropy, log_plus, omega_codeword, omega_decode_all, shannon_fano_codebook, FiniteDistribution,
};

fn main() {
    let d = FiniteDistribution::from_masses(&[8.0, 4.0, 2.0, 1.0, 1.0]).unwrap();
    let code = shannon_fano_codebook(&d).unwrap();
    for outcome in 0..d.len() {
        println!(
            "outcome {outcome}: p = {:.4}  codeword {}",
            d.weights()[outcome],
            code.codeword(outcome).unwrap()
        );
    }
    println!(
        "H = {:.4} bits, expected length {:.4}, Kraft sum {}",
        entropy(&d),
        code.expected_length(),
        code.codebook().kraft_sum()
    );

    println!("\n   n  omega codeword        |c(n)|  log+ n");
    let mut stream = bitvec::vec::BitVec::<u8, bitvec::order::Msb0>::new();
    for n in [1u64, 2, 3, 4, 7, 16, 100, 1000] {
        let word = omega_codeword(n).unwrap();
        println!(
            "{n:>4}  {:<20}  {:>6}  {:.3}",
            word.to_string(),
            word.len(),
            log_plus(n).unwrap()
        );
        stream.extend_from_bitslice(word.bits());
    }
    println!(
        "decoded concatenation: {:?}",
        omega_decode_all(&stream).unwrap()
    );
}
