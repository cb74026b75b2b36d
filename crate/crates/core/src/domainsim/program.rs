use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::library::random_bits;
use super::{Bits, DomainSpec, Library, SimError};

/// Ground-truth token boundaries of a generated program.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Token {
    Custom {
        start: usize,
        len: usize,
    },
    Component {
        rank: usize,
        start: usize,
        len: usize,
    },
}

impl Token {
    pub fn len(&self) -> usize {
        match *self {
            Token::Custom { len, .. } | Token::Component { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Symbols of the token stream used for entropy estimation: custom code
/// contributes one symbol per bit, a component contributes one symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenSymbol {
    Bit(bool),
    Component(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedProgram {
    pub bits: Bits,
    pub tokens: Vec<Token>,
}

impl GeneratedProgram {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Bits contributed by planted component bodies.
    pub fn planted_bits(&self) -> usize {
        self.tokens
            .iter()
            .filter(|t| matches!(t, Token::Component { .. }))
            .map(Token::len)
            .sum()
    }

    pub fn planted_fraction(&self) -> f64 {
        if self.bits.is_empty() {
            return 0.0;
        }
        self.planted_bits() as f64 / self.bits.len() as f64
    }

    /// `(symbol, bit length)` pairs in program order.
    pub fn token_stream(&self) -> Vec<(TokenSymbol, u64)> {
        let mut out = Vec::with_capacity(self.tokens.len());
        for token in &self.tokens {
            match *token {
                Token::Custom { start, len } => {
                    out.extend(
                        self.bits[start..start + len]
                            .iter()
                            .map(|b| (TokenSymbol::Bit(*b), 1)),
                    );
                }
                Token::Component { rank, len, .. } => {
                    out.push((TokenSymbol::Component(rank), len as u64));
                }
            }
        }
        out
    }
}

/// Draws a program of at least `s` bits as an i.i.d. token stream.
///
/// Each token is, with probability `target_h`, a block of fresh uniform
/// bits of [`DomainSpec::custom_block_bits`] length, and otherwise the body
/// of a library component drawn by Zipf weight. Generation stops at the
/// first token boundary at or past `s`.
pub fn generate_program(
    spec: &DomainSpec,
    lib: &Library,
    s: u64,
    seed: u64,
) -> Result<GeneratedProgram, SimError> {
    spec.validate()?;
    let max_body = lib.max_body_size() as u32;
    if s < u64::from(max_body) {
        return Err(SimError::ProgramTooSmall { s, max_body });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let custom_len = spec.custom_block_bits() as usize;
    let picker = if lib.is_empty() {
        None
    } else {
        Some(WeightedIndex::new(lib.weights()).expect("positive Zipf weights"))
    };

    let mut bits = Bits::with_capacity(s as usize + max_body as usize + custom_len);
    let mut tokens = Vec::new();
    while (bits.len() as u64) < s {
        let start = bits.len();
        let custom = picker.is_none() || rng.random_bool(spec.target_h);
        if custom {
            random_bits(&mut rng, custom_len, &mut bits);
            tokens.push(Token::Custom {
                start,
                len: custom_len,
            });
        } else {
            let index = picker.as_ref().expect("library nonempty").sample(&mut rng);
            let component = &lib.components()[index];
            bits.extend_from_bitslice(&component.body);
            tokens.push(Token::Component {
                rank: component.rank,
                start,
                len: component.body.len(),
            });
        }
    }
    Ok(GeneratedProgram { bits, tokens })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domainsim::BodySizes;

    fn spec(target_h: f64, alphabet_size: usize) -> DomainSpec {
        DomainSpec {
            target_h,
            alphabet_size,
            zipf_exponent: 1.0,
            body_size_bits: BodySizes::Fixed(64),
            seed: 3,
        }
    }

    #[test]
    fn pure_custom_code() {
        let spec = spec(1.0, 16);
        let lib = Library::build(&spec).unwrap();
        let program = generate_program(&spec, &lib, 10_000, 1).unwrap();
        assert_eq!(program.planted_bits(), 0);
        assert!(program.len() >= 10_000);
        assert!(program
            .tokens
            .iter()
            .all(|t| matches!(t, Token::Custom { .. })));
    }

    #[test]
    fn single_body_repeated() {
        let spec = spec(0.0, 1);
        let lib = Library::build(&spec).unwrap();
        let program = generate_program(&spec, &lib, 640, 1).unwrap();
        assert_eq!(program.len(), 640);
        for chunk in program.bits.chunks(64) {
            assert_eq!(chunk, lib.components()[0].body.as_bitslice());
        }
    }

    #[test]
    fn half_planted() {
        let spec = spec(0.5, 1024);
        let lib = Library::build(&spec).unwrap();
        let program = generate_program(&spec, &lib, 100_000, 11).unwrap();
        let fraction = program.planted_fraction();
        assert!((fraction - 0.5).abs() < 0.05, "planted fraction {fraction}");
        // ground truth: token spans tile the program
        let mut cursor = 0;
        for token in &program.tokens {
            let start = match *token {
                Token::Custom { start, .. } | Token::Component { start, .. } => start,
            };
            assert_eq!(start, cursor);
            if let Token::Component { rank, start, len } = *token {
                assert_eq!(
                    &program.bits[start..start + len],
                    lib.component(rank).unwrap().body.as_bitslice()
                );
            }
            cursor += token.len();
        }
        assert_eq!(cursor, program.len());
    }

    #[test]
    fn program_smaller_than_body_rejected() {
        let spec = spec(0.5, 4);
        let lib = Library::build(&spec).unwrap();
        assert!(matches!(
            generate_program(&spec, &lib, 10, 0),
            Err(SimError::ProgramTooSmall { .. })
        ));
    }

    #[test]
    fn token_stream_shape() {
        let spec = spec(0.5, 4);
        let lib = Library::build(&spec).unwrap();
        let program = generate_program(&spec, &lib, 1_000, 5).unwrap();
        let stream = program.token_stream();
        let total: u64 = stream.iter().map(|(_, l)| l).sum();
        assert_eq!(total as usize, program.len());
    }
}
