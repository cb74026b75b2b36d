//! Synthetic problem domains and library compression experiments.
//!
//! A [`DomainSpec`] plants a known entropy parameter `H`: programs are
//! i.i.d. token streams in which a fraction `H` of tokens are fresh random
//! bits and the rest are bodies of library components drawn with Zipf
//! weights. The [`Compressor`] replaces component bodies by their
//! Elias-omega identifiers and reports reuse rates `λ̂(n)`, the number of
//! useful components `N(s)`, and the savings per use `S(n)`.

mod compress;
mod estimate;
mod experiment;
mod library;
mod program;
mod spec;

pub use compress::{
    CompressionReport, Compressor, CompressorConfig, SimProgram, LITERAL_FLAG_BITS,
    REFERENCE_FLAG_BITS, SHORT_LITERAL_FLAG_BITS,
};
pub use estimate::{estimate_entropy_parameter, estimate_entropy_parameter_for_spec};
pub use experiment::{
    incompleteness_curve, mean_ratio, mean_reuse_proportion, run_trials, savings_profile,
    simulated_corpus, trial_seeds, TrialOutcome,
};
pub use library::{Component, Library, MAX_BODY_REJECTIONS};
pub use program::{generate_program, GeneratedProgram, Token, TokenSymbol};
pub use spec::{BodySizes, DomainSpec};

use thiserror::Error;

/// Bit strings for programs and component bodies.
pub type Bits = bitvec::vec::BitVec<u64, bitvec::order::Msb0>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid domain configuration: {0}")]
    Config(String),
    #[error("could not draw {alphabet_size} distinct bodies after {rejections} rejections")]
    BodiesNotDistinct {
        alphabet_size: usize,
        rejections: usize,
    },
    #[error("program size {s} is smaller than the largest body ({max_body} bits)")]
    ProgramTooSmall { s: u64, max_body: u32 },
    #[error("library prefix sizes must be strictly increasing and at most {alphabet_size}")]
    BadPrefixes { alphabet_size: usize },
    #[error("token stream is empty")]
    EmptyStream,
    #[error("s0 schedule must be nonempty and strictly increasing")]
    BadSchedule,
}
