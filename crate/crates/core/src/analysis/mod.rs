//! Statistical checks on reference corpora, simulated or scanned.

mod fit;
mod heaps;
mod normality;
mod probe;
mod rate_bound;
mod table;

pub use fit::{fit_zipf, linear_fit, FitResult, DEFAULT_MIN_COUNT};
pub use heaps::{fit_heaps, HeapsFit, HeapsPoint, MIN_HEAPS_OBJECTS};
pub use normality::{
    anderson_darling, erdos_kac_check, AndersonDarling, BandSummary, ErdosKacOptions,
    NormalityReport, MIN_NORMALITY_SAMPLE,
};
#[doc(hidden)]
pub use probe::deflate as deflate_for_probe;
pub use probe::{incompressibility_probe, ProbeResult, MIN_PROBE_BYTES};
pub use rate_bound::{check_rate_bound, RateBound, TailPoint, RATE_BOUND_SLACK};
pub use table::{rank_frequency, RankEntry, RankFrequencyTable};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("fit is undefined: {0}")]
    UndefinedFit(String),
    #[error("need at least {needed} samples, got {got}")]
    InsufficientSample { needed: usize, got: usize },
    #[error("invalid rank-frequency table: {0}")]
    InvalidTable(String),
}
