//! Entropy model of software-library reuse.
//!
//! The crate has four layers:
//!
//! - [`infocode`]: entropy, `log⁺`, Kraft sums, Shannon–Fano codebooks and
//!   Elias-omega identifiers.
//! - [`domainsim`]: synthetic problem domains with a tunable entropy
//!   parameter `H`, ranked component libraries and a greedy library
//!   compressor whose accounting exposes reuse rates and savings.
//! - [`ingest`]: reference-count corpora from ELF64 objects and from
//!   tab-separated symbol dumps, stored as JSON lines.
//! - [`analysis`]: Zipf and Heaps fits, the reference-cost rate bound,
//!   an Erdős–Kac style normality check and a DEFLATE incompressibility
//!   probe.
//!
//! [`cli`] wires these into the `reuselaw` binary and the SVG/CSV reports.

pub mod analysis;
pub mod cli;
pub mod domainsim;
pub mod infocode;
pub mod ingest;
mod svg;
