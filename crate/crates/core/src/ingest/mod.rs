//! Reference-count corpora from binaries and symbol dumps.
//!
//! A reference is one dynamic relocation (`JUMP_SLOT` or `GLOB_DAT`)
//! against a named dynamic symbol. Corpora are stored as JSON lines, one
//! object per line:
//!
//! ```text
//! {"object":"libfoo.so","size_bits":81920,"refs":{"malloc":1,"printf":3}}
//! ```

mod corpus;
mod elf;
mod text;

pub use corpus::{build_corpus, load_corpus, read_corpus, save_corpus, write_corpus, Corpus};
pub use elf::{is_elf, scan_elf, scan_elf_bytes};
pub use text::{scan_text, scan_text_str, LineIssue, TextScan, DEFAULT_REF_SLOT_BITS};

use std::collections::BTreeMap;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// One scanned object and its per-symbol reference counts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ObjectRecord {
    #[serde(rename = "object")]
    pub name: String,
    pub size_bits: u64,
    pub refs: BTreeMap<String, u64>,
}

impl ObjectRecord {
    pub fn validate(&self) -> Result<(), String> {
        if self.size_bits == 0 {
            return Err("size_bits must be positive".into());
        }
        if let Some((symbol, _)) = self.refs.iter().find(|(_, &c)| c == 0) {
            return Err(format!("count for {symbol:?} must be positive"));
        }
        Ok(())
    }

    /// Number of distinct components referenced.
    pub fn distinct_components(&self) -> usize {
        self.refs.len()
    }

    pub fn total_refs(&self) -> u64 {
        self.refs.values().sum()
    }
}

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("ELF parse error at offset {offset:#x}: {reason}")]
    Elf { offset: u64, reason: String },
    #[error("line {line}: {reason}")]
    Text { line: usize, reason: String },
    #[error("corpus record {index} (line {line}): {reason}")]
    Corpus {
        index: usize,
        line: usize,
        reason: String,
    },
}

impl IngestError {
    pub(crate) fn elf(offset: u64, reason: impl Into<String>) -> Self {
        IngestError::Elf {
            offset,
            reason: reason.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        IngestError::Io {
            path: path.into(),
            source,
        }
    }
}
