use std::io::Write;

use flate2::write::DeflateEncoder;
use flate2::Compression;
use serde::{Deserialize, Serialize};

use super::AnalysisError;

pub const MIN_PROBE_BYTES: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub input_bytes: usize,
    pub compressed_bytes: usize,
    /// `compressed_bytes / input_bytes`.
    pub ratio: f64,
}

/// Compressibility of a blob under raw DEFLATE at level 9 with no preset
/// dictionary. Ratios near one mean the compressor finds nothing to exploit.
pub fn incompressibility_probe(blob: &[u8]) -> Result<ProbeResult, AnalysisError> {
    if blob.len() < MIN_PROBE_BYTES {
        return Err(AnalysisError::InsufficientSample {
            needed: MIN_PROBE_BYTES,
            got: blob.len(),
        });
    }
    let mut encoder = DeflateEncoder::new(Vec::with_capacity(blob.len() / 2), Compression::best());
    encoder
        .write_all(blob)
        .expect("writing to a Vec cannot fail");
    let compressed = encoder.finish().expect("writing to a Vec cannot fail");
    Ok(ProbeResult {
        input_bytes: blob.len(),
        compressed_bytes: compressed.len(),
        ratio: compressed.len() as f64 / blob.len() as f64,
    })
}

/// Raw DEFLATE output of `blob` with the probe's configuration.
pub fn deflate(blob: &[u8]) -> Vec<u8> {
    let mut encoder = DeflateEncoder::new(Vec::new(), Compression::best());
    encoder
        .write_all(blob)
        .expect("writing to a Vec cannot fail");
    encoder.finish().expect("writing to a Vec cannot fail")
}
