use std::collections::{BTreeMap, HashMap};

use bitvec::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Bits, Library};

/// Tag of a reference token (`01`).
pub const REFERENCE_FLAG_BITS: u64 = 2;
/// Tag of a full literal block (`1`).
pub const LITERAL_FLAG_BITS: u64 = 1;
/// Tag of a short literal block (`00`), followed by its length.
pub const SHORT_LITERAL_FLAG_BITS: u64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressorConfig {
    /// Payload bits carried by one full literal block.
    pub literal_block_bits: u32,
}

impl Default for CompressorConfig {
    fn default() -> Self {
        Self {
            literal_block_bits: 16,
        }
    }
}

impl CompressorConfig {
    /// Width of the length field of a short literal block.
    pub fn short_length_bits(&self) -> u64 {
        let block = u64::from(self.literal_block_bits.max(1));
        u64::from(64 - (block - 1).leading_zeros()).max(1)
    }
}

/// Bit accounting of one compressed program.
///
/// `compressed_bits = custom_bits + escape_bits + reference_bits`, where
/// `custom_bits` is literal payload, `escape_bits` all token tags and
/// short-block length fields, and `reference_bits` the codewords.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimProgram {
    pub uncompressed_bits: u64,
    pub compressed_bits: u64,
    pub custom_bits: u64,
    pub escape_bits: u64,
    pub reference_bits: u64,
    /// References per library rank.
    pub refs: BTreeMap<usize, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompressionReport {
    pub uncompressed_bits: u64,
    pub compressed_bits: u64,
    /// `compressed_bits / uncompressed_bits`.
    pub ratio: f64,
    pub refs: BTreeMap<usize, u64>,
    /// References to rank `n` per compressed bit.
    pub lambda_hat: BTreeMap<usize, f64>,
    /// Distinct ranks used with positive net savings.
    pub n_useful: usize,
    /// `(uncompressed − compressed) / uncompressed`, floored at zero.
    pub reuse_proportion: f64,
    /// Mean net bits saved per use, by rank.
    pub savings: BTreeMap<usize, f64>,
}

/// Greedy longest-match library compressor.
///
/// Scanning left to right, a library body that matches at the current
/// position is replaced by a reference (`01` + codeword), provided the
/// body is longer than the reference. Other bits accumulate into literal
/// blocks: a full block is `1` + payload, a trailing partial block is
/// `00` + length + payload.
pub struct Compressor<'a> {
    library: &'a Library,
    config: CompressorConfig,
    key_len: usize,
    index: HashMap<u64, Vec<usize>>,
    net_savings: Vec<i64>,
}

impl<'a> Compressor<'a> {
    pub fn new(library: &'a Library, config: CompressorConfig) -> Self {
        let net_savings: Vec<i64> = library
            .components()
            .iter()
            .map(|c| c.body.len() as i64 - (c.codeword.len() as i64 + REFERENCE_FLAG_BITS as i64))
            .collect();
        let key_len = library
            .components()
            .iter()
            .zip(&net_savings)
            .filter(|(_, &s)| s > 0)
            .map(|(c, _)| c.body.len())
            .min()
            .unwrap_or(1)
            .min(64);
        let mut index: HashMap<u64, Vec<usize>> = HashMap::new();
        for (i, component) in library.components().iter().enumerate() {
            if net_savings[i] > 0 {
                index
                    .entry(component.body[..key_len].load_be::<u64>())
                    .or_default()
                    .push(i);
            }
        }
        Self {
            library,
            config,
            key_len,
            index,
            net_savings,
        }
    }

    pub fn library(&self) -> &Library {
        self.library
    }

    pub fn config(&self) -> CompressorConfig {
        self.config
    }

    fn longest_match(&self, bits: &BitSlice<u64, Msb0>, pos: usize) -> Option<usize> {
        if self.index.is_empty() || pos + self.key_len > bits.len() {
            return None;
        }
        let key = bits[pos..pos + self.key_len].load_be::<u64>();
        let candidates = self.index.get(&key)?;
        let mut best: Option<usize> = None;
        for &i in candidates {
            let body = &self.library.components()[i].body;
            let end = pos + body.len();
            if end <= bits.len() && bits[pos..end] == body[..] {
                let better = match best {
                    None => true,
                    Some(b) => body.len() > self.library.components()[b].body.len(),
                };
                if better {
                    best = Some(i);
                }
            }
        }
        best
    }

    pub fn compress(&self, program: &Bits) -> (SimProgram, CompressionReport) {
        let block = u64::from(self.config.literal_block_bits.max(1));
        let short_len = self.config.short_length_bits();
        let mut custom_bits = 0u64;
        let mut escape_bits = 0u64;
        let mut reference_bits = 0u64;
        let mut refs: BTreeMap<usize, u64> = BTreeMap::new();
        let mut pending = 0u64;

        let flush = |pending: &mut u64, custom: &mut u64, escape: &mut u64| {
            if *pending > 0 {
                *custom += *pending;
                *escape += SHORT_LITERAL_FLAG_BITS + short_len;
                *pending = 0;
            }
        };

        let bits = program.as_bitslice();
        let mut pos = 0;
        while pos < bits.len() {
            if let Some(i) = self.longest_match(bits, pos) {
                flush(&mut pending, &mut custom_bits, &mut escape_bits);
                let component = &self.library.components()[i];
                escape_bits += REFERENCE_FLAG_BITS;
                reference_bits += component.codeword.len() as u64;
                *refs.entry(component.rank).or_default() += 1;
                pos += component.body.len();
            } else {
                pending += 1;
                if pending == block {
                    custom_bits += block;
                    escape_bits += LITERAL_FLAG_BITS;
                    pending = 0;
                }
                pos += 1;
            }
        }
        flush(&mut pending, &mut custom_bits, &mut escape_bits);

        let uncompressed_bits = bits.len() as u64;
        let compressed_bits = custom_bits + escape_bits + reference_bits;
        let sim = SimProgram {
            uncompressed_bits,
            compressed_bits,
            custom_bits,
            escape_bits,
            reference_bits,
            refs: refs.clone(),
        };
        let report = self.report(&sim);
        (sim, report)
    }

    fn report(&self, sim: &SimProgram) -> CompressionReport {
        let compressed = sim.compressed_bits.max(1) as f64;
        let uncompressed = sim.uncompressed_bits.max(1) as f64;
        let lambda_hat = sim
            .refs
            .iter()
            .map(|(&rank, &count)| (rank, count as f64 / compressed))
            .collect();
        let savings: BTreeMap<usize, f64> = sim
            .refs
            .keys()
            .map(|&rank| (rank, self.net_savings[rank - 1] as f64))
            .collect();
        let n_useful = savings.values().filter(|&&s| s > 0.0).count();
        let reuse = (sim.uncompressed_bits as f64 - sim.compressed_bits as f64) / uncompressed;
        CompressionReport {
            uncompressed_bits: sim.uncompressed_bits,
            compressed_bits: sim.compressed_bits,
            ratio: sim.compressed_bits as f64 / uncompressed,
            refs: sim.refs.clone(),
            lambda_hat,
            n_useful,
            reuse_proportion: reuse.clamp(0.0, 1.0),
            savings,
        }
    }
}
