use std::fmt;

use bitvec::prelude::*;

use super::{CodingError, FiniteDistribution};

/// A nonempty bit string used as a component identifier.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    bits: BitVec<u8, Msb0>,
}

impl Codeword {
    pub fn new(bits: BitVec<u8, Msb0>) -> Result<Self, CodingError> {
        if bits.is_empty() {
            return Err(CodingError::EmptyCodeword(0));
        }
        Ok(Self { bits })
    }

    /// Parses a string of `'0'`/`'1'` characters; anything else is rejected.
    pub fn parse(text: &str) -> Option<Self> {
        let mut bits = BitVec::with_capacity(text.len());
        for ch in text.chars() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return None,
            }
        }
        Self::new(bits).ok()
    }

    pub fn bits(&self) -> &BitSlice<u8, Msb0> {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Codeword) -> bool {
        other.bits.starts_with(&self.bits)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bit in self.bits.iter() {
            f.write_str(if *bit { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

/// Rank-indexed codewords. Entry `i` is the identifier of rank `i + 1`.
///
/// Construction checks that the codewords are prefix-free, that lengths
/// never decrease with rank, and that the Kraft sum is at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    entries: Vec<Codeword>,
}

impl Codebook {
    pub fn new(entries: Vec<Codeword>) -> Result<Self, CodingError> {
        for (i, pair) in entries.windows(2).enumerate() {
            if pair[1].len() < pair[0].len() {
                return Err(CodingError::LengthsDecrease(i + 2));
            }
        }
        if !kraft_holds(entries.iter().map(Codeword::len)) {
            return Err(CodingError::KraftViolated);
        }
        let mut order: Vec<usize> = (0..entries.len()).collect();
        order.sort_by(|&a, &b| entries[a].bits.cmp(&entries[b].bits));
        // In lexicographic order any prefix sorts directly before the
        // words it prefixes, so adjacent checks suffice.
        for pair in order.windows(2) {
            let (a, b) = (&entries[pair[0]], &entries[pair[1]]);
            if a.is_prefix_of(b) {
                return Err(CodingError::NotPrefixFree {
                    earlier: pair[0] + 1,
                    later: pair[1] + 1,
                });
            }
        }
        Ok(Self { entries })
    }

    /// Codeword of `rank` (1-based).
    pub fn get(&self, rank: usize) -> Option<&Codeword> {
        rank.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn entries(&self) -> &[Codeword] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lengths(&self) -> Vec<u32> {
        self.entries.iter().map(|c| c.len() as u32).collect()
    }

    pub fn kraft_sum(&self) -> f64 {
        kraft_sum(&self.lengths())
    }

    /// First `len` ranks; a prefix of a valid codebook is valid.
    pub fn truncated(&self, len: usize) -> Codebook {
        Codebook {
            entries: self.entries[..len.min(self.entries.len())].to_vec(),
        }
    }
}

/// `Σ 2^(−ℓ)` over the given lengths.
pub fn kraft_sum(lengths: &[u32]) -> f64 {
    lengths.iter().map(|&l| 2f64.powi(-(l as i32))).sum()
}

/// Exact Kraft test by counting free code-tree nodes depth by depth.
fn kraft_holds(lengths: impl Iterator<Item = usize>) -> bool {
    let mut sorted: Vec<usize> = lengths.collect();
    sorted.sort_unstable();
    let needed = sorted.len() as u128;
    let mut free: u128 = 1;
    let mut depth = 0usize;
    for len in sorted {
        while depth < len && free < needed {
            free *= 2;
            depth += 1;
        }
        depth = len;
        if free == 0 {
            return false;
        }
        free -= 1;
    }
    true
}

/// A Shannon–Fano code for a finite distribution.
///
/// Outcomes are ranked by probability (descending, ties by index) and
/// receive canonical codewords of length `max(1, ⌈−log₂ p⌉)`.
/// Zero-probability outcomes get no codeword.
#[derive(Debug, Clone)]
pub struct ShannonFanoCode {
    codebook: Codebook,
    rank_of_outcome: Vec<Option<usize>>,
    weights: Vec<f64>,
}

impl ShannonFanoCode {
    pub fn codebook(&self) -> &Codebook {
        &self.codebook
    }

    /// Rank (1-based) assigned to `outcome`, if it has positive probability.
    pub fn rank_of(&self, outcome: usize) -> Option<usize> {
        self.rank_of_outcome.get(outcome).copied().flatten()
    }

    pub fn codeword(&self, outcome: usize) -> Result<&Codeword, CodingError> {
        let slot = self
            .rank_of_outcome
            .get(outcome)
            .ok_or(CodingError::OutOfRange(outcome))?;
        let rank = slot.ok_or(CodingError::NoCodeword(outcome))?;
        Ok(self.codebook.get(rank).expect("rank within codebook"))
    }

    /// `Σ pᵢ |c(i)|` over outcomes with positive probability.
    pub fn expected_length(&self) -> f64 {
        self.weights
            .iter()
            .zip(&self.rank_of_outcome)
            .filter_map(|(&p, rank)| rank.map(|r| p * self.codebook.entries[r - 1].len() as f64))
            .sum()
    }
}

/// Smallest `ℓ ≥ 1` with `2^(−ℓ) ≤ p`, computed with exact powers of two.
fn shannon_length(p: f64) -> usize {
    let mut len = 1usize;
    let mut threshold = 0.5f64;
    while threshold > p {
        threshold /= 2.0;
        len += 1;
    }
    len
}

/// Adds one to `bits` read as a binary number; `false` on overflow.
fn increment(bits: &mut BitVec<u8, Msb0>) -> bool {
    for i in (0..bits.len()).rev() {
        if bits[i] {
            bits.set(i, false);
        } else {
            bits.set(i, true);
            return true;
        }
    }
    false
}

pub fn shannon_fano_codebook(d: &FiniteDistribution) -> Result<ShannonFanoCode, CodingError> {
    let weights = d.weights().to_vec();
    let mut order: Vec<usize> = (0..weights.len()).filter(|&i| weights[i] > 0.0).collect();
    if order.is_empty() {
        return Err(CodingError::EmptyDistribution);
    }
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));

    let mut entries = Vec::with_capacity(order.len());
    let mut rank_of_outcome = vec![None; weights.len()];
    let mut next: BitVec<u8, Msb0> = BitVec::new();
    for (i, &outcome) in order.iter().enumerate() {
        let len = shannon_length(weights[outcome]);
        if i > 0 && !increment(&mut next) {
            return Err(CodingError::KraftViolated);
        }
        next.resize(len, false);
        entries.push(Codeword { bits: next.clone() });
        rank_of_outcome[outcome] = Some(i + 1);
    }
    Ok(ShannonFanoCode {
        codebook: Codebook::new(entries)?,
        rank_of_outcome,
        weights,
    })
}
