use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::ingest::Corpus;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankEntry {
    pub rank: u64,
    pub count: u64,
    /// References per bit of the whole corpus.
    pub rate: f64,
}

/// Rank-ordered counts with reuse rates `λ̂(n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankFrequencyTable {
    entries: Vec<RankEntry>,
}

impl RankFrequencyTable {
    /// Requires strictly increasing positive ranks, nonincreasing counts and
    /// nonnegative finite rates.
    pub fn new(entries: Vec<RankEntry>) -> Result<Self, AnalysisError> {
        if let Some(e) = entries.iter().find(|e| e.rank == 0) {
            return Err(AnalysisError::InvalidTable(format!(
                "rank must be positive (count {})",
                e.count
            )));
        }
        if let Some(e) = entries
            .iter()
            .find(|e| !(e.rate.is_finite() && e.rate >= 0.0))
        {
            return Err(AnalysisError::InvalidTable(format!(
                "rate at rank {} is {}",
                e.rank, e.rate
            )));
        }
        for pair in entries.windows(2) {
            if pair[1].rank <= pair[0].rank {
                return Err(AnalysisError::InvalidTable(format!(
                    "ranks not increasing at {}",
                    pair[1].rank
                )));
            }
            if pair[1].count > pair[0].count {
                return Err(AnalysisError::InvalidTable(format!(
                    "count increases at rank {}",
                    pair[1].rank
                )));
            }
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[RankEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Builds the rank-frequency table of a corpus, shifting every rank by
/// `rank_offset`. Rates are counts divided by the total corpus size in bits.
pub fn rank_frequency(
    corpus: &Corpus,
    rank_offset: u64,
) -> Result<RankFrequencyTable, AnalysisError> {
    if corpus.is_empty() {
        return Err(AnalysisError::EmptyCorpus);
    }
    let total_bits = corpus.total_bits() as f64;
    let entries = corpus
        .ranked_components()
        .iter()
        .enumerate()
        .map(|(i, (_, count))| RankEntry {
            rank: i as u64 + 1 + rank_offset,
            count: *count,
            rate: *count as f64 / total_bits,
        })
        .collect();
    RankFrequencyTable::new(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{build_corpus, ObjectRecord};

    fn corpus() -> Corpus {
        build_corpus(vec![ObjectRecord {
            name: "x".into(),
            size_bits: 100,
            refs: [("a", 5), ("b", 5), ("c", 1)]
                .iter()
                .map(|(s, c)| (s.to_string(), *c))
                .collect(),
        }])
    }

    #[test]
    fn ranks_and_rates() {
        let table = rank_frequency(&corpus(), 0).unwrap();
        let rows: Vec<(u64, u64)> = table.entries().iter().map(|e| (e.rank, e.count)).collect();
        assert_eq!(rows, vec![(1, 5), (2, 5), (3, 1)]);
        assert_eq!(table.entries()[0].rate, 0.05);
    }

    #[test]
    fn offset() {
        let table = rank_frequency(&corpus(), 49).unwrap();
        let ranks: Vec<u64> = table.entries().iter().map(|e| e.rank).collect();
        assert_eq!(ranks, vec![50, 51, 52]);
    }

    #[test]
    fn empty_corpus() {
        assert_eq!(
            rank_frequency(&build_corpus(vec![]), 0),
            Err(AnalysisError::EmptyCorpus)
        );
    }

    #[test]
    fn validation() {
        let e = |rank, count| RankEntry {
            rank,
            count,
            rate: 0.1,
        };
        assert!(RankFrequencyTable::new(vec![e(1, 2), e(2, 3)]).is_err());
        assert!(RankFrequencyTable::new(vec![e(2, 2), e(2, 1)]).is_err());
        assert!(RankFrequencyTable::new(vec![e(0, 2)]).is_err());
        assert!(RankFrequencyTable::new(vec![e(1, 2), e(5, 2)]).is_ok());
    }
}
