use serde::{Deserialize, Serialize};

use super::RankFrequencyTable;
use crate::infocode::log_plus;

/// Allowance for floating-point accumulation in the bound check.
pub const RATE_BOUND_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailPoint {
    pub rank: u64,
    /// `λ̂(n) · n · log₂ n · log⁺ n`; bounded rates keep this from growing.
    pub scaled_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateBound {
    /// `Σ λ̂(n) · log⁺ n`.
    pub sum: f64,
    pub satisfied: bool,
    pub tail_profile: Vec<TailPoint>,
}

/// Checks that references fit in the code that holds them: each reference
/// to rank `n` needs at least `log⁺ n` bits, so `Σ λ̂(n) log⁺ n ≤ 1`.
pub fn check_rate_bound(table: &RankFrequencyTable) -> RateBound {
    let mut sum = 0.0;
    let mut tail_profile = Vec::with_capacity(table.len());
    for entry in table.entries() {
        let lp = log_plus(entry.rank).expect("ranks are positive");
        sum += entry.rate * lp;
        let n = entry.rank as f64;
        tail_profile.push(TailPoint {
            rank: entry.rank,
            scaled_rate: entry.rate * n * n.log2() * lp,
        });
    }
    RateBound {
        sum,
        satisfied: sum <= 1.0 + RATE_BOUND_SLACK,
        tail_profile,
    }
}
