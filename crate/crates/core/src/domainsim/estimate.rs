use std::collections::HashMap;
use std::hash::Hash;

use super::{generate_program, DomainSpec, Library, SimError};

/// Running-maximum estimate of the entropy parameter from a token stream.
///
/// For each `s0` in the schedule, the prefix of tokens whose cumulative
/// length fits in `s0` bits is summarized by its plug-in (empirical
/// frequency) entropy per token; multiplied by the token count and divided
/// by `s0`, this estimates the entropy per bit. The largest value over the
/// schedule, clamped to `[0, 1]`, is returned. Short prefixes are noisy and
/// push the maximum up, so schedules should start at a representative size.
pub fn estimate_entropy_parameter<T: Eq + Hash>(
    stream: &[(T, u64)],
    s0_schedule: &[u64],
) -> Result<f64, SimError> {
    if stream.is_empty() {
        return Err(SimError::EmptyStream);
    }
    if s0_schedule.is_empty() || s0_schedule[0] == 0 || s0_schedule.windows(2).any(|w| w[0] >= w[1])
    {
        return Err(SimError::BadSchedule);
    }

    let mut counts: HashMap<&T, u64> = HashMap::new();
    let mut consumed_bits = 0u64;
    let mut consumed_tokens = 0usize;
    let mut best = 0.0f64;
    for &s0 in s0_schedule {
        while consumed_tokens < stream.len() {
            let (symbol, len) = &stream[consumed_tokens];
            if consumed_bits + len > s0 {
                break;
            }
            *counts.entry(symbol).or_default() += 1;
            consumed_bits += len;
            consumed_tokens += 1;
        }
        if consumed_tokens == 0 {
            continue;
        }
        let n = consumed_tokens as f64;
        let per_token: f64 = counts
            .values()
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.log2()
            })
            .sum();
        best = best.max(per_token * n / s0 as f64);
    }
    Ok(best.clamp(0.0, 1.0))
}

/// Draws one program of `max(s0_schedule)` bits from the domain and
/// estimates its entropy parameter from the ground-truth token stream.
pub fn estimate_entropy_parameter_for_spec(
    spec: &DomainSpec,
    s0_schedule: &[u64],
    seed: u64,
) -> Result<f64, SimError> {
    let library = Library::build(spec)?;
    let s = s0_schedule.last().copied().ok_or(SimError::BadSchedule)?;
    let program = generate_program(spec, &library, s, seed)?;
    estimate_entropy_parameter(&program.token_stream(), s0_schedule)
}
