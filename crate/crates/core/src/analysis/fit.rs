use serde::{Deserialize, Serialize};

use super::{AnalysisError, RankFrequencyTable};

/// Entries with fewer references are left out of Zipf fits.
pub const DEFAULT_MIN_COUNT: u64 = 5;

/// A power law `y = 2^log_scale · x^(±exponent)` fitted on log₂–log₂ axes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub log_scale: f64,
    pub r_squared: f64,
    pub n_points: usize,
}

/// Ordinary least squares `y = slope·x + intercept`; returns
/// `(slope, intercept, r²)`. A constant `y` is fitted exactly (r² = 1).
pub fn linear_fit(points: &[(f64, f64)]) -> Result<(f64, f64, f64), AnalysisError> {
    if points.len() < 2 {
        return Err(AnalysisError::UndefinedFit(format!(
            "{} point(s), need at least 2",
            points.len()
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let syy: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();
    if sxx == 0.0 {
        return Err(AnalysisError::UndefinedFit("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok((slope, intercept, r_squared))
}

/// Least-squares Zipf fit of `log₂ count` against `log₂ rank` over entries
/// with `count ≥ min_count`. The exponent is reported positive for
/// decaying laws.
pub fn fit_zipf(table: &RankFrequencyTable, min_count: u64) -> Result<FitResult, AnalysisError> {
    let points: Vec<(f64, f64)> = table
        .entries()
        .iter()
        .filter(|e| e.count >= min_count.max(1))
        .map(|e| ((e.rank as f64).log2(), (e.count as f64).log2()))
        .collect();
    let (slope, intercept, r_squared) = linear_fit(&points)?;
    Ok(FitResult {
        exponent: -slope,
        log_scale: intercept,
        r_squared,
        n_points: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::RankEntry;

    fn exact_table(exponent: f64, len: u64) -> RankFrequencyTable {
        let entries = (1..=len)
            .map(|n| {
                let count = (1e6 / (n as f64).powf(exponent)).round() as u64;
                RankEntry {
                    rank: n,
                    count,
                    rate: count as f64 / 1e7,
                }
            })
            .collect();
        RankFrequencyTable::new(entries).unwrap()
    }

    #[test]
    fn harmonic_counts() {
        let fit = fit_zipf(&exact_table(1.0, 500), 1).unwrap();
        assert!((fit.exponent - 1.0).abs() <= 0.02, "{fit:?}");
        assert!(fit.r_squared > 0.999);
        assert_eq!(fit.n_points, 500);
    }

    #[test]
    fn inverse_square_counts() {
        let fit = fit_zipf(&exact_table(2.0, 500), 1).unwrap();
        assert!((fit.exponent - 2.0).abs() <= 0.05, "{fit:?}");
    }

    #[test]
    fn min_count_filters() {
        let fit = fit_zipf(&exact_table(2.0, 500), 5).unwrap();
        assert!(fit.n_points < 500);
        assert!(fit.n_points >= 2);
        assert!(matches!(
            fit_zipf(&exact_table(1.0, 3), 1_000_000),
            Err(AnalysisError::UndefinedFit(_))
        ));
    }

    #[test]
    fn linear_fit_degenerate() {
        assert!(linear_fit(&[(1.0, 2.0)]).is_err());
        assert!(linear_fit(&[(1.0, 2.0), (1.0, 3.0)]).is_err());
        let (slope, _, r2) = linear_fit(&[(1.0, 2.0), (2.0, 2.0)]).unwrap();
        assert_eq!((slope, r2), (0.0, 1.0));
    }
}
