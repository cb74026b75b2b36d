use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::AnalysisError;
use crate::ingest::{Corpus, ObjectRecord};

pub const MIN_NORMALITY_SAMPLE: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErdosKacOptions {
    /// The check passes when the Anderson–Darling p-value is at least this.
    pub significance: f64,
    /// Number of equal-count size bands used to center the counts.
    pub bands: usize,
    /// Objects outside `[min_size_bits, max_size_bits]` are ignored.
    pub min_size_bits: Option<u64>,
    pub max_size_bits: Option<u64>,
}

impl Default for ErdosKacOptions {
    fn default() -> Self {
        Self {
            significance: 0.01,
            bands: 5,
            min_size_bits: None,
            max_size_bits: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandSummary {
    pub min_size_bits: u64,
    pub max_size_bits: u64,
    pub count: usize,
    pub mean_distinct: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalityReport {
    pub sample_size: usize,
    /// `(k − band trend) / √(ĉ·s²)` per object, in size order.
    pub normalized_values: Vec<f64>,
    /// Anderson–Darling `A²`; absent when the sample is degenerate.
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub significance: f64,
    pub pass: bool,
    /// Zero variance: every object matches its band trend.
    pub degenerate: bool,
    /// Fitted constant of `σ² = c·s²`.
    pub c_hat: f64,
    pub bands: Vec<BandSummary>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AndersonDarling {
    /// `A²` with mean and standard deviation estimated from the sample.
    pub statistic: f64,
    /// `A²·(1 + 0.75/n + 2.25/n²)`.
    pub adjusted: f64,
    pub p_value: f64,
}

/// Anderson–Darling normality test with estimated parameters
/// (D'Agostino–Stephens p-value approximation). Needs at least 8 values
/// with nonzero spread.
pub fn anderson_darling(values: &[f64]) -> Option<AndersonDarling> {
    let n = values.len();
    if n < 8 {
        return None;
    }
    let nf = n as f64;
    let mean = values.iter().sum::<f64>() / nf;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (nf - 1.0);
    let sd = var.sqrt();
    if sd.is_nan() || sd <= 0.0 {
        return None;
    }
    let mut z: Vec<f64> = values.iter().map(|v| (v - mean) / sd).collect();
    z.sort_by(f64::total_cmp);
    let normal = Normal::standard();
    let s: f64 = (0..n)
        .map(|i| {
            let lower = normal.cdf(z[i]).max(f64::MIN_POSITIVE).ln();
            let upper = normal.cdf(-z[n - 1 - i]).max(f64::MIN_POSITIVE).ln();
            (2.0 * i as f64 + 1.0) * (lower + upper)
        })
        .sum();
    let statistic = -nf - s / nf;
    let adjusted = statistic * (1.0 + 0.75 / nf + 2.25 / (nf * nf));
    let p_value = if adjusted < 0.2 {
        1.0 - (-13.436 + 101.14 * adjusted - 223.73 * adjusted.powi(2)).exp()
    } else if adjusted < 0.34 {
        1.0 - (-8.318 + 42.796 * adjusted - 59.938 * adjusted.powi(2)).exp()
    } else if adjusted < 0.6 {
        (0.9177 - 4.279 * adjusted - 1.38 * adjusted.powi(2)).exp()
    } else if adjusted < 10.0 {
        (1.2937 - 5.709 * adjusted + 0.0186 * adjusted.powi(2)).exp()
    } else {
        0.0
    };
    Some(AndersonDarling {
        statistic,
        adjusted,
        p_value: p_value.clamp(0.0, 1.0),
    })
}

/// Least-squares line of distinct count against size within a band; the
/// band mean when every size is equal.
fn band_trend(band: &[&ObjectRecord], mean: f64) -> impl Fn(u64) -> f64 {
    let n = band.len() as f64;
    let mean_s = band.iter().map(|o| o.size_bits as f64).sum::<f64>() / n;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for o in band {
        let dx = o.size_bits as f64 - mean_s;
        sxx += dx * dx;
        sxy += dx * (o.distinct_components() as f64 - mean);
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    move |size| mean + slope * (size as f64 - mean_s)
}

/// Normality of per-object distinct-component counts.
///
/// Objects in the size window are sorted by size and split into
/// equal-count bands; each count is centered on its band's linear trend in
/// size and scaled by `√ĉ·s`, where `ĉ` is the least-squares fit of squared
/// deviations against `s²` through the origin.
pub fn erdos_kac_check(
    corpus: &Corpus,
    options: &ErdosKacOptions,
) -> Result<NormalityReport, AnalysisError> {
    let mut selected: Vec<&ObjectRecord> = corpus
        .objects()
        .iter()
        .filter(|o| options.min_size_bits.is_none_or(|m| o.size_bits >= m))
        .filter(|o| options.max_size_bits.is_none_or(|m| o.size_bits <= m))
        .collect();
    if selected.len() < MIN_NORMALITY_SAMPLE {
        return Err(AnalysisError::InsufficientSample {
            needed: MIN_NORMALITY_SAMPLE,
            got: selected.len(),
        });
    }
    selected.sort_by(|a, b| a.size_bits.cmp(&b.size_bits).then_with(|| a.cmp(b)));

    let n = selected.len();
    let band_count = options.bands.clamp(1, n);
    let mut bands = Vec::with_capacity(band_count);
    let mut deviations = Vec::with_capacity(n);
    let mut start = 0;
    for b in 0..band_count {
        let len = n / band_count + usize::from(b < n % band_count);
        let band = &selected[start..start + len];
        let mean = band
            .iter()
            .map(|o| o.distinct_components() as f64)
            .sum::<f64>()
            / len as f64;
        let trend = band_trend(band, mean);
        deviations.extend(
            band.iter()
                .map(|o| o.distinct_components() as f64 - trend(o.size_bits)),
        );
        bands.push(BandSummary {
            min_size_bits: band[0].size_bits,
            max_size_bits: band[len - 1].size_bits,
            count: len,
            mean_distinct: mean,
        });
        start += len;
    }

    let sizes: Vec<f64> = selected.iter().map(|o| o.size_bits as f64).collect();
    let numerator: f64 = deviations
        .iter()
        .zip(&sizes)
        .map(|(d, s)| d * d * s * s)
        .sum();
    let denominator: f64 = sizes.iter().map(|s| s.powi(4)).sum();
    let c_hat = numerator / denominator;

    let mut report = NormalityReport {
        sample_size: n,
        normalized_values: Vec::new(),
        statistic: None,
        p_value: None,
        significance: options.significance,
        pass: false,
        degenerate: true,
        c_hat,
        bands,
    };
    if !(c_hat > 0.0 && c_hat.is_finite()) {
        return Ok(report);
    }
    let scale = c_hat.sqrt();
    report.normalized_values = deviations
        .iter()
        .zip(&sizes)
        .map(|(d, s)| d / (scale * s))
        .collect();
    if let Some(ad) = anderson_darling(&report.normalized_values) {
        report.degenerate = false;
        report.statistic = Some(ad.statistic);
        report.p_value = Some(ad.p_value);
        report.pass = ad.p_value >= options.significance;
    }
    Ok(report)
}
