use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{display, ensure_dir, write_json, CliError, RunManifest, EXIT_ANALYSIS, EXIT_OK};
use crate::analysis::{
    check_rate_bound, erdos_kac_check, fit_heaps, fit_zipf, rank_frequency, AnalysisError,
    ErdosKacOptions, FitResult, HeapsFit, NormalityReport, RankEntry, RateBound, DEFAULT_MIN_COUNT,
};
use crate::ingest::{load_corpus, Corpus};

/// Result of one analysis: `{"ok": {...}}` or `{"error": "..."}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Section<T> {
    Ok(T),
    Error(String),
}

impl<T> Section<T> {
    fn from_result(result: Result<T, AnalysisError>) -> Self {
        match result {
            Ok(value) => Section::Ok(value),
            Err(e) => Section::Error(e.to_string()),
        }
    }

    pub fn ok(&self) -> Option<&T> {
        match self {
            Section::Ok(value) => Some(value),
            Section::Error(_) => None,
        }
    }

    pub fn is_error(&self) -> bool {
        matches!(self, Section::Error(_))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZipfSection {
    pub min_count: u64,
    pub fit: FitResult,
    pub table: Vec<RankEntry>,
}

/// The consolidated analysis report (`report.json`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub tool_version: String,
    pub corpus: String,
    pub objects: usize,
    pub components: usize,
    pub total_bits: u64,
    pub total_refs: u64,
    pub rank_offset: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zipf: Option<Section<ZipfSection>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub heaps: Option<Section<HeapsFit>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<Section<RateBound>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erdos_kac: Option<Section<NormalityReport>>,
}

impl AnalysisReport {
    pub fn failures(&self) -> Vec<(&'static str, &str)> {
        let mut out = Vec::new();
        if let Some(Section::Error(e)) = &self.zipf {
            out.push(("zipf", e.as_str()));
        }
        if let Some(Section::Error(e)) = &self.heaps {
            out.push(("heaps", e.as_str()));
        }
        if let Some(Section::Error(e)) = &self.bound {
            out.push(("bound", e.as_str()));
        }
        if let Some(Section::Error(e)) = &self.erdos_kac {
            out.push(("erdos_kac", e.as_str()));
        }
        out
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeOptions {
    pub corpus: PathBuf,
    pub out_dir: PathBuf,
    pub zipf: bool,
    pub heaps: bool,
    pub bound: bool,
    pub erdos_kac: bool,
    pub rank_offset: u64,
    pub min_count: u64,
    pub heaps_seed: u64,
    pub normality: ErdosKacOptions,
}

impl AnalyzeOptions {
    /// All analyses with default parameters.
    pub fn new(corpus: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        Self {
            corpus: corpus.into(),
            out_dir: out_dir.into(),
            zipf: false,
            heaps: false,
            bound: false,
            erdos_kac: false,
            rank_offset: 0,
            min_count: DEFAULT_MIN_COUNT,
            heaps_seed: 0,
            normality: ErdosKacOptions::default(),
        }
    }

    fn selected(&self) -> [bool; 4] {
        let any = self.zipf || self.heaps || self.bound || self.erdos_kac;
        if any {
            [self.zipf, self.heaps, self.bound, self.erdos_kac]
        } else {
            [true; 4]
        }
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeOutcome {
    pub report: AnalysisReport,
    pub report_path: PathBuf,
}

impl AnalyzeOutcome {
    /// 3 when any selected analysis failed its preconditions.
    pub fn exit_code(&self) -> i32 {
        if self.report.failures().is_empty() {
            EXIT_OK
        } else {
            EXIT_ANALYSIS
        }
    }
}

pub(crate) fn analyze_corpus(
    corpus: &Corpus,
    name: &str,
    options: &AnalyzeOptions,
) -> AnalysisReport {
    let [zipf, heaps, bound, erdos_kac] = options.selected();
    let table = rank_frequency(corpus, options.rank_offset);
    AnalysisReport {
        tool_version: super::TOOL_VERSION.to_owned(),
        corpus: name.to_owned(),
        objects: corpus.len(),
        components: corpus.component_count(),
        total_bits: corpus.total_bits(),
        total_refs: corpus.total_refs(),
        rank_offset: options.rank_offset,
        zipf: zipf.then(|| {
            Section::from_result(table.clone().and_then(|t| {
                let fit = fit_zipf(&t, options.min_count)?;
                Ok(ZipfSection {
                    min_count: options.min_count,
                    fit,
                    table: t.entries().to_vec(),
                })
            }))
        }),
        heaps: heaps.then(|| Section::from_result(fit_heaps(corpus, options.heaps_seed))),
        bound: bound.then(|| {
            Section::from_result(table.as_ref().map(check_rate_bound).map_err(Clone::clone))
        }),
        erdos_kac: erdos_kac
            .then(|| Section::from_result(erdos_kac_check(corpus, &options.normality))),
    }
}

/// Loads a corpus, runs the selected analyses (all when none is selected)
/// and writes `report.json`. Failed analyses are recorded in the report
/// without stopping the others.
pub fn cmd_analyze(options: &AnalyzeOptions) -> Result<AnalyzeOutcome, CliError> {
    let corpus = load_corpus(&options.corpus).map_err(|e| CliError::input(e.to_string()))?;
    let report = analyze_corpus(&corpus, &display(&options.corpus), options);
    for (name, error) in report.failures() {
        log::warn!("{name}: {error}");
    }

    ensure_dir(&options.out_dir)?;
    let report_path = options.out_dir.join("report.json");
    write_json(&report_path, &report)?;

    let mut manifest = RunManifest::new("analyze");
    manifest.config = serde_json::to_value(options).expect("options serialize");
    manifest.seeds = vec![options.heaps_seed];
    manifest.inputs = vec![display(&options.corpus)];
    manifest.outputs = vec![display(&report_path)];
    manifest.write(&options.out_dir)?;
    Ok(AnalyzeOutcome {
        report,
        report_path,
    })
}

pub(crate) fn load_report(path: &Path) -> Result<AnalysisReport, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("{}: invalid report: {e}", path.display())))
}
