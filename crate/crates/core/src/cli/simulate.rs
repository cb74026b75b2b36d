use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{display, ensure_dir, write_json, CliError, RunManifest, SimulationConfig};
use crate::domainsim::{
    incompleteness_curve, mean_ratio, mean_reuse_proportion, run_trials, savings_profile,
    simulated_corpus, trial_seeds, Library, SimError, TrialOutcome,
};
use crate::ingest::{build_corpus, save_corpus};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationSummary {
    /// Mean compression ratio over trials.
    pub ratio: f64,
    pub reuse_proportion: f64,
    pub mean_planted_fraction: f64,
    pub max_n_useful: usize,
    pub total_references: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub prefix: usize,
    pub mean_ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config: SimulationConfig,
    pub summary: SimulationSummary,
    pub savings_profile: BTreeMap<usize, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incompleteness: Option<Vec<CurvePoint>>,
    pub trials: Vec<TrialOutcome>,
}

fn sim_error(e: SimError) -> CliError {
    CliError::usage(e.to_string())
}

pub(crate) fn summarize(outcomes: &[TrialOutcome]) -> SimulationSummary {
    SimulationSummary {
        ratio: mean_ratio(outcomes),
        reuse_proportion: mean_reuse_proportion(outcomes),
        mean_planted_fraction: outcomes.iter().map(|o| o.planted_fraction).sum::<f64>()
            / outcomes.len().max(1) as f64,
        max_n_useful: outcomes
            .iter()
            .map(|o| o.report.n_useful)
            .max()
            .unwrap_or(0),
        total_references: outcomes.iter().flat_map(|o| o.program.refs.values()).sum(),
    }
}

/// Runs a configured experiment and writes `corpus.jsonl` and
/// `simulation.json` into the output directory.
pub fn cmd_simulate(config_path: &Path, out_dir: &Path) -> Result<SimulationReport, CliError> {
    let config = SimulationConfig::load(config_path)?;
    let spec = config.domain();
    let library = Library::build(&spec).map_err(sim_error)?;
    let compressor = config.compressor();
    let outcomes =
        run_trials(&spec, &library, config.s, config.trials, compressor).map_err(sim_error)?;

    let incompleteness = match &config.prefixes {
        Some(prefixes) => Some(
            incompleteness_curve(&spec, prefixes, config.s, config.trials, compressor)
                .map_err(sim_error)?
                .into_iter()
                .map(|(prefix, mean_ratio)| CurvePoint { prefix, mean_ratio })
                .collect(),
        ),
        None => None,
    };
    let reports: Vec<_> = outcomes.iter().map(|o| o.report.clone()).collect();
    let report = SimulationReport {
        config: config.clone(),
        summary: summarize(&outcomes),
        savings_profile: savings_profile(&reports),
        incompleteness,
        trials: outcomes,
    };

    ensure_dir(out_dir)?;
    let corpus_path: PathBuf = out_dir.join("corpus.jsonl");
    let report_path: PathBuf = out_dir.join("simulation.json");
    let corpus = build_corpus(simulated_corpus(&report.trials));
    save_corpus(&corpus, &corpus_path).map_err(|e| CliError::usage(e.to_string()))?;
    write_json(&report_path, &report)?;

    let mut manifest = RunManifest::new("simulate");
    manifest.config = serde_json::to_value(&config).expect("config serializes");
    manifest.seeds = std::iter::once(config.seed)
        .chain(trial_seeds(config.seed, config.trials))
        .collect();
    manifest.inputs = vec![display(config_path)];
    manifest.outputs = vec![display(&corpus_path), display(&report_path)];
    manifest.write(out_dir)?;
    Ok(report)
}
