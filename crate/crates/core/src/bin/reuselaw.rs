use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use reuselaw::analysis::{ErdosKacOptions, DEFAULT_MIN_COUNT};
use reuselaw::cli::{
    cmd_analyze, cmd_report, cmd_scan, cmd_simulate, AnalyzeOptions, CliError, ScanOptions,
    EXIT_OK, EXIT_USAGE,
};

#[derive(Parser)]
#[command(
    name = "reuselaw",
    version,
    about = "Measure component reuse in software corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract reference records from ELF binaries and text dumps.
    Scan {
        /// Directories or files to walk.
        #[arg(required = true)]
        roots: Vec<PathBuf>,
        #[arg(short, long, default_value = "out")]
        out: PathBuf,
        /// Extension of tab-separated reference dumps (repeatable).
        #[arg(long = "text-ext", default_values_t = ["refs".to_owned(), "tsv".to_owned()])]
        text_ext: Vec<String>,
        /// Fail on the first unparsable file or line.
        #[arg(long)]
        strict: bool,
    },
    /// Run a configured domain simulation.
    Simulate {
        config: PathBuf,
        #[arg(short, long, default_value = "out")]
        out: PathBuf,
    },
    /// Fit reuse laws to a corpus.
    Analyze(AnalyzeArgs),
    /// Render charts and tables from an analysis report.
    Report {
        report: PathBuf,
        #[arg(short, long, default_value = "out")]
        out: PathBuf,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    corpus: PathBuf,
    #[arg(short, long, default_value = "out")]
    out: PathBuf,
    /// Run only the selected analyses; all run when none is given.
    #[arg(long)]
    zipf: bool,
    #[arg(long)]
    heaps: bool,
    #[arg(long)]
    bound: bool,
    #[arg(long = "erdos-kac")]
    erdos_kac: bool,
    /// Added to every component rank before fitting.
    #[arg(long, default_value_t = 0)]
    rank_offset: u64,
    #[arg(long, default_value_t = DEFAULT_MIN_COUNT)]
    min_count: u64,
    /// Seed for the object order of the vocabulary growth curve.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = ErdosKacOptions::default().significance)]
    significance: f64,
    #[arg(long, default_value_t = ErdosKacOptions::default().bands)]
    bands: usize,
    #[arg(long)]
    min_size_bits: Option<u64>,
    #[arg(long)]
    max_size_bits: Option<u64>,
}

fn run(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Scan {
            roots,
            out,
            text_ext,
            strict,
        } => {
            let summary = cmd_scan(&ScanOptions {
                roots,
                out_dir: out,
                text_extensions: text_ext,
                strict,
            })?;
            println!(
                "{} objects, {} components, {} skipped -> {}",
                summary.objects,
                summary.components,
                summary.failures,
                summary.corpus_path.display()
            );
        }
        Command::Simulate { config, out } => {
            let report = cmd_simulate(&config, &out)?;
            println!(
                "{} trials, mean ratio {:.4}, reuse {:.4}",
                report.trials.len(),
                report.summary.ratio,
                report.summary.reuse_proportion
            );
        }
        Command::Analyze(args) => {
            let mut options = AnalyzeOptions::new(args.corpus, args.out);
            options.zipf = args.zipf;
            options.heaps = args.heaps;
            options.bound = args.bound;
            options.erdos_kac = args.erdos_kac;
            options.rank_offset = args.rank_offset;
            options.min_count = args.min_count;
            options.heaps_seed = args.seed;
            options.normality = ErdosKacOptions {
                significance: args.significance,
                bands: args.bands,
                min_size_bits: args.min_size_bits,
                max_size_bits: args.max_size_bits,
            };
            let outcome = cmd_analyze(&options)?;
            for (name, error) in outcome.report.failures() {
                eprintln!("{name}: {error}");
            }
            println!("{}", outcome.report_path.display());
            return Ok(outcome.exit_code());
        }
        Command::Report { report, out } => {
            let summary = cmd_report(&report, &out)?;
            for reason in &summary.skipped {
                eprintln!("skipped {reason}");
            }
            for path in &summary.written {
                println!("{}", path.display());
            }
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                EXIT_USAGE as u8
            } else {
                EXIT_OK as u8
            });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
