//! simulate -> analyze -> report into a directory, as the binary does.
//!
//! `cargo run --example pipeline -- out`

use std::path::PathBuf;

use reuselaw::cli::{cmd_analyze, cmd_report, cmd_simulate, AnalyzeOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = PathBuf::from(
        std::env::args()
            .nth(1)
            .unwrap_or_else(|| "pipeline-out".into()),
    );
    let config = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs/example.toml");

    let simulation = cmd_simulate(&config, &out.join("sim"))?;
    println!("simulated ratio {:.4}", simulation.summary.ratio);
    if let Some(curve) = &simulation.incompleteness {
        for point in curve {
            println!(
                "  top-{:<4} mean ratio {:.4}",
                point.prefix, point.mean_ratio
            );
        }
    }

    let analysis = cmd_analyze(&AnalyzeOptions::new(
        out.join("sim/corpus.jsonl"),
        out.join("ana"),
    ))?;
    for (name, error) in analysis.report.failures() {
        println!("{name} failed: {error}");
    }
    let summary = cmd_report(&analysis.report_path, &out.join("report"))?;
    for path in summary.written {
        println!("wrote {}", path.display());
    }
    Ok(())
}
