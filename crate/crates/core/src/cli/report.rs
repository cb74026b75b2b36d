use std::fmt::Write;
use std::path::{Path, PathBuf};

use super::analyze::{load_report, AnalysisReport, Section};
use super::{display, ensure_dir, write_bytes, CliError, RunManifest};
use crate::svg::{Axis, Chart, Mark, Scale};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportSummary {
    pub written: Vec<PathBuf>,
    /// Sections left out, with the reason.
    pub skipped: Vec<String>,
}

type Rendered = Result<(String, String), String>;
type Renderer = fn(&AnalysisReport) -> Rendered;

fn power_law(log_scale: f64, exponent: f64, x: f64) -> f64 {
    2f64.powf(log_scale) * x.powf(exponent)
}

fn zipf_outputs(report: &AnalysisReport) -> Rendered {
    let section = match &report.zipf {
        Some(Section::Ok(section)) => section,
        Some(Section::Error(e)) => return Err(format!("zipf: {e}")),
        None => return Err("zipf: not in report".into()),
    };
    let fitted = |rank: u64| power_law(section.fit.log_scale, -section.fit.exponent, rank as f64);

    let mut csv = String::from("rank,count,rate,fitted_count\n");
    for e in &section.table {
        let _ = writeln!(csv, "{},{},{},{}", e.rank, e.count, e.rate, fitted(e.rank));
    }

    let ranks: Vec<f64> = section.table.iter().map(|e| e.rank as f64).collect();
    let counts: Vec<f64> = section.table.iter().map(|e| e.count as f64).collect();
    let x = Axis::fitted(Scale::Log10, "rank n", ranks.iter().copied());
    let y = Axis::fitted(Scale::Log10, "references", counts.iter().copied());
    let top = section
        .table
        .first()
        .map_or(1.0, |e| (e.count * e.rank) as f64);
    let ends = [x.min, x.max];
    let mut marks = vec![Mark::Points {
        points: ranks.iter().copied().zip(counts.iter().copied()).collect(),
        color: "#1f77b4",
        label: "observed".into(),
    }];
    for (i, factor) in [0.1, 1.0, 10.0].into_iter().enumerate() {
        marks.push(Mark::Line {
            points: ends.iter().map(|&n| (n, top * factor / n)).collect(),
            color: "#aaaaaa",
            dashed: true,
            label: if i == 0 {
                "c/n guides".into()
            } else {
                String::new()
            },
        });
    }
    marks.push(Mark::Line {
        points: ends
            .iter()
            .map(|&n| {
                (
                    n,
                    power_law(section.fit.log_scale, -section.fit.exponent, n),
                )
            })
            .collect(),
        color: "#d62728",
        dashed: false,
        label: format!("fit a = {:.3}", section.fit.exponent),
    });
    let chart = Chart {
        title: format!("Rank-frequency ({} components)", report.components),
        x,
        y,
        marks,
    };
    Ok((chart.render(), csv))
}

fn heaps_outputs(report: &AnalysisReport) -> Rendered {
    let heaps = match &report.heaps {
        Some(Section::Ok(heaps)) => heaps,
        Some(Section::Error(e)) => return Err(format!("heaps: {e}")),
        None => return Err("heaps: not in report".into()),
    };
    let fitted = |bits: f64| power_law(heaps.fit.log_scale, heaps.fit.exponent, bits);

    let mut csv = String::from("bits,distinct,fitted\n");
    for p in &heaps.series {
        let _ = writeln!(csv, "{},{},{}", p.bits, p.distinct, fitted(p.bits as f64));
    }

    let points: Vec<(f64, f64)> = heaps
        .series
        .iter()
        .map(|p| (p.bits as f64, p.distinct as f64))
        .collect();
    let x = Axis::fitted(Scale::Log10, "corpus bits", points.iter().map(|p| p.0));
    let y = Axis::fitted(
        Scale::Log10,
        "distinct components",
        points.iter().map(|p| p.1),
    );
    let ends = [x.min, x.max];
    let chart = Chart {
        title: "Vocabulary growth".into(),
        marks: vec![
            Mark::Points {
                points,
                color: "#1f77b4",
                label: "observed".into(),
            },
            Mark::Line {
                points: ends.iter().map(|&b| (b, fitted(b))).collect(),
                color: "#d62728",
                dashed: false,
                label: format!("fit alpha = {:.3}", heaps.fit.exponent),
            },
        ],
        x,
        y,
    };
    Ok((chart.render(), csv))
}

fn erdos_kac_outputs(report: &AnalysisReport) -> Rendered {
    let normality = match &report.erdos_kac {
        Some(Section::Ok(normality)) => normality,
        Some(Section::Error(e)) => return Err(format!("erdos_kac: {e}")),
        None => return Err("erdos_kac: not in report".into()),
    };
    let values = &normality.normalized_values;
    let mut csv = String::from("index,normalized_value\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(csv, "{i},{v}");
    }

    let lo = values.iter().copied().fold(-4.0f64, f64::min).floor();
    let hi = values.iter().copied().fold(4.0f64, f64::max).ceil();
    let bins = ((hi - lo) * 4.0) as usize;
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for v in values {
        let i = (((v - lo) / width) as usize).min(bins - 1);
        counts[i] += 1;
    }
    let n = values.len().max(1) as f64;
    let bars: Vec<(f64, f64, f64)> = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let left = lo + i as f64 * width;
            (left, left + width, c as f64 / (n * width))
        })
        .collect();
    let density: Vec<(f64, f64)> = (0..=200)
        .map(|i| {
            let z = lo + (hi - lo) * i as f64 / 200.0;
            (
                z,
                (-0.5 * z * z).exp() / (2.0 * std::f64::consts::PI).sqrt(),
            )
        })
        .collect();
    let peak = bars.iter().map(|b| b.2).fold(0.4f64, f64::max);
    let verdict = match normality.p_value {
        Some(p) => format!("p = {p:.3}"),
        None => "degenerate".to_owned(),
    };
    let chart = Chart {
        title: format!("Normalized reference counts ({verdict})"),
        x: Axis::fitted(Scale::Linear, "z", [lo, hi]),
        y: Axis::fitted(Scale::Linear, "density", [0.0, peak]),
        marks: vec![
            Mark::Bars {
                bars,
                color: "#9ecae1",
                label: format!("{} objects", values.len()),
            },
            Mark::Line {
                points: density,
                color: "#d62728",
                dashed: false,
                label: "standard normal".into(),
            },
        ],
    };
    Ok((chart.render(), csv))
}

/// Renders an SVG chart and a CSV table for every successful section of
/// `report.json`.
pub fn cmd_report(report_path: &Path, out_dir: &Path) -> Result<ReportSummary, CliError> {
    let report = load_report(report_path)?;
    ensure_dir(out_dir)?;
    let mut written = Vec::new();
    let mut skipped = Vec::new();
    let renderers: [(&str, Renderer); 3] = [
        ("zipf", zipf_outputs),
        ("heaps", heaps_outputs),
        ("erdos_kac", erdos_kac_outputs),
    ];
    for (name, render) in renderers {
        match render(&report) {
            Ok((svg, csv)) => {
                for (ext, body) in [("svg", svg), ("csv", csv)] {
                    let path = out_dir.join(format!("{name}.{ext}"));
                    write_bytes(&path, body.as_bytes())?;
                    written.push(path);
                }
            }
            Err(reason) => {
                log::info!("skipping plot, {reason}");
                skipped.push(reason);
            }
        }
    }

    let mut manifest = RunManifest::new("report");
    manifest.config = serde_json::json!({ "skipped": skipped });
    manifest.inputs = vec![display(report_path)];
    manifest.outputs = written.iter().map(|p| display(p)).collect();
    manifest.write(out_dir)?;
    Ok(ReportSummary { written, skipped })
}
