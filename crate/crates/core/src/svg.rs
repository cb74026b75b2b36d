//! Minimal deterministic SVG 1.1 line, scatter and bar charts.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 56.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Scale {
    Linear,
    Log10,
}

#[derive(Debug, Clone)]
pub(crate) struct Axis {
    pub scale: Scale,
    pub label: String,
    pub min: f64,
    pub max: f64,
}

impl Axis {
    /// Range covering `values`, padded to whole decades on log scales.
    pub fn fitted(scale: Scale, label: &str, values: impl IntoIterator<Item = f64>) -> Self {
        let mut min = f64::INFINITY;
        let mut max = f64::NEG_INFINITY;
        for v in values {
            if !v.is_finite() || (scale == Scale::Log10 && v <= 0.0) {
                continue;
            }
            min = min.min(v);
            max = max.max(v);
        }
        if !min.is_finite() {
            (min, max) = match scale {
                Scale::Linear => (0.0, 1.0),
                Scale::Log10 => (1.0, 10.0),
            };
        }
        match scale {
            Scale::Log10 => {
                min = 10f64.powf(min.log10().floor());
                max = 10f64.powf(max.log10().ceil());
                if max <= min {
                    max = min * 10.0;
                }
            }
            Scale::Linear => {
                if max <= min {
                    min -= 0.5;
                    max += 0.5;
                }
                let pad = (max - min) * 0.05;
                min -= pad;
                max += pad;
            }
        }
        Self {
            scale,
            label: label.to_owned(),
            min,
            max,
        }
    }

    fn unit(&self, v: f64) -> f64 {
        match self.scale {
            Scale::Linear => (v - self.min) / (self.max - self.min),
            Scale::Log10 => (v.log10() - self.min.log10()) / (self.max.log10() - self.min.log10()),
        }
    }

    fn ticks(&self) -> Vec<f64> {
        match self.scale {
            Scale::Log10 => {
                let lo = self.min.log10().round() as i32;
                let hi = self.max.log10().round() as i32;
                let step = ((hi - lo) as f64 / 8.0).ceil().max(1.0) as i32;
                (lo..=hi)
                    .step_by(step as usize)
                    .map(|e| 10f64.powi(e))
                    .collect()
            }
            Scale::Linear => {
                let span = self.max - self.min;
                let raw = span / 6.0;
                let mag = 10f64.powf(raw.log10().floor());
                let step = [1.0, 2.0, 5.0, 10.0]
                    .iter()
                    .map(|m| m * mag)
                    .find(|s| *s >= raw)
                    .unwrap_or(10.0 * mag);
                let first = (self.min / step).ceil() as i64;
                let last = (self.max / step).floor() as i64;
                (first..=last).map(|i| i as f64 * step).collect()
            }
        }
    }
}

fn tick_label(v: f64, scale: Scale) -> String {
    match scale {
        Scale::Log10 => {
            let e = v.log10().round() as i32;
            if (0..=3).contains(&e) {
                format!("{}", 10i64.pow(e as u32))
            } else {
                format!("1e{e}")
            }
        }
        Scale::Linear => {
            let rounded = (v * 1e6).round() / 1e6;
            if rounded == 0.0 {
                "0".to_owned()
            } else {
                format!("{rounded}")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) enum Mark {
    Line {
        points: Vec<(f64, f64)>,
        color: &'static str,
        dashed: bool,
        label: String,
    },
    Points {
        points: Vec<(f64, f64)>,
        color: &'static str,
        label: String,
    },
    /// `(left, right, height)` per bar.
    Bars {
        bars: Vec<(f64, f64, f64)>,
        color: &'static str,
        label: String,
    },
}

impl Mark {
    fn label(&self) -> &str {
        match self {
            Mark::Line { label, .. } | Mark::Points { label, .. } | Mark::Bars { label, .. } => {
                label
            }
        }
    }

    fn color(&self) -> &'static str {
        match self {
            Mark::Line { color, .. } | Mark::Points { color, .. } | Mark::Bars { color, .. } => {
                color
            }
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Chart {
    pub title: String,
    pub x: Axis,
    pub y: Axis,
    pub marks: Vec<Mark>,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

impl Chart {
    fn px(&self, x: f64) -> f64 {
        LEFT + self.x.unit(x) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - self.y.unit(y) * (HEIGHT - TOP - BOTTOM)
    }

    fn drawable(&self, (x, y): (f64, f64)) -> bool {
        let ok = |v: f64, axis: &Axis| v.is_finite() && (axis.scale == Scale::Linear || v > 0.0);
        ok(x, &self.x) && ok(y, &self.y)
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let plot_w = WIDTH - LEFT - RIGHT;
        let plot_h = HEIGHT - TOP - BOTTOM;
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(
            s,
            r#"<defs><clipPath id="plot"><rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}"/></clipPath></defs>"#
        );
        let _ = writeln!(
            s,
            r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="24" text-anchor="middle" font-size="15">{}</text>"#,
            LEFT + plot_w / 2.0,
            escape(&self.title)
        );

        for t in self.x.ticks() {
            let x = self.px(t);
            let _ = writeln!(
                s,
                r##"<line x1="{x:.2}" y1="{TOP}" x2="{x:.2}" y2="{:.2}" stroke="#e0e0e0"/>"##,
                HEIGHT - BOTTOM
            );
            let _ = writeln!(
                s,
                r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
                HEIGHT - BOTTOM + 16.0,
                tick_label(t, self.x.scale)
            );
        }
        for t in self.y.ticks() {
            let y = self.py(t);
            let _ = writeln!(
                s,
                r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#e0e0e0"/>"##,
                WIDTH - RIGHT
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
                LEFT - 6.0,
                y + 4.0,
                tick_label(t, self.y.scale)
            );
        }
        let _ = writeln!(
            s,
            r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + plot_w / 2.0,
            HEIGHT - 14.0,
            escape(&self.x.label)
        );
        let _ = writeln!(
            s,
            r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
            TOP + plot_h / 2.0,
            TOP + plot_h / 2.0,
            escape(&self.y.label)
        );

        let _ = writeln!(s, r#"<g clip-path="url(#plot)">"#);
        for mark in &self.marks {
            self.render_mark(&mut s, mark);
        }
        let _ = writeln!(s, "</g>");

        let labelled = self.marks.iter().filter(|m| !m.label().is_empty());
        for (i, mark) in labelled.enumerate() {
            let y = TOP + 14.0 + 16.0 * i as f64;
            let x = WIDTH - RIGHT - 180.0;
            let _ = writeln!(
                s,
                r#"<rect x="{x:.2}" y="{:.2}" width="12" height="4" fill="{}"/>"#,
                y - 6.0,
                mark.color()
            );
            let _ = writeln!(
                s,
                r#"<text x="{:.2}" y="{y:.2}">{}</text>"#,
                x + 18.0,
                escape(mark.label())
            );
        }
        s.push_str("</svg>\n");
        s
    }

    fn render_mark(&self, s: &mut String, mark: &Mark) {
        match mark {
            Mark::Line {
                points,
                color,
                dashed,
                ..
            } => {
                let coords: Vec<String> = points
                    .iter()
                    .filter(|p| self.drawable(**p))
                    .map(|&(x, y)| format!("{:.2},{:.2}", self.px(x), self.py(y)))
                    .collect();
                if coords.len() < 2 {
                    return;
                }
                let dash = if *dashed {
                    r#" stroke-dasharray="6 4""#
                } else {
                    ""
                };
                let _ = writeln!(
                    s,
                    r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash}/>"#,
                    coords.join(" ")
                );
            }
            Mark::Points { points, color, .. } => {
                for &(x, y) in points.iter().filter(|p| self.drawable(**p)) {
                    let _ = writeln!(
                        s,
                        r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#,
                        self.px(x),
                        self.py(y)
                    );
                }
            }
            Mark::Bars { bars, color, .. } => {
                let base = self.py(self.y.min.max(0.0));
                for &(left, right, height) in bars {
                    let (x0, x1) = (self.px(left), self.px(right));
                    let top = self.py(height);
                    let _ = writeln!(
                        s,
                        r#"<rect x="{x0:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="{color}" stroke="white"/>"#,
                        (x1 - x0).max(0.0),
                        (base - top).max(0.0)
                    );
                }
            }
        }
    }
}
