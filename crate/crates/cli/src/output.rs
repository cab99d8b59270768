//! Deterministic CSV/JSON/SVG rendering for sweep records.
//!
//! All numeric formatting is fixed-rule (no locale, no hash ordering), so a
//! repeated run with the same configuration produces byte-identical files.

use std::fs;
use std::path::{Path, PathBuf};

use crate::config::{OutputKind, SweepPlan};
use crate::sweep::{swept_axis_label, swept_value, SweepRecord};
use crate::CliError;

/// Formats one numeric cell: up to 15 significant digits, plain decimal
/// notation down to 1e-4 and scientific below that, trailing zeros trimmed.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs();
    let text = if magnitude >= 1e-4 {
        let integer_digits = magnitude.log10().floor() as i64 + 1;
        let decimals = (15 - integer_digits).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.14e}")
    };
    trim_number(&text)
}

fn trim_number(text: &str) -> String {
    let (mantissa, exponent) = match text.find('e') {
        Some(pos) => (&text[..pos], &text[pos..]),
        None => (text, ""),
    };
    let mantissa = if mantissa.contains('.') {
        mantissa.trim_end_matches('0').trim_end_matches('.')
    } else {
        mantissa
    };
    format!("{mantissa}{exponent}")
}

fn cell(value: Option<f64>) -> String {
    value.map(format_value).unwrap_or_default()
}

/// CSV header without the optional trailing claim column.
pub const CSV_HEADER: &str = "gamma,gamma1,gamma2,v2,p2,e2,sum,v2_cf,p2_cf,e2_cf";

pub fn csv_text(records: &[SweepRecord]) -> String {
    let with_claim = records
        .iter()
        .any(|r| r.v2_paper_claim_unverified.is_some());
    let mut out = String::from(CSV_HEADER);
    if with_claim {
        out.push_str(",v2_paper_claim_unverified");
    }
    out.push('\n');
    for record in records {
        let mut row = vec![
            cell(record.gamma),
            cell(record.gamma1),
            cell(record.gamma2),
            format_value(record.v2),
            format_value(record.p2),
            format_value(record.e2),
            format_value(record.sum),
            cell(record.v2_cf),
            cell(record.p2_cf),
            cell(record.e2_cf),
        ];
        if with_claim {
            row.push(cell(record.v2_paper_claim_unverified));
        }
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn json_text(records: &[SweepRecord]) -> String {
    let mut text = serde_json::to_string_pretty(records).expect("records always serialize");
    text.push('\n');
    text
}

const VIEW_W: f64 = 640.0;
const VIEW_H: f64 = 440.0;
const PLOT_LEFT: f64 = 70.0;
const PLOT_RIGHT: f64 = 610.0;
const PLOT_TOP: f64 = 34.0;
const PLOT_BOTTOM: f64 = 380.0;
const Y_MAX: f64 = 1.05;

fn x_pos(t: f64, min: f64, max: f64) -> f64 {
    if max > min {
        PLOT_LEFT + (t - min) / (max - min) * (PLOT_RIGHT - PLOT_LEFT)
    } else {
        PLOT_LEFT
    }
}

fn y_pos(v: f64) -> f64 {
    let clamped = v.clamp(0.0, Y_MAX);
    PLOT_BOTTOM - clamped / Y_MAX * (PLOT_BOTTOM - PLOT_TOP)
}

/// A simple multi-line chart: the three squared measures plus the sum line
/// pinned at 1, with the swept rate on the x axis.
pub fn svg_text(records: &[SweepRecord], plan: &SweepPlan) -> String {
    let xs: Vec<f64> = records.iter().map(|r| swept_value(r, plan)).collect();
    let x_min = xs.iter().copied().fold(f64::INFINITY, f64::min).min(0.0);
    let x_max = xs
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max)
        .max(x_min);
    let points = |extract: &dyn Fn(&SweepRecord) -> f64| -> String {
        records
            .iter()
            .zip(&xs)
            .map(|(r, &t)| format!("{:.2},{:.2}", x_pos(t, x_min, x_max), y_pos(extract(r))))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {VIEW_W} {VIEW_H}\" \
         font-family=\"sans-serif\" font-size=\"13\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"20\" text-anchor=\"middle\" font-size=\"15\">{} sweep</text>\n",
        VIEW_W / 2.0,
        plan.kind.as_str()
    ));

    // Horizontal grid lines and y tick labels.
    for tick in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let y = y_pos(tick);
        svg.push_str(&format!(
            "<line x1=\"{PLOT_LEFT}\" y1=\"{y:.2}\" x2=\"{PLOT_RIGHT}\" y2=\"{y:.2}\" \
             stroke=\"#dddddd\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.2}\" text-anchor=\"end\">{tick}</text>\n",
            PLOT_LEFT - 8.0,
            y + 4.0
        ));
    }
    // X ticks at the ends and midpoint of the sweep.
    for tick in [x_min, 0.5 * (x_min + x_max), x_max] {
        let x = x_pos(tick, x_min, x_max);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{PLOT_BOTTOM}\" x2=\"{x:.2}\" y2=\"{}\" \
             stroke=\"#555555\"/>\n",
            PLOT_BOTTOM + 6.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{}\" text-anchor=\"middle\">{:.2}</text>\n",
            PLOT_BOTTOM + 22.0,
            tick
        ));
    }
    // Axes.
    svg.push_str(&format!(
        "<line x1=\"{PLOT_LEFT}\" y1=\"{PLOT_TOP}\" x2=\"{PLOT_LEFT}\" y2=\"{PLOT_BOTTOM}\" \
         stroke=\"#555555\"/>\n"
    ));
    svg.push_str(&format!(
        "<line x1=\"{PLOT_LEFT}\" y1=\"{PLOT_BOTTOM}\" x2=\"{PLOT_RIGHT}\" \
         y2=\"{PLOT_BOTTOM}\" stroke=\"#555555\"/>\n"
    ));

    type Curve<'a> = (&'a str, &'a str, &'a dyn Fn(&SweepRecord) -> f64, &'a str);
    let curves: [Curve; 4] = [
        ("v2", "#1f77b4", &|r| r.v2, ""),
        ("p2", "#d62728", &|r| r.p2, ""),
        ("e2", "#2ca02c", &|r| r.e2, ""),
        ("sum", "#7f7f7f", &|r| r.sum, " stroke-dasharray=\"6 4\""),
    ];
    for (_, color, extract, extra) in &curves {
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"{extra} \
             points=\"{}\"/>\n",
            points(extract)
        ));
    }
    // Legend, top right of the plot area.
    for (i, (name, color, _, extra)) in curves.iter().enumerate() {
        let y = PLOT_TOP + 16.0 + 18.0 * i as f64;
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y:.2}\" x2=\"{}\" y2=\"{y:.2}\" stroke=\"{color}\" \
             stroke-width=\"2\"{extra}/>\n",
            PLOT_RIGHT - 90.0,
            PLOT_RIGHT - 62.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{y:.2}\">{name}</text>\n",
            PLOT_RIGHT - 54.0,
        ));
    }
    // Axis labels.
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        (PLOT_LEFT + PLOT_RIGHT) / 2.0,
        VIEW_H - 14.0,
        swept_axis_label(plan)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {})\">\
         squared measure</text>\n",
        (PLOT_TOP + PLOT_BOTTOM) / 2.0,
        (PLOT_TOP + PLOT_BOTTOM) / 2.0
    ));
    svg.push_str("</svg>\n");
    svg
}

/// Writes the requested output files into `out_dir` and returns their paths
/// in the order written.
pub fn write_outputs(
    records: &[SweepRecord],
    plan: &SweepPlan,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, CliError> {
    if plan.outputs.is_empty() {
        return Ok(Vec::new());
    }
    fs::create_dir_all(out_dir).map_err(|e| {
        CliError::Io(format!(
            "cannot create output directory {}: {e}",
            out_dir.display()
        ))
    })?;
    let mut written = Vec::new();
    for output in &plan.outputs {
        let (name, text) = match output {
            OutputKind::Csv => ("sweep.csv", csv_text(records)),
            OutputKind::Json => ("sweep.json", json_text(records)),
            OutputKind::Svg => ("sweep.svg", svg_text(records, plan)),
        };
        let path = out_dir.join(name);
        fs::write(&path, text)
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}
