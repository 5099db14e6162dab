//! Hand-rolled SVG reports: a reliability diagram with a probability
//! histogram panel, and horizontal importance bars. Output is a pure
//! function of the input values (fixed-precision coordinates, no
//! timestamps), so identical runs produce identical bytes.

use crate::eval::calibration::CalibrationReport;
use crate::eval::pipeline::ImportanceEntry;
use std::fmt::Write as _;

const PALETTE: [&str; 6] = [
    "#4c78a8", "#f58518", "#54a24b", "#e45756", "#72b7b2", "#9d755d",
];

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn fmt(v: f64) -> String {
    format!("{v:.2}")
}

/// Reliability curves (left) and predicted-probability histogram (right),
/// one color per class.
pub fn calibration_svg(report: &CalibrationReport, title: &str) -> String {
    // Curve panel geometry.
    let (cx, cy, cw, ch) = (70.0, 60.0, 380.0, 380.0);
    // Histogram panel geometry.
    let (hx, hy, hw, hh) = (530.0, 60.0, 330.0, 380.0);
    let mut s = String::new();
    s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"540\" viewBox=\"0 0 900 540\">\n");
    s.push_str("<rect width=\"900\" height=\"540\" fill=\"white\"/>\n");
    let _ = writeln!(
        s,
        "<text x=\"450\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{}</text>",
        escape(title)
    );

    let px = |p: f64| cx + p * cw;
    let py = |f: f64| cy + ch - f * ch;

    // Axes and the perfect-calibration diagonal.
    let _ = writeln!(
        s,
        "<rect x=\"{cx}\" y=\"{cy}\" width=\"{cw}\" height=\"{ch}\" fill=\"none\" stroke=\"#444\"/>"
    );
    let _ = writeln!(
        s,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#999\" stroke-dasharray=\"6 4\"/>",
        fmt(px(0.0)),
        fmt(py(0.0)),
        fmt(px(1.0)),
        fmt(py(1.0))
    );
    for tick in 0..=5 {
        let t = tick as f64 / 5.0;
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            fmt(px(t)),
            fmt(cy + ch + 18.0),
            fmt(t)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            fmt(cx - 6.0),
            fmt(py(t) + 4.0),
            fmt(t)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">mean predicted probability</text>",
        fmt(cx + cw / 2.0),
        fmt(cy + ch + 40.0)
    );
    let _ = writeln!(
        s,
        "<text x=\"22\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 22 {})\">fraction of positives</text>",
        fmt(cy + ch / 2.0),
        fmt(cy + ch / 2.0)
    );

    for (c, class) in report.classes.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        if !class.bins.is_empty() {
            let points: Vec<String> = class
                .bins
                .iter()
                .map(|b| format!("{},{}", fmt(px(b.mean_predicted)), fmt(py(b.fraction_positive))))
                .collect();
            let _ = writeln!(
                s,
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"2\"/>",
                points.join(" ")
            );
            for b in &class.bins {
                let _ = writeln!(
                    s,
                    "<circle cx=\"{}\" cy=\"{}\" r=\"3.5\" fill=\"{color}\"/>",
                    fmt(px(b.mean_predicted)),
                    fmt(py(b.fraction_positive))
                );
            }
        }
        // Legend row.
        let ly = cy + 10.0 + c as f64 * 18.0;
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{color}\"/>",
            fmt(cx + 10.0),
            fmt(ly - 10.0)
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>",
            fmt(cx + 28.0),
            fmt(ly),
            escape(&class.class_name)
        );
    }

    // Histogram: grouped bars, height scaled to the global maximum count.
    let max_count = report
        .classes
        .iter()
        .flat_map(|c| c.histogram.iter())
        .cloned()
        .max()
        .unwrap_or(0)
        .max(1) as f64;
    let n_bins = report.n_bins.max(1);
    let k = report.classes.len().max(1);
    let bin_w = hw / n_bins as f64;
    let bar_w = (bin_w - 4.0) / k as f64;
    let _ = writeln!(
        s,
        "<rect x=\"{hx}\" y=\"{hy}\" width=\"{hw}\" height=\"{hh}\" fill=\"none\" stroke=\"#444\"/>"
    );
    for (c, class) in report.classes.iter().enumerate() {
        let color = PALETTE[c % PALETTE.len()];
        for (b, &count) in class.histogram.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let bar_h = count as f64 / max_count * (hh - 10.0);
            let x = hx + b as f64 * bin_w + 2.0 + c as f64 * bar_w;
            let y = hy + hh - bar_h;
            let _ = writeln!(
                s,
                "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{color}\" fill-opacity=\"0.85\"/>",
                fmt(x),
                fmt(y),
                fmt(bar_w.max(1.0)),
                fmt(bar_h)
            );
        }
    }
    for tick in 0..=5 {
        let t = tick as f64 / 5.0;
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            fmt(hx + t * hw),
            fmt(hy + hh + 18.0),
            fmt(t)
        );
    }
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">predicted probability</text>",
        fmt(hx + hw / 2.0),
        fmt(hy + hh + 40.0)
    );
    s.push_str("</svg>\n");
    s
}

/// Horizontal bars, one per feature, longest first (input order is kept).
pub fn importance_svg(entries: &[ImportanceEntry], title: &str) -> String {
    let row_h = 26.0;
    let top = 50.0;
    let label_w = 330.0;
    let bar_area = 340.0;
    let height = top + entries.len() as f64 * row_h + 20.0;
    let max_imp = entries
        .iter()
        .map(|e| e.importance)
        .fold(0.0, f64::max)
        .max(1e-12);

    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"{}\" viewBox=\"0 0 760 {}\">",
        fmt(height),
        fmt(height)
    );
    let _ = writeln!(s, "<rect width=\"760\" height=\"{}\" fill=\"white\"/>", fmt(height));
    let _ = writeln!(
        s,
        "<text x=\"380\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">{}</text>",
        escape(title)
    );
    for (i, entry) in entries.iter().enumerate() {
        let y = top + i as f64 * row_h;
        let bar = entry.importance / max_imp * bar_area;
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">{} ({})</text>",
            fmt(label_w - 8.0),
            fmt(y + 16.0),
            escape(&entry.label),
            escape(&entry.feature)
        );
        let _ = writeln!(
            s,
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"16\" fill=\"{}\"/>",
            fmt(label_w),
            fmt(y + 4.0),
            fmt(bar.max(0.5)),
            PALETTE[0]
        );
        let _ = writeln!(
            s,
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{:.4}</text>",
            fmt(label_w + bar.max(0.5) + 6.0),
            fmt(y + 16.0),
            entry.importance
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::calibration::{CalibrationBin, ClassCalibration};

    fn sample_report() -> CalibrationReport {
        CalibrationReport {
            n_bins: 10,
            classes: vec![ClassCalibration {
                class_name: "A_PWA".to_string(),
                bins: vec![CalibrationBin {
                    bin_low: 0.9,
                    bin_high: 1.0,
                    mean_predicted: 0.97,
                    fraction_positive: 0.95,
                    count: 40,
                }],
                histogram: vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 40],
            }],
        }
    }

    #[test]
    fn calibration_svg_is_deterministic_and_well_formed() {
        let report = sample_report();
        let a = calibration_svg(&report, "author framework");
        let b = calibration_svg(&report, "author framework");
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.trim_end().ends_with("</svg>"));
        assert!(a.contains("A_PWA"));
        assert!(a.contains("polyline"));
    }

    #[test]
    fn importance_svg_orders_and_labels_bars() {
        let entries = vec![
            ImportanceEntry {
                feature: "X1".to_string(),
                label: "Number of Algorithms".to_string(),
                importance: 0.62,
            },
            ImportanceEntry {
                feature: "X13".to_string(),
                label: "Median Readability".to_string(),
                importance: 0.38,
            },
        ];
        let svg = importance_svg(&entries, "importance");
        assert!(svg.contains("Number of Algorithms"));
        assert!(svg.contains("X13"));
        let first = svg.find("Number of Algorithms").unwrap();
        let second = svg.find("Median Readability").unwrap();
        assert!(first < second);
        assert!(svg.matches("<rect").count() >= 3);
    }

    #[test]
    fn svg_escapes_markup_in_names() {
        let mut report = sample_report();
        report.classes[0].class_name = "a<b>&c".to_string();
        let svg = calibration_svg(&report, "t");
        assert!(svg.contains("a&lt;b&gt;&amp;c"));
    }
}
