//! One-vs-rest reliability curves: equal-width probability bins holding
//! (mean predicted probability, observed positive fraction, count), plus a
//! full histogram that keeps empty bins as zeros.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationBin {
    pub bin_low: f64,
    pub bin_high: f64,
    pub mean_predicted: f64,
    pub fraction_positive: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassCalibration {
    pub class_name: String,
    /// Nonempty bins only, in ascending bin order.
    pub bins: Vec<CalibrationBin>,
    /// Per-bin sample counts including empty bins; sums to N.
    pub histogram: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CalibrationReport {
    pub n_bins: usize,
    pub classes: Vec<ClassCalibration>,
}

/// Curve for a single class index against the rest.
pub fn calibration_curve(
    y_true: &[usize],
    proba: &[Vec<f64>],
    class: usize,
    class_name: &str,
    n_bins: usize,
) -> Result<ClassCalibration> {
    validate(y_true, proba, n_bins)?;
    if proba.iter().any(|row| class >= row.len()) {
        return Err(Error::invalid(format!(
            "class index {class} outside probability rows"
        )));
    }

    let mut sum_p = vec![0.0; n_bins];
    let mut positives = vec![0usize; n_bins];
    let mut counts = vec![0usize; n_bins];
    for (&t, row) in y_true.iter().zip(proba) {
        let p = row[class];
        let bin = ((p * n_bins as f64) as usize).min(n_bins - 1);
        sum_p[bin] += p;
        counts[bin] += 1;
        if t == class {
            positives[bin] += 1;
        }
    }

    let width = 1.0 / n_bins as f64;
    let bins = (0..n_bins)
        .filter(|&b| counts[b] > 0)
        .map(|b| CalibrationBin {
            bin_low: b as f64 * width,
            bin_high: (b + 1) as f64 * width,
            mean_predicted: sum_p[b] / counts[b] as f64,
            fraction_positive: positives[b] as f64 / counts[b] as f64,
            count: counts[b],
        })
        .collect();

    Ok(ClassCalibration {
        class_name: class_name.to_string(),
        bins,
        histogram: counts,
    })
}

/// Curves for every class, in class order.
pub fn calibration_report(
    y_true: &[usize],
    proba: &[Vec<f64>],
    class_names: &[String],
    n_bins: usize,
) -> Result<CalibrationReport> {
    let classes = class_names
        .iter()
        .enumerate()
        .map(|(c, name)| calibration_curve(y_true, proba, c, name, n_bins))
        .collect::<Result<Vec<_>>>()?;
    Ok(CalibrationReport { n_bins, classes })
}

fn validate(y_true: &[usize], proba: &[Vec<f64>], n_bins: usize) -> Result<()> {
    if n_bins < 2 {
        return Err(Error::invalid("calibration needs at least 2 bins"));
    }
    if y_true.is_empty() {
        return Err(Error::invalid("cannot calibrate an empty prediction set"));
    }
    if y_true.len() != proba.len() {
        return Err(Error::invalid(format!(
            "{} labels but {} probability rows",
            y_true.len(),
            proba.len()
        )));
    }
    for (i, row) in proba.iter().enumerate() {
        if row.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::invalid(format!(
                "probability row {i} has entries outside [0, 1]"
            )));
        }
        let total: f64 = row.iter().sum();
        if (total - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "probability row {i} sums to {total}, not 1"
            )));
        }
    }
    Ok(())
}
