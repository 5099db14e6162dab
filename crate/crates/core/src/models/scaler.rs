//! Z-score feature scaling with population statistics and a floored
//! standard deviation so constant columns map to zero.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Floor applied to per-feature standard deviations.
pub const STD_FLOOR: f64 = 1e-8;

/// Per-feature mean and (floored) standard deviation learned from
/// training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalerParams {
    pub mean: Vec<f64>,
    pub std: Vec<f64>,
}

impl ScalerParams {
    pub fn n_features(&self) -> usize {
        self.mean.len()
    }

    /// Scales a single row.
    pub fn transform_row(&self, row: &[f64]) -> Vec<f64> {
        assert_eq!(row.len(), self.mean.len(), "scaler dimension mismatch");
        row.iter()
            .zip(self.mean.iter().zip(&self.std))
            .map(|(v, (m, s))| (v - m) / s)
            .collect()
    }
}

/// Learns population mean/std per column.
pub fn fit_scaler(x: &[Vec<f64>]) -> Result<ScalerParams> {
    let n = x.len();
    if n == 0 {
        return Err(Error::invalid("cannot fit a scaler on an empty matrix"));
    }
    let d = x[0].len();
    for (i, row) in x.iter().enumerate() {
        if row.len() != d {
            return Err(Error::invalid(format!(
                "row {i} has {} features, expected {d}",
                row.len()
            )));
        }
    }
    let mut mean = vec![0.0; d];
    for row in x {
        for (m, v) in mean.iter_mut().zip(row) {
            *m += v;
        }
    }
    for m in &mut mean {
        *m /= n as f64;
    }
    let mut var = vec![0.0; d];
    for row in x {
        for ((v, m), out) in row.iter().zip(&mean).zip(&mut var) {
            *out += (v - m) * (v - m);
        }
    }
    let std = var
        .iter()
        .map(|v| (v / n as f64).sqrt().max(STD_FLOOR))
        .collect();
    Ok(ScalerParams { mean, std })
}

/// Scales a whole matrix.
pub fn apply_scaler(params: &ScalerParams, x: &[Vec<f64>]) -> Vec<Vec<f64>> {
    x.iter().map(|row| params.transform_row(row)).collect()
}
