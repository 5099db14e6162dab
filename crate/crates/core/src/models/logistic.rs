//! Multinomial logistic regression trained with full-batch gradient
//! descent on the softmax cross-entropy, L2 penalty on weights only.
//! Zero initialization and no sampling make the fit fully deterministic.

use crate::error::Error;
use crate::models::tree::{argmax, validate_dataset};
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticParams {
    pub learning_rate: f64,
    pub epochs: usize,
    pub l2: f64,
}

impl Default for LogisticParams {
    fn default() -> Self {
        LogisticParams {
            learning_rate: 0.1,
            epochs: 500,
            l2: 1e-4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogisticModel {
    pub n_classes: usize,
    pub n_features: usize,
    pub params: LogisticParams,
    /// Row k holds the weight vector for class k.
    pub weights: Vec<Vec<f64>>,
    pub bias: Vec<f64>,
}

impl LogisticModel {
    pub fn predict_proba(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_features, "feature dimension mismatch");
        let logits: Vec<f64> = self
            .weights
            .iter()
            .zip(&self.bias)
            .map(|(w, b)| b + w.iter().zip(x).map(|(wi, xi)| wi * xi).sum::<f64>())
            .collect();
        softmax(&logits)
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        argmax(&self.predict_proba(x))
    }
}

/// Numerically stable softmax (max-shifted).
pub(super) fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|&z| (z - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.iter().map(|&e| e / total).collect()
}

pub fn fit_logistic(
    x: &[Vec<f64>],
    y: &[usize],
    n_classes: usize,
    params: &LogisticParams,
) -> Result<LogisticModel> {
    validate_dataset(x, y, n_classes)?;
    if !(params.learning_rate.is_finite() && params.learning_rate > 0.0) {
        return Err(Error::invalid("learning rate must be positive and finite"));
    }
    if !(params.l2.is_finite() && params.l2 >= 0.0) {
        return Err(Error::invalid("l2 penalty must be non-negative and finite"));
    }
    let n = x.len();
    let d = x[0].len();
    let mut weights = vec![vec![0.0; d]; n_classes];
    let mut bias = vec![0.0; n_classes];

    for epoch in 0..params.epochs {
        let mut grad_w = vec![vec![0.0; d]; n_classes];
        let mut grad_b = vec![0.0; n_classes];
        let mut loss = 0.0;
        for (row, &label) in x.iter().zip(y) {
            let logits: Vec<f64> = weights
                .iter()
                .zip(&bias)
                .map(|(w, b)| b + w.iter().zip(row).map(|(wi, xi)| wi * xi).sum::<f64>())
                .collect();
            let probs = softmax(&logits);
            loss -= probs[label].max(1e-300).ln();
            for k in 0..n_classes {
                let delta = probs[k] - (k == label) as usize as f64;
                grad_b[k] += delta;
                for (g, xi) in grad_w[k].iter_mut().zip(row) {
                    *g += delta * xi;
                }
            }
        }
        loss /= n as f64;
        for w in &weights {
            loss += 0.5 * params.l2 * w.iter().map(|v| v * v).sum::<f64>();
        }
        if !loss.is_finite() {
            return Err(Error::invalid(format!(
                "logistic training diverged at epoch {epoch}: loss is not finite"
            )));
        }
        let scale = params.learning_rate / n as f64;
        for k in 0..n_classes {
            bias[k] -= scale * grad_b[k];
            for (w, g) in weights[k].iter_mut().zip(&grad_w[k]) {
                *w -= scale * g + params.learning_rate * params.l2 * *w;
            }
        }
    }

    Ok(LogisticModel {
        n_classes,
        n_features: d,
        params: params.clone(),
        weights,
        bias,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn separable() -> (Vec<Vec<f64>>, Vec<usize>) {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..20 {
            let t = i as f64 * 0.1;
            x.push(vec![t, 1.0 + t * 0.3]);
            y.push(0);
            x.push(vec![t + 5.0, -1.0 - t * 0.2]);
            y.push(1);
        }
        (x, y)
    }

    #[test]
    fn untrained_model_is_uniform() {
        let (x, y) = separable();
        let params = LogisticParams {
            epochs: 0,
            ..LogisticParams::default()
        };
        let model = fit_logistic(&x, &y, 2, &params).unwrap();
        assert_eq!(model.predict_proba(&[3.0, 0.5]), vec![0.5, 0.5]);
    }

    #[test]
    fn separates_linearly_separable_data() {
        let (x, y) = separable();
        let model = fit_logistic(&x, &y, 2, &LogisticParams::default()).unwrap();
        let hits = x
            .iter()
            .zip(&y)
            .filter(|(row, &label)| model.predict(row) == label)
            .count();
        assert_eq!(hits, x.len());
    }

    #[test]
    fn three_class_probabilities_sum_to_one() {
        let x: Vec<Vec<f64>> = (0..30)
            .map(|i| vec![(i % 3) as f64 * 4.0 + (i as f64 * 0.01), (i % 5) as f64])
            .collect();
        let y: Vec<usize> = (0..30).map(|i| i % 3).collect();
        let model = fit_logistic(&x, &y, 3, &LogisticParams::default()).unwrap();
        for row in &x {
            let p = model.predict_proba(row);
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(p.iter().all(|&v| v > 0.0));
        }
    }

    #[test]
    fn stronger_l2_shrinks_weights() {
        let (x, y) = separable();
        let loose = fit_logistic(&x, &y, 2, &LogisticParams { l2: 1e-6, ..LogisticParams::default() }).unwrap();
        let tight = fit_logistic(&x, &y, 2, &LogisticParams { l2: 1.0, ..LogisticParams::default() }).unwrap();
        let norm = |m: &LogisticModel| -> f64 {
            m.weights.iter().flatten().map(|w| w * w).sum::<f64>()
        };
        assert!(norm(&tight) < norm(&loose));
    }

    #[test]
    fn divergence_is_reported() {
        let x = vec![vec![1e150], vec![-1e150]];
        let y = vec![0, 1];
        let params = LogisticParams {
            learning_rate: 1e200,
            epochs: 50,
            l2: 0.0,
        };
        let err = fit_logistic(&x, &y, 2, &params).unwrap_err();
        assert!(err.to_string().contains("not finite"), "{err}");
    }

    #[test]
    fn fit_is_deterministic() {
        let (x, y) = separable();
        let a = fit_logistic(&x, &y, 2, &LogisticParams::default()).unwrap();
        let b = fit_logistic(&x, &y, 2, &LogisticParams::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn duplicating_every_point_is_a_reweighting_no_op() {
        // The loss is a mean over samples plus an L2 term, so giving each
        // point weight 2 (equivalently, duplicating the whole set) leaves
        // the optimum unchanged; only summation-order rounding differs.
        let (x, y) = separable();
        let mut x2 = x.clone();
        x2.extend(x.iter().cloned());
        let mut y2 = y.clone();
        y2.extend(y.iter().cloned());
        let a = fit_logistic(&x, &y, 2, &LogisticParams::default()).unwrap();
        let b = fit_logistic(&x2, &y2, 2, &LogisticParams::default()).unwrap();
        for (wa, wb) in a.weights.iter().flatten().zip(b.weights.iter().flatten()) {
            assert!((wa - wb).abs() < 1e-8, "{wa} vs {wb}");
        }
        for (ba, bb) in a.bias.iter().zip(&b.bias) {
            assert!((ba - bb).abs() < 1e-8);
        }
    }

    #[test]
    fn full_batch_is_order_invariant() {
        let (x, y) = separable();
        let mut paired: Vec<(Vec<f64>, usize)> = x.iter().cloned().zip(y.iter().cloned()).collect();
        paired.reverse();
        let (xr, yr): (Vec<_>, Vec<_>) = paired.into_iter().unzip();
        let a = fit_logistic(&x, &y, 2, &LogisticParams::default()).unwrap();
        let b = fit_logistic(&xr, &yr, 2, &LogisticParams::default()).unwrap();
        for (wa, wb) in a.weights.iter().flatten().zip(b.weights.iter().flatten()) {
            assert!((wa - wb).abs() < 1e-8, "{wa} vs {wb}");
        }
    }
}
