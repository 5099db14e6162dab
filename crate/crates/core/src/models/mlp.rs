//! Feed-forward network over embedding vectors: one rectified hidden layer
//! and a softmax head, trained by mini-batch gradient descent in a fixed
//! batch order. hidden_width 0 drops the hidden layer entirely, which is
//! the linear "vanilla" classifier.

use crate::error::Error;
use crate::models::logistic::softmax;
use crate::models::tree::{argmax, validate_dataset};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpParams {
    pub hidden_width: usize,
    pub learning_rate: f64,
    pub epochs: usize,
    pub batch_size: usize,
    pub seed: u64,
}

impl Default for MlpParams {
    fn default() -> Self {
        MlpParams {
            hidden_width: 256,
            learning_rate: 1e-3,
            epochs: 50,
            batch_size: 32,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MlpModel {
    pub n_classes: usize,
    pub n_features: usize,
    pub params: MlpParams,
    /// Hidden layer, hidden_width x n_features; empty when hidden_width is 0.
    pub w1: Vec<Vec<f64>>,
    pub b1: Vec<f64>,
    /// Output layer, n_classes x (hidden_width or n_features).
    pub w2: Vec<Vec<f64>>,
    pub b2: Vec<f64>,
}

/// Gradients with the same shapes as the model parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpGradients {
    pub w1: Vec<Vec<f64>>,
    pub b1: Vec<f64>,
    pub w2: Vec<Vec<f64>>,
    pub b2: Vec<f64>,
}

impl MlpModel {
    fn hidden(&self, x: &[f64]) -> Option<(Vec<f64>, Vec<f64>)> {
        if self.params.hidden_width == 0 {
            return None;
        }
        let pre: Vec<f64> = self
            .w1
            .iter()
            .zip(&self.b1)
            .map(|(w, b)| b + w.iter().zip(x).map(|(wi, xi)| wi * xi).sum::<f64>())
            .collect();
        let post: Vec<f64> = pre.iter().map(|&v| v.max(0.0)).collect();
        Some((pre, post))
    }

    fn logits(&self, features: &[f64]) -> Vec<f64> {
        self.w2
            .iter()
            .zip(&self.b2)
            .map(|(w, b)| b + w.iter().zip(features).map(|(wi, fi)| wi * fi).sum::<f64>())
            .collect()
    }

    pub fn predict_proba(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_features, "feature dimension mismatch");
        let logits = match self.hidden(x) {
            Some((_, post)) => self.logits(&post),
            None => self.logits(x),
        };
        softmax(&logits)
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        argmax(&self.predict_proba(x))
    }
}

/// Mean softmax cross-entropy of a batch. Public so gradients can be
/// validated against finite differences.
pub fn mlp_loss(model: &MlpModel, x: &[Vec<f64>], y: &[usize]) -> f64 {
    assert_eq!(x.len(), y.len());
    let mut loss = 0.0;
    for (row, &label) in x.iter().zip(y) {
        let probs = model.predict_proba(row);
        loss -= probs[label].max(1e-300).ln();
    }
    loss / x.len() as f64
}

/// Analytic backpropagation gradients of `mlp_loss` over the batch.
pub fn mlp_gradients(model: &MlpModel, x: &[Vec<f64>], y: &[usize]) -> MlpGradients {
    assert_eq!(x.len(), y.len());
    let d = model.n_features;
    let h = model.params.hidden_width;
    let k = model.n_classes;
    let mut g = MlpGradients {
        w1: vec![vec![0.0; d]; h],
        b1: vec![0.0; h],
        w2: model.w2.iter().map(|row| vec![0.0; row.len()]).collect(),
        b2: vec![0.0; k],
    };

    for (row, &label) in x.iter().zip(y) {
        let hidden = model.hidden(row);
        let features: &[f64] = match &hidden {
            Some((_, post)) => post,
            None => row,
        };
        let probs = softmax(&model.logits(features));
        let delta_out: Vec<f64> = probs
            .iter()
            .enumerate()
            .map(|(c, p)| p - (c == label) as usize as f64)
            .collect();
        for (c, &dc) in delta_out.iter().enumerate() {
            g.b2[c] += dc;
            for (gw, fi) in g.w2[c].iter_mut().zip(features) {
                *gw += dc * fi;
            }
        }
        if let Some((pre, _)) = &hidden {
            for (j, &p) in pre.iter().enumerate() {
                if p <= 0.0 {
                    continue; // rectifier gate closed
                }
                let back: f64 = delta_out
                    .iter()
                    .enumerate()
                    .map(|(c, &dc)| dc * model.w2[c][j])
                    .sum();
                g.b1[j] += back;
                for (gw, xi) in g.w1[j].iter_mut().zip(row) {
                    *gw += back * xi;
                }
            }
        }
    }

    let inv_n = 1.0 / x.len() as f64;
    g.w1.iter_mut().flatten().for_each(|v| *v *= inv_n);
    g.b1.iter_mut().for_each(|v| *v *= inv_n);
    g.w2.iter_mut().flatten().for_each(|v| *v *= inv_n);
    g.b2.iter_mut().for_each(|v| *v *= inv_n);
    g
}

pub fn fit_mlp(x: &[Vec<f64>], y: &[usize], n_classes: usize, params: &MlpParams) -> Result<MlpModel> {
    validate_dataset(x, y, n_classes)?;
    if params.batch_size == 0 {
        return Err(Error::invalid("batch size must be at least 1"));
    }
    if !(params.learning_rate.is_finite() && params.learning_rate > 0.0) {
        return Err(Error::invalid("learning rate must be positive and finite"));
    }
    let d = x[0].len();
    let h = params.hidden_width;
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    // Uniform +/- 1/sqrt(fan_in); biases start at zero.
    let mut layer = |rows: usize, fan_in: usize| -> Vec<Vec<f64>> {
        let bound = 1.0 / (fan_in as f64).sqrt();
        (0..rows)
            .map(|_| (0..fan_in).map(|_| rng.gen_range(-bound..bound)).collect())
            .collect()
    };
    let w1 = layer(h, d);
    let w2 = if h > 0 { layer(n_classes, h) } else { layer(n_classes, d) };
    let mut model = MlpModel {
        n_classes,
        n_features: d,
        params: params.clone(),
        w1,
        b1: vec![0.0; h],
        w2,
        b2: vec![0.0; n_classes],
    };

    let n = x.len();
    for epoch in 0..params.epochs {
        for start in (0..n).step_by(params.batch_size) {
            let end = (start + params.batch_size).min(n);
            let g = mlp_gradients(&model, &x[start..end], &y[start..end]);
            step(&mut model, &g, params.learning_rate);
        }
        let loss = mlp_loss(&model, x, y);
        if !loss.is_finite() {
            return Err(Error::invalid(format!(
                "network training diverged at epoch {epoch}: loss is not finite"
            )));
        }
    }
    Ok(model)
}

fn step(model: &mut MlpModel, g: &MlpGradients, lr: f64) {
    for (wrow, grow) in model.w1.iter_mut().zip(&g.w1) {
        for (w, gv) in wrow.iter_mut().zip(grow) {
            *w -= lr * gv;
        }
    }
    for (b, gv) in model.b1.iter_mut().zip(&g.b1) {
        *b -= lr * gv;
    }
    for (wrow, grow) in model.w2.iter_mut().zip(&g.w2) {
        for (w, gv) in wrow.iter_mut().zip(grow) {
            *w -= lr * gv;
        }
    }
    for (b, gv) in model.b2.iter_mut().zip(&g.b2) {
        *b -= lr * gv;
    }
}
