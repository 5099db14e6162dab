//! Random forest: bagged CART trees with per-node feature subsampling and
//! Gini importance averaged across trees. Tree t draws every random choice
//! from ChaCha8 seeded with master_seed + t, so fits are reproducible and
//! trees can be built in parallel.

use crate::error::Error;
use crate::models::tree::{argmax, fit_tree_for_forest, validate_dataset, DecisionTreeModel, TreeParams};
use crate::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_trees: usize,
    pub max_depth: Option<usize>,
    pub min_samples_leaf: usize,
    /// Candidate features per node; None means ceil(sqrt(d)).
    pub features_per_split: Option<usize>,
    pub bootstrap: bool,
    pub master_seed: u64,
}

impl Default for ForestParams {
    fn default() -> Self {
        ForestParams {
            n_trees: 100,
            max_depth: None,
            min_samples_leaf: 1,
            features_per_split: None,
            bootstrap: true,
            master_seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RandomForestModel {
    pub n_classes: usize,
    pub n_features: usize,
    pub params: ForestParams,
    pub trees: Vec<DecisionTreeModel>,
}

impl RandomForestModel {
    /// Mean of the member trees' leaf distributions.
    pub fn predict_proba(&self, x: &[f64]) -> Vec<f64> {
        let mut acc = vec![0.0; self.n_classes];
        for tree in &self.trees {
            for (a, p) in acc.iter_mut().zip(tree.predict_proba(x)) {
                *a += p;
            }
        }
        let n = self.trees.len() as f64;
        acc.iter_mut().for_each(|a| *a /= n);
        acc
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        argmax(&self.predict_proba(x))
    }

    /// Mean per-tree normalized Gini importance, renormalized to sum 1.
    pub fn importance(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.n_features];
        for tree in &self.trees {
            for (a, v) in acc.iter_mut().zip(tree.normalized_importance()) {
                *a += v;
            }
        }
        let total: f64 = acc.iter().sum();
        if total > 0.0 {
            acc.iter_mut().for_each(|a| *a /= total);
        }
        acc
    }
}

pub fn fit_random_forest(
    x: &[Vec<f64>],
    y: &[usize],
    n_classes: usize,
    params: &ForestParams,
) -> Result<RandomForestModel> {
    validate_dataset(x, y, n_classes)?;
    if params.n_trees == 0 {
        return Err(Error::invalid("forest needs at least one tree"));
    }
    let n = x.len();
    let d = x[0].len();
    let m = match params.features_per_split {
        Some(0) => return Err(Error::invalid("features_per_split must be at least 1")),
        Some(m) => m.min(d),
        None => (d as f64).sqrt().ceil() as usize,
    };
    let tree_params = TreeParams {
        max_depth: params.max_depth,
        min_samples_leaf: params.min_samples_leaf,
    };

    let trees: Vec<DecisionTreeModel> = (0..params.n_trees)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(params.master_seed.wrapping_add(t as u64));
            let rows: Vec<usize> = if params.bootstrap {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            fit_tree_for_forest(x, y, n_classes, &tree_params, rows, m, &mut rng)
        })
        .collect();

    Ok(RandomForestModel {
        n_classes,
        n_features: d,
        params: params.clone(),
        trees,
    })
}
