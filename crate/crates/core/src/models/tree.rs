//! CART decision tree with greedy Gini splits, midpoint thresholds, and
//! deterministic tie-breaking (lowest feature index, then lowest
//! threshold). Also the split engine for the random forest, which passes
//! a per-node feature sampler.

use crate::error::Error;
use crate::Result;
use rand::seq::index::sample;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Stopping hyperparameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeParams {
    pub max_depth: Option<usize>,
    pub min_samples_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        TreeParams {
            max_depth: None,
            min_samples_leaf: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Internal {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        /// Training samples per class that reached this leaf.
        counts: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTreeModel {
    pub n_classes: usize,
    pub n_features: usize,
    pub params: TreeParams,
    pub root: TreeNode,
    /// Raw Gini importance: per feature, the sum over splits of
    /// n_node * impurity decrease.
    pub importance_raw: Vec<f64>,
}

impl DecisionTreeModel {
    /// Leaf class distribution for one input row.
    pub fn predict_proba(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n_features, "feature dimension mismatch");
        let mut node = &self.root;
        loop {
            match node {
                TreeNode::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if x[*feature] <= *threshold { left } else { right };
                }
                TreeNode::Leaf { counts } => {
                    let total: usize = counts.iter().sum();
                    return counts.iter().map(|&c| c as f64 / total as f64).collect();
                }
            }
        }
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        argmax(&self.predict_proba(x))
    }

    /// Per-tree importance normalized to sum 1 (all zeros for a stump).
    pub fn normalized_importance(&self) -> Vec<f64> {
        let total: f64 = self.importance_raw.iter().sum();
        if total > 0.0 {
            self.importance_raw.iter().map(|v| v / total).collect()
        } else {
            vec![0.0; self.importance_raw.len()]
        }
    }
}

/// Highest-probability index; ties go to the lowest index.
pub fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Fits a plain CART tree on all features.
pub fn fit_decision_tree(
    x: &[Vec<f64>],
    y: &[usize],
    n_classes: usize,
    params: &TreeParams,
) -> Result<DecisionTreeModel> {
    validate_dataset(x, y, n_classes)?;
    let n_features = x[0].len();
    let mut builder = Builder {
        x,
        y,
        n_classes,
        params,
        sampler: None,
        importance: vec![0.0; n_features],
    };
    let indices: Vec<usize> = (0..x.len()).collect();
    let root = builder.build(indices, 0);
    Ok(DecisionTreeModel {
        n_classes,
        n_features,
        params: params.clone(),
        root,
        importance_raw: builder.importance,
    })
}

/// Forest entry point: fits one tree on the given row indices, sampling
/// `features_per_split` candidate features per node when fewer than the
/// full width.
pub(super) fn fit_tree_for_forest(
    x: &[Vec<f64>],
    y: &[usize],
    n_classes: usize,
    params: &TreeParams,
    rows: Vec<usize>,
    features_per_split: usize,
    rng: &mut ChaCha8Rng,
) -> DecisionTreeModel {
    let n_features = x[0].len();
    let sampler = (features_per_split < n_features).then_some((features_per_split, rng));
    let mut builder = Builder {
        x,
        y,
        n_classes,
        params,
        sampler,
        importance: vec![0.0; n_features],
    };
    let root = builder.build(rows, 0);
    DecisionTreeModel {
        n_classes,
        n_features,
        params: params.clone(),
        root,
        importance_raw: builder.importance,
    }
}

pub(super) fn validate_dataset(x: &[Vec<f64>], y: &[usize], n_classes: usize) -> Result<()> {
    if x.is_empty() {
        return Err(Error::invalid("cannot fit a model on an empty dataset"));
    }
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "{} feature rows but {} labels",
            x.len(),
            y.len()
        )));
    }
    let d = x[0].len();
    if d == 0 {
        return Err(Error::invalid("feature rows are empty"));
    }
    for (i, row) in x.iter().enumerate() {
        if row.len() != d {
            return Err(Error::invalid(format!(
                "row {i} has {} features, expected {d}",
                row.len()
            )));
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("row {i} contains non-finite values")));
        }
    }
    if let Some(&bad) = y.iter().find(|&&c| c >= n_classes) {
        return Err(Error::invalid(format!(
            "label {bad} outside 0..{n_classes}"
        )));
    }
    Ok(())
}

struct Builder<'a, 'r> {
    x: &'a [Vec<f64>],
    y: &'a [usize],
    n_classes: usize,
    params: &'a TreeParams,
    /// (features per split, rng); None means consider every feature.
    sampler: Option<(usize, &'r mut ChaCha8Rng)>,
    importance: Vec<f64>,
}

struct Split {
    feature: usize,
    threshold: f64,
    /// score_children - score_parent == n_node * impurity decrease.
    raw_gain: f64,
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Builder<'_, '_> {
    fn build(&mut self, indices: Vec<usize>, depth: usize) -> TreeNode {
        let counts = self.class_counts(&indices);
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        let depth_capped = self.params.max_depth.is_some_and(|d| depth >= d);
        let too_small = indices.len() < 2 * self.params.min_samples_leaf.max(1);
        if pure || depth_capped || too_small {
            return TreeNode::Leaf { counts };
        }
        match self.best_split(&indices, &counts) {
            Some(split) => {
                self.importance[split.feature] += split.raw_gain;
                let left = Box::new(self.build(split.left, depth + 1));
                let right = Box::new(self.build(split.right, depth + 1));
                TreeNode::Internal {
                    feature: split.feature,
                    threshold: split.threshold,
                    left,
                    right,
                }
            }
            None => TreeNode::Leaf { counts },
        }
    }

    fn class_counts(&self, indices: &[usize]) -> Vec<usize> {
        let mut counts = vec![0usize; self.n_classes];
        for &i in indices {
            counts[self.y[i]] += 1;
        }
        counts
    }

    /// Candidate features for this node, ascending.
    fn node_features(&mut self) -> Vec<usize> {
        let d = self.x[0].len();
        match &mut self.sampler {
            Some((m, rng)) => {
                let mut picked = sample(*rng, d, *m).into_vec();
                picked.sort_unstable();
                picked
            }
            None => (0..d).collect(),
        }
    }

    /// Best (feature, midpoint threshold) by Gini decrease. The split
    /// score Σ_child Σ_k c_k²/n_child is compared strictly-greater while
    /// iterating features and thresholds in ascending order, which
    /// implements the tie-breaking rule.
    fn best_split(&mut self, indices: &[usize], parent_counts: &[usize]) -> Option<Split> {
        let n = indices.len();
        let msl = self.params.min_samples_leaf.max(1);
        let parent_score = score(parent_counts, n);
        let mut best: Option<(usize, f64, f64)> = None; // feature, threshold, score

        for feature in self.node_features() {
            let mut order: Vec<usize> = indices.to_vec();
            order.sort_by(|&a, &b| self.x[a][feature].total_cmp(&self.x[b][feature]));

            let mut left_counts = vec![0usize; self.n_classes];
            let mut right_counts = parent_counts.to_vec();
            for cut in 1..n {
                let moved = order[cut - 1];
                left_counts[self.y[moved]] += 1;
                right_counts[self.y[moved]] -= 1;
                let prev = self.x[order[cut - 1]][feature];
                let next = self.x[order[cut]][feature];
                if prev == next {
                    continue;
                }
                if cut < msl || n - cut < msl {
                    continue;
                }
                let children_score = score(&left_counts, cut) + score(&right_counts, n - cut);
                if children_score <= parent_score {
                    continue; // no impurity decrease
                }
                let threshold = prev + (next - prev) / 2.0;
                if best.is_none_or(|(_, _, s)| children_score > s) {
                    best = Some((feature, threshold, children_score));
                }
            }
        }

        best.map(|(feature, threshold, children_score)| {
            let (left, right): (Vec<usize>, Vec<usize>) = indices
                .iter()
                .partition(|&&i| self.x[i][feature] <= threshold);
            Split {
                feature,
                threshold,
                raw_gain: children_score - parent_score,
                left,
                right,
            }
        })
    }
}

/// Σ_k c_k² / n: maximizing this over a partition minimizes the weighted
/// Gini impurity. Computed from integer counts for determinism.
fn score(counts: &[usize], n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    counts.iter().map(|&c| (c * c) as f64).sum::<f64>() / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(values: &[f64]) -> Vec<Vec<f64>> {
        values.iter().map(|&v| vec![v]).collect()
    }

    #[test]
    fn pure_labels_make_a_single_leaf() {
        let x = column(&[1.0, 2.0, 3.0]);
        let y = vec![1, 1, 1];
        let model = fit_decision_tree(&x, &y, 2, &TreeParams::default()).unwrap();
        match &model.root {
            TreeNode::Leaf { counts } => assert_eq!(counts, &vec![0, 3]),
            other => panic!("expected leaf, got {other:?}"),
        }
        assert_eq!(model.predict_proba(&[9.0]), vec![0.0, 1.0]);
    }

    #[test]
    fn hand_computed_root_split() {
        let x = column(&[1.0, 2.0, 3.0, 4.0]);
        let y = vec![0, 0, 1, 1];
        let model = fit_decision_tree(&x, &y, 2, &TreeParams::default()).unwrap();
        match &model.root {
            TreeNode::Internal { feature, threshold, .. } => {
                assert_eq!(*feature, 0);
                assert_eq!(*threshold, 2.5);
            }
            other => panic!("expected internal node, got {other:?}"),
        }
        for (xi, yi) in x.iter().zip(&y) {
            assert_eq!(model.predict(xi), *yi);
        }
    }

    #[test]
    fn distinct_rows_fit_perfectly_at_unlimited_depth() {
        let x: Vec<Vec<f64>> = (0..40).map(|i| vec![i as f64 * 1.3, (i * i) as f64]).collect();
        let y: Vec<usize> = (0..40).map(|i| (i * 7 % 3) as usize).collect();
        let model = fit_decision_tree(&x, &y, 3, &TreeParams::default()).unwrap();
        for (xi, yi) in x.iter().zip(&y) {
            assert_eq!(model.predict(xi), *yi);
        }
    }

    #[test]
    fn max_depth_zero_is_a_stump() {
        let x = column(&[1.0, 2.0, 3.0, 4.0]);
        let y = vec![0, 0, 1, 1];
        let params = TreeParams {
            max_depth: Some(0),
            ..TreeParams::default()
        };
        let model = fit_decision_tree(&x, &y, 2, &params).unwrap();
        assert!(matches!(model.root, TreeNode::Leaf { .. }));
        assert_eq!(model.predict_proba(&[1.0]), vec![0.5, 0.5]);
    }

    #[test]
    fn min_samples_leaf_respected() {
        let x = column(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let y = vec![0, 1, 0, 1, 0, 1];
        let params = TreeParams {
            max_depth: None,
            min_samples_leaf: 3,
        };
        let model = fit_decision_tree(&x, &y, 2, &params).unwrap();
        fn check(node: &TreeNode, msl: usize) {
            match node {
                TreeNode::Leaf { counts } => assert!(counts.iter().sum::<usize>() >= msl),
                TreeNode::Internal { left, right, .. } => {
                    check(left, msl);
                    check(right, msl);
                }
            }
        }
        check(&model.root, 3);
    }

    #[test]
    fn leaf_counts_partition_the_training_set() {
        let x: Vec<Vec<f64>> = (0..30).map(|i| vec![(i % 7) as f64, (i % 5) as f64]).collect();
        let y: Vec<usize> = (0..30).map(|i| (i % 3) as usize).collect();
        let model = fit_decision_tree(&x, &y, 3, &TreeParams::default()).unwrap();
        fn total(node: &TreeNode) -> usize {
            match node {
                TreeNode::Leaf { counts } => counts.iter().sum(),
                TreeNode::Internal { left, right, .. } => total(left) + total(right),
            }
        }
        assert_eq!(total(&model.root), 30);
    }

    #[test]
    fn predictions_invariant_under_monotone_feature_transforms() {
        // Test inputs stay on the training grid: midpoint thresholds only
        // commute with monotone maps at observed values.
        let x: Vec<Vec<f64>> = (0..24).map(|i| vec![(i % 6) as f64, (i / 6) as f64]).collect();
        let y: Vec<usize> = (0..24).map(|i| ((i % 6 > 2) as usize) + ((i / 6 > 1) as usize)).collect();
        let base = fit_decision_tree(&x, &y, 3, &TreeParams::default()).unwrap();

        let transform = |row: &[f64]| vec![(row[0] + 1.0).ln() * 3.0, row[1].exp()];
        let tx: Vec<Vec<f64>> = x.iter().map(|r| transform(r)).collect();
        let warped = fit_decision_tree(&tx, &y, 3, &TreeParams::default()).unwrap();

        for row in &x {
            assert_eq!(base.predict(row), warped.predict(&transform(row)));
        }
    }

    #[test]
    fn importance_zero_for_unused_features() {
        // Feature 1 is constant and can never split.
        let x: Vec<Vec<f64>> = (0..20).map(|i| vec![i as f64, 5.0]).collect();
        let y: Vec<usize> = (0..20).map(|i| (i >= 10) as usize).collect();
        let model = fit_decision_tree(&x, &y, 2, &TreeParams::default()).unwrap();
        let imp = model.normalized_importance();
        assert_eq!(imp[1], 0.0);
        assert!((imp[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_decision_tree(&[], &[], 2, &TreeParams::default()).is_err());
        let x = column(&[1.0, 2.0]);
        assert!(fit_decision_tree(&x, &[0], 2, &TreeParams::default()).is_err());
        assert!(fit_decision_tree(&x, &[0, 5], 2, &TreeParams::default()).is_err());
        let bad = vec![vec![f64::NAN], vec![1.0]];
        assert!(fit_decision_tree(&bad, &[0, 1], 2, &TreeParams::default()).is_err());
    }

    #[test]
    fn fit_is_deterministic() {
        let x: Vec<Vec<f64>> = (0..50)
            .map(|i| vec![(i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()])
            .collect();
        let y: Vec<usize> = (0..50).map(|i| (i % 4 == 0) as usize).collect();
        let a = fit_decision_tree(&x, &y, 2, &TreeParams::default()).unwrap();
        let b = fit_decision_tree(&x, &y, 2, &TreeParams::default()).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
