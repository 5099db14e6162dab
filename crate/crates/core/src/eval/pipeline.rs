//! End-to-end evaluation: featurize a labeled corpus, split, train one
//! model per run, and emit metrics, calibration, and importance outputs.
//! Every random stream (split, bootstrap, weight init) is derived from the
//! single config seed, so a run is a pure function of (corpus, config).

use crate::corpus::{EmbeddingTable, PaperRecord};
use crate::derive_seed;
use crate::error::Error;
use crate::eval::calibration::{calibration_report, CalibrationReport};
use crate::eval::metrics::{classification_metrics, MetricsReport};
use crate::eval::split::stratified_split;
use crate::models::{FeatureSource, ModelArtifact, ModelFamily, ModelSpec, ScalerParams};
use crate::models::scaler::{apply_scaler, fit_scaler};
use crate::spectrum::{joint_label, Framework};
use crate::textfeat::{featurize_corpus, FeatureVector, FEATURE_LABELS};
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub model: ModelSpec,
    pub feature_source: FeatureSource,
    pub test_fraction: f64,
    pub n_bins: usize,
    pub seed: u64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            model: ModelSpec::default(),
            feature_source: FeatureSource::X,
            test_fraction: 0.2,
            n_bins: 10,
            seed: 42,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImportanceEntry {
    /// Stable feature key (X1..X16 or emb_<i>).
    pub feature: String,
    pub label: String,
    pub importance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub framework: Framework,
    pub feature_source: FeatureSource,
    pub model_family: ModelFamily,
    pub seed: u64,
    pub test_fraction: f64,
    pub n_bins: usize,
    pub train_size: usize,
    pub test_size: usize,
    pub metrics: MetricsReport,
    pub calibration: CalibrationReport,
    /// Present for tree-based families only, sorted descending.
    pub importance: Option<Vec<ImportanceEntry>>,
    pub warnings: Vec<String>,
    pub artifact: ModelArtifact,
}

/// Label index of each record under the given framework, following the
/// canonical label order.
pub fn label_indices(records: &[PaperRecord], framework: Framework) -> Vec<usize> {
    let names = framework.label_names();
    records
        .iter()
        .map(|r| {
            let name = joint_label(&r.badges).name_for(framework);
            names.iter().position(|&n| n == name).expect("label name in canonical set")
        })
        .collect()
}

/// Design-matrix rows plus the (stable key, display label) pair for each
/// column.
pub type DesignMatrix = (Vec<Vec<f64>>, Vec<(String, String)>);

/// Raw design matrix for the requested feature source.
pub fn feature_matrix(
    records: &[PaperRecord],
    features: &[FeatureVector],
    embeddings: Option<&EmbeddingTable>,
    source: FeatureSource,
) -> Result<DesignMatrix> {
    match source {
        FeatureSource::X | FeatureSource::XScaled => {
            let rows = features.iter().map(|f| f.values().to_vec()).collect();
            let names = FEATURE_LABELS
                .iter()
                .enumerate()
                .map(|(i, &label)| (format!("X{}", i + 1), label.to_string()))
                .collect();
            Ok((rows, names))
        }
        FeatureSource::XEmb => {
            let table = embeddings.ok_or_else(|| {
                Error::Config("feature source X_emb requires an embeddings file".into())
            })?;
            let mut rows = Vec::with_capacity(records.len());
            let mut missing = Vec::new();
            for record in records {
                match table.mean_for(&record.id) {
                    Some(mean) => rows.push(mean),
                    None => missing.push(record.id.clone()),
                }
            }
            if !missing.is_empty() {
                return Err(Error::MissingEmbeddings { ids: missing });
            }
            let names = (0..table.dimension())
                .map(|i| (format!("emb_{i}"), format!("embedding dimension {i}")))
                .collect();
            Ok((rows, names))
        }
    }
}

pub fn evaluate_pipeline(
    records: &[PaperRecord],
    embeddings: Option<&EmbeddingTable>,
    framework: Framework,
    config: &EvalConfig,
) -> Result<EvalOutcome> {
    if records.is_empty() {
        return Err(Error::invalid("cannot evaluate an empty corpus"));
    }
    let features = featurize_corpus(records);
    let warnings: Vec<String> = features
        .iter()
        .flat_map(|f| f.warnings.iter().map(move |w| format!("{}: {w}", f.id)))
        .collect();
    let (matrix, names) = feature_matrix(records, &features, embeddings, config.feature_source)?;
    let y = label_indices(records, framework);
    let class_names: Vec<String> = framework
        .label_names()
        .iter()
        .map(|s| s.to_string())
        .collect();

    let split = stratified_split(&y, &class_names, config.test_fraction, derive_seed(config.seed, 1))?;
    let gather = |idx: &[usize]| -> (Vec<Vec<f64>>, Vec<usize>) {
        (
            idx.iter().map(|&i| matrix[i].clone()).collect(),
            idx.iter().map(|&i| y[i]).collect(),
        )
    };
    let (mut train_x, train_y) = gather(&split.train);
    let (mut test_x, test_y) = gather(&split.test);

    // Scaler statistics come from the training rows only.
    let scaler: Option<ScalerParams> = if config.feature_source == FeatureSource::XScaled {
        let params = fit_scaler(&train_x)?;
        train_x = apply_scaler(&params, &train_x);
        test_x = apply_scaler(&params, &test_x);
        Some(params)
    } else {
        None
    };

    let mut spec = config.model.clone();
    spec.forest.master_seed = derive_seed(config.seed, 2);
    spec.mlp.seed = derive_seed(config.seed, 3);
    let model = spec.fit(&train_x, &train_y, class_names.len())?;

    let proba: Vec<Vec<f64>> = test_x.iter().map(|row| model.predict_proba(row)).collect();
    let y_pred: Vec<usize> = proba.iter().map(|p| crate::models::argmax(p)).collect();
    let metrics = classification_metrics(&test_y, &y_pred, &class_names)?;
    let calibration = calibration_report(&test_y, &proba, &class_names, config.n_bins)?;

    let importance = model.importance().map(|imp| rank_importance(&imp, &names));
    let artifact = ModelArtifact::new(framework, config.feature_source, config.seed, scaler, model);

    Ok(EvalOutcome {
        framework,
        feature_source: config.feature_source,
        model_family: artifact.model.family(),
        seed: config.seed,
        test_fraction: config.test_fraction,
        n_bins: config.n_bins,
        train_size: split.train.len(),
        test_size: split.test.len(),
        metrics,
        calibration,
        importance,
        warnings,
        artifact,
    })
}

/// Descending by importance; equal values keep feature-index order.
pub fn rank_importance(importance: &[f64], names: &[(String, String)]) -> Vec<ImportanceEntry> {
    assert_eq!(importance.len(), names.len(), "importance width mismatch");
    let mut order: Vec<usize> = (0..importance.len()).collect();
    order.sort_by(|&a, &b| importance[b].total_cmp(&importance[a]).then(a.cmp(&b)));
    order
        .into_iter()
        .map(|i| ImportanceEntry {
            feature: names[i].0.clone(),
            label: names[i].1.clone(),
            importance: importance[i],
        })
        .collect()
}
