//! Interpretable from-scratch learners plus a versioned serialization
//! envelope. Every fit is a pure function of (data, params, seed), and a
//! reloaded artifact reproduces bit-identical predictions.

pub mod forest;
pub mod logistic;
pub mod mlp;
pub mod scaler;
pub mod tree;

pub use forest::{fit_random_forest, ForestParams, RandomForestModel};
pub use logistic::{fit_logistic, LogisticModel, LogisticParams};
pub use mlp::{fit_mlp, mlp_gradients, mlp_loss, MlpGradients, MlpModel, MlpParams};
pub use scaler::{apply_scaler, fit_scaler, ScalerParams};
pub use tree::{argmax, fit_decision_tree, DecisionTreeModel, TreeNode, TreeParams};

use crate::error::Error;
use crate::spectrum::Framework;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

pub const MODEL_SCHEMA_VERSION: &str = "reprospect.model.v1";

/// Model families selectable from configuration. Boosted ensembles are
/// recognized names but deliberately unimplemented.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFamily {
    DecisionTree,
    RandomForest,
    Logistic,
    Mlp,
    VanillaNn,
}

impl ModelFamily {
    pub fn as_str(&self) -> &'static str {
        match self {
            ModelFamily::DecisionTree => "decision_tree",
            ModelFamily::RandomForest => "random_forest",
            ModelFamily::Logistic => "logistic",
            ModelFamily::Mlp => "mlp",
            ModelFamily::VanillaNn => "vanilla_nn",
        }
    }
}

impl fmt::Display for ModelFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ModelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "decision_tree" => Ok(ModelFamily::DecisionTree),
            "random_forest" => Ok(ModelFamily::RandomForest),
            "logistic" => Ok(ModelFamily::Logistic),
            "mlp" => Ok(ModelFamily::Mlp),
            "vanilla_nn" => Ok(ModelFamily::VanillaNn),
            "adaboost" | "gradient_boosting" => Err(Error::Config(format!(
                "model family '{s}' is reserved but not implemented; \
                 available families: decision_tree, random_forest, logistic, mlp, vanilla_nn"
            ))),
            other => Err(Error::Config(format!(
                "unknown model family '{other}'; \
                 available families: decision_tree, random_forest, logistic, mlp, vanilla_nn"
            ))),
        }
    }
}

/// Which representation a model consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FeatureSource {
    #[serde(rename = "X")]
    X,
    #[serde(rename = "X_scaled")]
    XScaled,
    #[serde(rename = "X_emb")]
    XEmb,
}

impl FeatureSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            FeatureSource::X => "X",
            FeatureSource::XScaled => "X_scaled",
            FeatureSource::XEmb => "X_emb",
        }
    }
}

impl fmt::Display for FeatureSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "X" => Ok(FeatureSource::X),
            "X_scaled" => Ok(FeatureSource::XScaled),
            "X_emb" => Ok(FeatureSource::XEmb),
            other => Err(Error::Config(format!(
                "unknown feature source '{other}'; expected X, X_scaled, or X_emb"
            ))),
        }
    }
}

/// A fitted classifier of any family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "parameters")]
pub enum TrainedModel {
    #[serde(rename = "decision_tree")]
    DecisionTree(DecisionTreeModel),
    #[serde(rename = "random_forest")]
    RandomForest(RandomForestModel),
    #[serde(rename = "logistic")]
    Logistic(LogisticModel),
    #[serde(rename = "mlp")]
    Mlp(MlpModel),
}

impl TrainedModel {
    pub fn predict_proba(&self, x: &[f64]) -> Vec<f64> {
        match self {
            TrainedModel::DecisionTree(m) => m.predict_proba(x),
            TrainedModel::RandomForest(m) => m.predict_proba(x),
            TrainedModel::Logistic(m) => m.predict_proba(x),
            TrainedModel::Mlp(m) => m.predict_proba(x),
        }
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        argmax(&self.predict_proba(x))
    }

    pub fn n_classes(&self) -> usize {
        match self {
            TrainedModel::DecisionTree(m) => m.n_classes,
            TrainedModel::RandomForest(m) => m.n_classes,
            TrainedModel::Logistic(m) => m.n_classes,
            TrainedModel::Mlp(m) => m.n_classes,
        }
    }

    pub fn n_features(&self) -> usize {
        match self {
            TrainedModel::DecisionTree(m) => m.n_features,
            TrainedModel::RandomForest(m) => m.n_features,
            TrainedModel::Logistic(m) => m.n_features,
            TrainedModel::Mlp(m) => m.n_features,
        }
    }

    /// Display name; a zero-hidden-width network reports as vanilla_nn.
    pub fn family(&self) -> ModelFamily {
        match self {
            TrainedModel::DecisionTree(_) => ModelFamily::DecisionTree,
            TrainedModel::RandomForest(_) => ModelFamily::RandomForest,
            TrainedModel::Logistic(_) => ModelFamily::Logistic,
            TrainedModel::Mlp(m) if m.params.hidden_width == 0 => ModelFamily::VanillaNn,
            TrainedModel::Mlp(_) => ModelFamily::Mlp,
        }
    }

    /// Gini importance for tree-based models; None for the others.
    pub fn importance(&self) -> Option<Vec<f64>> {
        match self {
            TrainedModel::DecisionTree(m) => Some(m.normalized_importance()),
            TrainedModel::RandomForest(m) => Some(m.importance()),
            _ => None,
        }
    }
}

/// Family plus hyperparameters, ready to fit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub family: ModelFamily,
    pub tree: TreeParams,
    pub forest: ForestParams,
    pub logistic: LogisticParams,
    pub mlp: MlpParams,
}

impl Default for ModelSpec {
    fn default() -> Self {
        ModelSpec {
            family: ModelFamily::RandomForest,
            tree: TreeParams::default(),
            forest: ForestParams::default(),
            logistic: LogisticParams::default(),
            mlp: MlpParams::default(),
        }
    }
}

impl ModelSpec {
    pub fn fit(&self, x: &[Vec<f64>], y: &[usize], n_classes: usize) -> Result<TrainedModel> {
        match self.family {
            ModelFamily::DecisionTree => {
                fit_decision_tree(x, y, n_classes, &self.tree).map(TrainedModel::DecisionTree)
            }
            ModelFamily::RandomForest => {
                fit_random_forest(x, y, n_classes, &self.forest).map(TrainedModel::RandomForest)
            }
            ModelFamily::Logistic => {
                fit_logistic(x, y, n_classes, &self.logistic).map(TrainedModel::Logistic)
            }
            ModelFamily::Mlp => fit_mlp(x, y, n_classes, &self.mlp).map(TrainedModel::Mlp),
            ModelFamily::VanillaNn => {
                let mut params = self.mlp.clone();
                params.hidden_width = 0;
                fit_mlp(x, y, n_classes, &params).map(TrainedModel::Mlp)
            }
        }
    }
}

/// On-disk form: schema id, provenance, optional scaler, and the model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelArtifact {
    pub schema: String,
    pub framework: Framework,
    pub feature_source: FeatureSource,
    pub class_names: Vec<String>,
    pub seed: u64,
    pub scaler: Option<ScalerParams>,
    pub model: TrainedModel,
}

impl ModelArtifact {
    pub fn new(
        framework: Framework,
        feature_source: FeatureSource,
        seed: u64,
        scaler: Option<ScalerParams>,
        model: TrainedModel,
    ) -> Self {
        let class_names = framework
            .label_names()
            .iter()
            .map(|s| s.to_string())
            .collect();
        ModelArtifact {
            schema: MODEL_SCHEMA_VERSION.to_string(),
            framework,
            feature_source,
            class_names,
            seed,
            scaler,
            model,
        }
    }

    /// Applies the stored scaler (when present) before predicting, so the
    /// caller always passes raw feature rows.
    pub fn predict_proba(&self, x: &[f64]) -> Vec<f64> {
        match &self.scaler {
            Some(scaler) => self.model.predict_proba(&scaler.transform_row(x)),
            None => self.model.predict_proba(x),
        }
    }

    pub fn predict(&self, x: &[f64]) -> usize {
        argmax(&self.predict_proba(x))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::ModelFormat(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::ModelFormat(e.to_string()))?;
        let found = value
            .get("schema")
            .and_then(|v| v.as_str())
            .ok_or_else(|| Error::ModelFormat("missing schema field".into()))?;
        if found != MODEL_SCHEMA_VERSION {
            return Err(Error::ModelVersion {
                found: found.to_string(),
                expected: MODEL_SCHEMA_VERSION.to_string(),
            });
        }
        serde_json::from_value(value).map_err(|e| Error::ModelFormat(e.to_string()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> (Vec<Vec<f64>>, Vec<usize>) {
        let x: Vec<Vec<f64>> = (0..30)
            .map(|i| vec![(i % 3) as f64 * 2.0 + (i as f64) * 0.01, (i % 5) as f64])
            .collect();
        let y: Vec<usize> = (0..30).map(|i| i % 3).collect();
        (x, y)
    }

    #[test]
    fn family_parsing_and_reserved_names() {
        assert_eq!("random_forest".parse::<ModelFamily>().unwrap(), ModelFamily::RandomForest);
        assert_eq!("vanilla_nn".parse::<ModelFamily>().unwrap(), ModelFamily::VanillaNn);
        let err = "adaboost".parse::<ModelFamily>().unwrap_err().to_string();
        assert!(err.contains("reserved") && err.contains("adaboost"), "{err}");
        let err = "gradient_boosting".parse::<ModelFamily>().unwrap_err().to_string();
        assert!(err.contains("not implemented"), "{err}");
        let err = "svm".parse::<ModelFamily>().unwrap_err().to_string();
        assert!(err.contains("unknown") && err.contains("decision_tree"), "{err}");
    }

    #[test]
    fn feature_source_names_round_trip() {
        for source in [FeatureSource::X, FeatureSource::XScaled, FeatureSource::XEmb] {
            assert_eq!(source.as_str().parse::<FeatureSource>().unwrap(), source);
        }
        assert!("x_emb".parse::<FeatureSource>().is_err());
    }

    #[test]
    fn artifact_round_trip_preserves_predictions_exactly() {
        let (x, y) = toy();
        let spec = ModelSpec {
            family: ModelFamily::RandomForest,
            forest: ForestParams {
                n_trees: 12,
                master_seed: 5,
                ..ForestParams::default()
            },
            ..ModelSpec::default()
        };
        let model = spec.fit(&x, &y, 3).unwrap();
        let artifact = ModelArtifact::new(Framework::Author, FeatureSource::X, 5, None, model);
        let json = artifact.to_json().unwrap();
        let reloaded = ModelArtifact::from_json(&json).unwrap();
        assert_eq!(artifact, reloaded);
        for row in &x {
            assert_eq!(artifact.predict_proba(row), reloaded.predict_proba(row));
        }
        assert_eq!(reloaded.class_names, vec!["A_PWA", "A_PUNX", "A_PAX"]);
    }

    #[test]
    fn schema_mismatch_names_both_versions() {
        let (x, y) = toy();
        let model = ModelSpec {
            family: ModelFamily::DecisionTree,
            ..ModelSpec::default()
        }
        .fit(&x, &y, 3)
        .unwrap();
        let artifact = ModelArtifact::new(Framework::External, FeatureSource::X, 0, None, model);
        let json = artifact
            .to_json()
            .unwrap()
            .replace(MODEL_SCHEMA_VERSION, "reprospect.model.v0");
        let err = ModelArtifact::from_json(&json).unwrap_err().to_string();
        assert!(err.contains("reprospect.model.v0"), "{err}");
        assert!(err.contains(MODEL_SCHEMA_VERSION), "{err}");
    }

    #[test]
    fn artifact_applies_its_scaler() {
        let (x, y) = toy();
        let scaler = fit_scaler(&x).unwrap();
        let xs = apply_scaler(&scaler, &x);
        let spec = ModelSpec {
            family: ModelFamily::Logistic,
            ..ModelSpec::default()
        };
        let model = spec.fit(&xs, &y, 3).unwrap();
        let artifact = ModelArtifact::new(
            Framework::Author,
            FeatureSource::XScaled,
            0,
            Some(scaler.clone()),
            model.clone(),
        );
        for (raw, scaled) in x.iter().zip(&xs) {
            assert_eq!(artifact.predict_proba(raw), model.predict_proba(scaled));
        }
    }

    #[test]
    fn vanilla_nn_reports_its_family() {
        let (x, y) = toy();
        let model = ModelSpec {
            family: ModelFamily::VanillaNn,
            mlp: MlpParams {
                epochs: 2,
                ..MlpParams::default()
            },
            ..ModelSpec::default()
        }
        .fit(&x, &y, 3)
        .unwrap();
        assert_eq!(model.family(), ModelFamily::VanillaNn);
        match &model {
            TrainedModel::Mlp(m) => assert_eq!(m.params.hidden_width, 0),
            other => panic!("unexpected family {other:?}"),
        }
    }

    #[test]
    fn importance_only_for_tree_models() {
        let (x, y) = toy();
        let tree = ModelSpec {
            family: ModelFamily::DecisionTree,
            ..ModelSpec::default()
        }
        .fit(&x, &y, 3)
        .unwrap();
        assert!(tree.importance().is_some());
        let logistic = ModelSpec {
            family: ModelFamily::Logistic,
            logistic: LogisticParams {
                epochs: 5,
                ..LogisticParams::default()
            },
            ..ModelSpec::default()
        }
        .fit(&x, &y, 3)
        .unwrap();
        assert!(logistic.importance().is_none());
    }
}
