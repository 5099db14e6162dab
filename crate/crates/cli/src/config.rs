//! Run configuration: a flat key = value file, environment override for
//! the output directory, and CLI flags on top. Precedence is flag, then
//! environment, then config file, then built-in default. The effective
//! configuration is echoed into every report so artifacts are
//! self-describing.

use anyhow::{anyhow, bail, Context, Result};
use reprospect_core::corpus::{parse_embeddings, EmbeddingTable};
use reprospect_core::eval::EvalConfig;
use reprospect_core::models::{
    FeatureSource, ForestParams, LogisticParams, MlpParams, ModelFamily, ModelSpec, TreeParams,
};
use reprospect_core::spectrum::Framework;
use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;

use crate::CommonArgs;

/// Environment override for the output directory; a --output-dir flag
/// still wins over it.
pub const OUTPUT_DIR_ENV: &str = "REPROSPECT_OUTPUT_DIR";

/// Report formats a run may emit. Absent means every applicable format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl OutputFormat {
    fn as_str(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
            OutputFormat::Svg => "svg",
        }
    }
}

/// Which spectrum framework(s) a command runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrameworkChoice {
    Author,
    External,
    Both,
}

impl FrameworkChoice {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameworkChoice::Author => "author",
            FrameworkChoice::External => "external",
            FrameworkChoice::Both => "both",
        }
    }

    /// The concrete frameworks to run, in a fixed order.
    pub fn frameworks(self) -> Vec<Framework> {
        match self {
            FrameworkChoice::Author => vec![Framework::Author],
            FrameworkChoice::External => vec![Framework::External],
            FrameworkChoice::Both => vec![Framework::Author, Framework::External],
        }
    }
}

impl FromStr for FrameworkChoice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "author" => Ok(FrameworkChoice::Author),
            "external" => Ok(FrameworkChoice::External),
            "both" => Ok(FrameworkChoice::Both),
            other => Err(anyhow!(
                "unknown framework '{other}'; expected author, external, or both"
            )),
        }
    }
}

/// Every setting a run can consume, after all override layers.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub corpus: Option<PathBuf>,
    pub embeddings: Option<PathBuf>,
    /// Pinned embedding dimension; when absent the file header decides.
    pub embedding_dim: Option<usize>,
    pub framework: FrameworkChoice,
    pub model: ModelFamily,
    pub features: FeatureSource,
    pub seed: u64,
    pub output_dir: PathBuf,
    pub format: Option<OutputFormat>,
    pub test_fraction: f64,
    pub n_bins: usize,
    pub tree: TreeParams,
    pub forest: ForestParams,
    pub logistic: LogisticParams,
    pub mlp: MlpParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            corpus: None,
            embeddings: None,
            embedding_dim: None,
            framework: FrameworkChoice::Both,
            model: ModelFamily::RandomForest,
            features: FeatureSource::X,
            seed: 42,
            output_dir: PathBuf::from("out"),
            format: None,
            test_fraction: 0.2,
            n_bins: 10,
            tree: TreeParams::default(),
            forest: ForestParams::default(),
            logistic: LogisticParams::default(),
            mlp: MlpParams::default(),
        }
    }
}

impl RunConfig {
    /// Resolves the full configuration from a CommonArgs bundle.
    pub fn load(args: &CommonArgs) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &args.config {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config file {}", path.display()))?;
            apply_config_file(&mut cfg, &text)?;
        }
        if let Ok(dir) = std::env::var(OUTPUT_DIR_ENV) {
            if !dir.is_empty() {
                cfg.output_dir = PathBuf::from(dir);
            }
        }
        if let Some(p) = &args.corpus {
            cfg.corpus = Some(p.clone());
        }
        if let Some(p) = &args.embeddings {
            cfg.embeddings = Some(p.clone());
        }
        if let Some(f) = &args.framework {
            cfg.framework = f.parse()?;
        }
        if let Some(m) = &args.model {
            cfg.model = m.parse().map_err(anyhow::Error::msg)?;
        }
        if let Some(f) = &args.features {
            cfg.features = f.parse().map_err(anyhow::Error::msg)?;
        }
        if let Some(s) = args.seed {
            cfg.seed = s;
        }
        if let Some(dir) = &args.output_dir {
            cfg.output_dir = dir.clone();
        }
        if let Some(f) = args.format {
            cfg.format = Some(f);
        }
        if let Some(t) = args.test_fraction {
            cfg.test_fraction = t;
        }
        if let Some(b) = args.n_bins {
            cfg.n_bins = b;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        if !(self.test_fraction > 0.0 && self.test_fraction < 1.0) {
            bail!(
                "test_fraction must lie strictly between 0 and 1, got {}",
                self.test_fraction
            );
        }
        if self.n_bins < 2 {
            bail!("n_bins must be at least 2, got {}", self.n_bins);
        }
        Ok(())
    }

    /// True when the requested format (or "all formats") includes `f`.
    pub fn emits(&self, f: OutputFormat) -> bool {
        self.format.is_none_or(|chosen| chosen == f)
    }

    pub fn model_spec(&self) -> ModelSpec {
        ModelSpec {
            family: self.model,
            tree: self.tree.clone(),
            forest: self.forest.clone(),
            logistic: self.logistic.clone(),
            mlp: self.mlp.clone(),
        }
    }

    pub fn eval_config(&self) -> EvalConfig {
        EvalConfig {
            model: self.model_spec(),
            feature_source: self.features,
            test_fraction: self.test_fraction,
            n_bins: self.n_bins,
            seed: self.seed,
        }
    }

    /// Loads the embedding table when a path is configured. The expected
    /// dimension comes from the `embedding_dim` key when pinned, otherwise
    /// from the file's own header.
    pub fn load_embedding_table(&self) -> Result<Option<EmbeddingTable>> {
        let Some(path) = &self.embeddings else {
            return Ok(None);
        };
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read embeddings file {}", path.display()))?;
        let dim = match self.embedding_dim {
            Some(d) => d,
            None => peek_embedding_dim(&text)?,
        };
        Ok(Some(parse_embeddings(&text, dim)?))
    }

    /// The effective configuration as sorted key = value pairs, echoed
    /// verbatim into every report.
    pub fn effective_entries(&self) -> Vec<(String, String)> {
        let mut map = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            map.insert(k.to_string(), v);
        };
        if let Some(p) = &self.corpus {
            put("corpus", p.display().to_string());
        }
        if let Some(p) = &self.embeddings {
            put("embeddings", p.display().to_string());
        }
        if let Some(d) = self.embedding_dim {
            put("embedding_dim", d.to_string());
        }
        put("framework", self.framework.as_str().to_string());
        put("model", model_key(self.model).to_string());
        put("features", feature_key(self.features).to_string());
        put("seed", self.seed.to_string());
        put("output_dir", self.output_dir.display().to_string());
        put(
            "format",
            self.format.map_or("all".to_string(), |f| f.as_str().to_string()),
        );
        put("test_fraction", self.test_fraction.to_string());
        put("n_bins", self.n_bins.to_string());
        match self.model {
            ModelFamily::DecisionTree => {
                put("tree_max_depth", opt_usize(self.tree.max_depth));
                put(
                    "tree_min_samples_leaf",
                    self.tree.min_samples_leaf.to_string(),
                );
            }
            ModelFamily::RandomForest => {
                put("forest_trees", self.forest.n_trees.to_string());
                put("forest_max_depth", opt_usize(self.forest.max_depth));
                put(
                    "forest_min_samples_leaf",
                    self.forest.min_samples_leaf.to_string(),
                );
                put(
                    "forest_features_per_split",
                    self.forest
                        .features_per_split
                        .map_or("sqrt".to_string(), |m| m.to_string()),
                );
                put("forest_bootstrap", self.forest.bootstrap.to_string());
            }
            ModelFamily::Logistic => {
                put(
                    "logistic_learning_rate",
                    self.logistic.learning_rate.to_string(),
                );
                put("logistic_epochs", self.logistic.epochs.to_string());
                put("logistic_l2", self.logistic.l2.to_string());
            }
            ModelFamily::Mlp | ModelFamily::VanillaNn => {
                let hidden = if self.model == ModelFamily::VanillaNn {
                    0
                } else {
                    self.mlp.hidden_width
                };
                put("mlp_hidden_width", hidden.to_string());
                put("mlp_learning_rate", self.mlp.learning_rate.to_string());
                put("mlp_epochs", self.mlp.epochs.to_string());
                put("mlp_batch_size", self.mlp.batch_size.to_string());
            }
        }
        map.into_iter().collect()
    }
}

fn opt_usize(v: Option<usize>) -> String {
    v.map_or("none".to_string(), |n| n.to_string())
}

pub(crate) fn model_key(family: ModelFamily) -> &'static str {
    match family {
        ModelFamily::DecisionTree => "decision_tree",
        ModelFamily::RandomForest => "random_forest",
        ModelFamily::Logistic => "logistic",
        ModelFamily::Mlp => "mlp",
        ModelFamily::VanillaNn => "vanilla_nn",
    }
}

pub(crate) fn feature_key(source: FeatureSource) -> &'static str {
    match source {
        FeatureSource::X => "X",
        FeatureSource::XScaled => "X_scaled",
        FeatureSource::XEmb => "X_emb",
    }
}

/// Reads the `dim=<d>` header without committing to a full parse.
fn peek_embedding_dim(text: &str) -> Result<usize> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| anyhow!("embeddings file is empty; expected a dim=<d> header"))?;
    header
        .strip_prefix("dim=")
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| anyhow!("bad embeddings header {header:?}; expected \"dim=<d>\""))
}

/// Applies a flat key = value config file. Unknown keys, duplicate keys,
/// and malformed lines are all rejected with their line number.
fn apply_config_file(cfg: &mut RunConfig, text: &str) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            anyhow!("config line {line_no}: expected key = value, got {line:?}")
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            bail!("config line {line_no}: empty key");
        }
        if !seen.insert(key.to_string()) {
            bail!("config line {line_no}: duplicate key '{key}'");
        }
        apply_key(cfg, key, value).with_context(|| format!("config line {line_no}"))?;
    }
    Ok(())
}

fn apply_key(cfg: &mut RunConfig, key: &str, value: &str) -> Result<()> {
    fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
        value
            .parse()
            .map_err(|_| anyhow!("key '{key}': invalid value '{value}'"))
    }
    fn opt_depth(key: &str, value: &str) -> Result<Option<usize>> {
        if value == "none" {
            Ok(None)
        } else {
            num(key, value).map(Some)
        }
    }
    match key {
        "corpus" => cfg.corpus = Some(PathBuf::from(value)),
        "embeddings" => cfg.embeddings = Some(PathBuf::from(value)),
        "embedding_dim" => cfg.embedding_dim = Some(num(key, value)?),
        "framework" => cfg.framework = value.parse()?,
        "model" => cfg.model = value.parse().map_err(anyhow::Error::msg)?,
        "features" => cfg.features = value.parse().map_err(anyhow::Error::msg)?,
        "seed" => cfg.seed = num(key, value)?,
        "output_dir" => cfg.output_dir = PathBuf::from(value),
        "format" => {
            cfg.format = match value {
                "csv" => Some(OutputFormat::Csv),
                "json" => Some(OutputFormat::Json),
                "svg" => Some(OutputFormat::Svg),
                "all" => None,
                other => bail!("key 'format': invalid value '{other}'; expected csv, json, svg, or all"),
            }
        }
        "test_fraction" => cfg.test_fraction = num(key, value)?,
        "n_bins" => cfg.n_bins = num(key, value)?,
        "tree_max_depth" => cfg.tree.max_depth = opt_depth(key, value)?,
        "tree_min_samples_leaf" => cfg.tree.min_samples_leaf = num(key, value)?,
        "forest_trees" => cfg.forest.n_trees = num(key, value)?,
        "forest_max_depth" => cfg.forest.max_depth = opt_depth(key, value)?,
        "forest_min_samples_leaf" => cfg.forest.min_samples_leaf = num(key, value)?,
        "forest_features_per_split" => {
            cfg.forest.features_per_split = if value == "sqrt" {
                None
            } else {
                Some(num(key, value)?)
            }
        }
        "forest_bootstrap" => cfg.forest.bootstrap = num(key, value)?,
        "logistic_learning_rate" => cfg.logistic.learning_rate = num(key, value)?,
        "logistic_epochs" => cfg.logistic.epochs = num(key, value)?,
        "logistic_l2" => cfg.logistic.l2 = num(key, value)?,
        "mlp_hidden_width" => cfg.mlp.hidden_width = num(key, value)?,
        "mlp_learning_rate" => cfg.mlp.learning_rate = num(key, value)?,
        "mlp_epochs" => cfg.mlp.epochs = num(key, value)?,
        "mlp_batch_size" => cfg.mlp.batch_size = num(key, value)?,
        other => bail!("unknown config key '{other}'"),
    }
    Ok(())
}
