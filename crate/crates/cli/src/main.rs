//! reprospect: dual-spectrum reproducibility labels, text features,
//! distribution statistics, and interpretable predictive models for
//! scholarly paper corpora.
//!
//! Exit codes: 0 on success, 1 with a single-line diagnostic on any
//! validation or runtime failure, 2 on usage errors.

mod commands;
mod config;
mod output;

use clap::{Args, Parser, Subcommand};
use config::{OutputFormat, RunConfig};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "reprospect",
    version,
    about = "Reproducibility spectrum labeling, features, statistics, and models for paper corpora"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a corpus file and write its canonical form
    Ingest(CommonArgs),
    /// Map artifact badges to author and external spectrum labels
    Label(CommonArgs),
    /// Extract the 16-feature vector for every paper
    Featurize(CommonArgs),
    /// Run the normality, variance, and significance battery
    Stats(CommonArgs),
    /// Fit a model on the full corpus and save its artifact
    Train(CommonArgs),
    /// Split, fit, and report metrics, calibration, and importance
    Evaluate(CommonArgs),
    /// Report calibration curves for a fresh evaluation run
    Calibrate(CommonArgs),
    /// Report Gini feature importance for a tree-based model
    Importance(CommonArgs),
    /// Predict labels for featurized lines with a saved model
    Predict(PredictArgs),
}

/// Flags shared by every corpus-driven subcommand. Each one overrides
/// the matching config-file key.
#[derive(Args)]
pub struct CommonArgs {
    /// Flat key = value config file
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Corpus file: one JSON record per line
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Embedding sidecar file (dim=<d> header, one chunk per line)
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
    /// Spectrum framework: author, external, or both
    #[arg(long)]
    pub framework: Option<String>,
    /// Model family: decision_tree, random_forest, logistic, mlp, vanilla_nn
    #[arg(long)]
    pub model: Option<String>,
    /// Feature source: X, X_scaled, or X_emb
    #[arg(long)]
    pub features: Option<String>,
    /// Master seed; every random stream derives from it
    #[arg(long)]
    pub seed: Option<u64>,
    /// Directory for artifacts (REPROSPECT_OUTPUT_DIR overrides config)
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    /// Emit only one report format
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Held-out fraction for evaluation splits
    #[arg(long)]
    pub test_fraction: Option<f64>,
    /// Calibration bin count
    #[arg(long)]
    pub n_bins: Option<usize>,
}

#[derive(Args)]
pub struct PredictArgs {
    /// Saved model artifact (JSON)
    #[arg(long)]
    pub model: PathBuf,
    /// One featurized line: id followed by comma-separated feature values
    /// (for X_emb models, just the paper id)
    #[arg(long)]
    pub line: Vec<String>,
    /// File of featurized lines, one per row
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Embedding sidecar file (required for X_emb models)
    #[arg(long)]
    pub embeddings: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Ingest(args) => commands::ingest(&RunConfig::load(&args)?),
        Command::Label(args) => commands::label(&RunConfig::load(&args)?),
        Command::Featurize(args) => commands::featurize(&RunConfig::load(&args)?),
        Command::Stats(args) => commands::stats(&RunConfig::load(&args)?),
        Command::Train(args) => commands::train(&RunConfig::load(&args)?),
        Command::Evaluate(args) => commands::evaluate(&RunConfig::load(&args)?),
        Command::Calibrate(args) => commands::calibrate(&RunConfig::load(&args)?),
        Command::Importance(args) => commands::importance(&RunConfig::load(&args)?),
        Command::Predict(args) => commands::predict(&args),
    }
}
