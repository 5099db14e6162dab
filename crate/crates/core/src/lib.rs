//! Dual-spectrum reproducibility assessment for scholarly papers.
//!
//! This crate labels papers on two reproducibility spectrums derived from
//! artifact badges (an author-centric and an external-agent framework),
//! extracts a 16-feature vector from full text and metadata, runs a
//! statistical battery over the numerical features, and trains interpretable
//! predictive models with evaluation, feature-importance, and
//! confidence-calibration reporting.
//!
//! Modules:
//! - [`corpus`]: paper records, section segmentation, embedding tables
//! - [`spectrum`]: badge-set to spectrum-label mapping
//! - [`textfeat`]: the 16-feature vector (readability, lexical diversity, mentions)
//! - [`stats`]: Shapiro-Wilk, Levene, Kruskal-Wallis battery
//! - [`models`]: decision tree, random forest, logistic regression, MLP
//! - [`eval`]: splits, metrics, calibration curves, report emission

pub mod corpus;
pub mod error;
pub mod eval;
pub mod models;
pub mod spectrum;
pub mod stats;
pub mod textfeat;

pub use corpus::{BadgeSet, EmbeddingTable, PaperRecord, SectionedDocument};
pub use error::Error;
pub use eval::{CalibrationReport, MetricsReport};
pub use models::TrainedModel;
pub use spectrum::{AuthorLabel, ExternalLabel, SpectrumLabel};
pub use textfeat::FeatureVector;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Splitmix64 step, used to derive independent sub-seeds from the single
/// run seed without coupling consumers to each other.
pub fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
