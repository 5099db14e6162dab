//! Train/test evaluation: stratified splitting, classification metrics,
//! reliability curves, importance ranking, and SVG report rendering.

pub mod calibration;
pub mod metrics;
pub mod pipeline;
pub mod split;
pub mod svg;

pub use calibration::{calibration_curve, calibration_report, CalibrationBin, CalibrationReport, ClassCalibration};
pub use metrics::{classification_metrics, MetricsReport};
pub use pipeline::{evaluate_pipeline, feature_matrix, label_indices, rank_importance, EvalConfig, EvalOutcome, ImportanceEntry};
pub use split::{stratified_split, SplitIndices};
pub use svg::{calibration_svg, importance_svg};
