//! The 16-feature vector: structural and linguistic features computed
//! from full text, plus metadata features copied from the paper record.

mod mtld;
mod readability;
mod scan;
mod textstats;

pub use mtld::{mtld, MTLD_CAP, MTLD_THRESHOLD};
pub use readability::{
    median_readability, normalized_scores, readability_scores, ReadabilityScores, SCORE_BOUNDS,
};
pub use scan::{count_structures, detect_mentions};
pub use textstats::{compute_text_stats, count_sentences, lowercase_tokens, syllables_in, words, TextStats};

use crate::corpus::{segment_sections, PaperRecord, SectionedDocument};
use rayon::prelude::*;

/// One paper's features X1..X16, plus any computation warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    pub id: String,
    /// X1: distinct numbered algorithms.
    pub n_algorithms: u32,
    /// X2: display-equation lines.
    pub n_equations: u32,
    /// X3: Google Scholar citations.
    pub citations: u64,
    /// X4: venue publishes a reproducibility checklist.
    pub checklist: bool,
    /// X5: venue mandates artifact submission.
    pub mandatory_artifacts: bool,
    /// X6: venue grants reproducibility awards.
    pub awards: bool,
    /// X7: venue supports author correspondence for reproducibility.
    pub correspondence: bool,
    /// X8: Zenodo mentioned before the references.
    pub zenodo_mention: bool,
    /// X9: GitHub mentioned before the references.
    pub github_mention: bool,
    /// X10-X12: PapersWithCode flags, precomputed upstream.
    pub pwc_github: bool,
    pub pwc_datasets: bool,
    pub pwc_methods: bool,
    /// X13: normalized readability composite in [0,1].
    pub median_readability: f64,
    /// X14: MTLD, clamped to [0, cap].
    pub mtld: f64,
    /// X15: funding source declared.
    pub funding: bool,
    /// X16: supplemental material available.
    pub supplemental: bool,
    /// Non-fatal anomalies hit while featurizing (e.g. undefined MTLD).
    pub warnings: Vec<String>,
}

/// Descriptive labels for X1..X16, in index order.
pub const FEATURE_LABELS: [&str; 16] = [
    "Number of Algorithms",
    "Number of Equations",
    "Google Scholar citations",
    "Availability of reproducibility checklist",
    "Mandatory artifact submission for papers",
    "Reproducibility Awards",
    "Author Correspondence for Reproducibility",
    "Mention of Zenodo Artifacts",
    "Mention of GitHub Code Repository",
    "Mention on Papers With Code GitHub Repository",
    "Mention on Papers With Code Datasets",
    "Mention on Papers With Code Methods",
    "Median Readability",
    "Measure of lexical textual diversity",
    "Availability of Funding source",
    "Availability of Supplemental information",
];

impl FeatureVector {
    /// Display names for the five numerical features tested in the
    /// battery, in report order.
    pub fn battery_feature_names() -> [&'static str; 5] {
        [
            "Median Readability",
            "Number of Algorithms",
            "Number of Equations",
            "Google Scholar citations",
            "Measure of lexical textual diversity",
        ]
    }

    /// Values of the five battery features, aligned with
    /// `battery_feature_names`.
    pub fn battery_values(&self) -> [f64; 5] {
        [
            self.median_readability,
            self.n_algorithms as f64,
            self.n_equations as f64,
            self.citations as f64,
            self.mtld,
        ]
    }

    /// The full vector in X1..X16 order, booleans as 0/1.
    pub fn values(&self) -> [f64; 16] {
        let b = |v: bool| if v { 1.0 } else { 0.0 };
        [
            self.n_algorithms as f64,
            self.n_equations as f64,
            self.citations as f64,
            b(self.checklist),
            b(self.mandatory_artifacts),
            b(self.awards),
            b(self.correspondence),
            b(self.zenodo_mention),
            b(self.github_mention),
            b(self.pwc_github),
            b(self.pwc_datasets),
            b(self.pwc_methods),
            self.median_readability,
            self.mtld,
            b(self.funding),
            b(self.supplemental),
        ]
    }

    /// Output-file line: id then X1..X16 comma-separated, counts and
    /// booleans as integers, reals with at least 6 significant digits.
    pub fn to_output_line(&self) -> String {
        let b = |v: bool| if v { "1" } else { "0" };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.id,
            self.n_algorithms,
            self.n_equations,
            self.citations,
            b(self.checklist),
            b(self.mandatory_artifacts),
            b(self.awards),
            b(self.correspondence),
            b(self.zenodo_mention),
            b(self.github_mention),
            b(self.pwc_github),
            b(self.pwc_datasets),
            b(self.pwc_methods),
            fmt_real6(self.median_readability),
            fmt_real6(self.mtld),
            b(self.funding),
            b(self.supplemental),
        )
    }
}

/// Deterministic real formatting with >= 6 significant digits: plain
/// fixed-point for ordinary magnitudes, scientific for tiny ones.
pub fn fmt_real6(v: f64) -> String {
    if v == 0.0 || v.abs() >= 0.1 {
        format!("{v:.6}")
    } else {
        format!("{v:.6e}")
    }
}

/// Assembles the feature vector from a record, its sectioned text, and
/// the three PapersWithCode flags (X10, X11, X12).
pub fn featurize(
    record: &PaperRecord,
    doc: &SectionedDocument,
    pwc_flags: [bool; 3],
) -> FeatureVector {
    let mut warnings = Vec::new();
    let (n_algorithms, n_equations) = count_structures(doc);
    let (zenodo_mention, github_mention) = detect_mentions(doc);

    let stats = compute_text_stats(&record.full_text);
    // Degenerate text would otherwise score 1.0 on the flipped grade
    // metrics; an absent text carries no readability signal at all.
    let x13 = if stats.is_degenerate() {
        0.0
    } else {
        median_readability(&readability_scores(&stats, &record.full_text))
    };

    let tokens = lowercase_tokens(&record.full_text);
    let x14 = if tokens.is_empty() {
        warnings.push("empty token stream: MTLD undefined, feature set to 0".to_string());
        0.0
    } else {
        mtld(&tokens, MTLD_THRESHOLD).expect("non-empty tokens, valid threshold")
    };

    FeatureVector {
        id: record.id.clone(),
        n_algorithms,
        n_equations,
        citations: record.citations,
        checklist: record.checklist,
        mandatory_artifacts: record.mandatory_artifacts,
        awards: record.awards,
        correspondence: record.correspondence,
        zenodo_mention,
        github_mention,
        pwc_github: pwc_flags[0],
        pwc_datasets: pwc_flags[1],
        pwc_methods: pwc_flags[2],
        median_readability: x13,
        mtld: x14,
        funding: record.funding,
        supplemental: record.supplemental,
        warnings,
    }
}

/// Featurizes one record, segmenting its text and using its stored
/// PapersWithCode flags.
pub fn featurize_record(record: &PaperRecord) -> FeatureVector {
    let doc = segment_sections(&record.full_text);
    featurize(
        record,
        &doc,
        [record.pwc_github, record.pwc_datasets, record.pwc_methods],
    )
}

/// Parallel featurization of a whole corpus; output order matches input
/// order.
pub fn featurize_corpus(records: &[PaperRecord]) -> Vec<FeatureVector> {
    records.par_iter().map(featurize_record).collect()
}
