//! Statistical battery over the numerical features: Shapiro-Wilk
//! normality on the pooled sample, Levene homogeneity and Kruskal-Wallis
//! significance across spectrum label groups.

pub mod special;

mod kruskal;
mod levene;
mod shapiro;

pub use kruskal::kruskal_wallis;
pub use levene::{levene, levene_with_center, LeveneCenter};
pub use shapiro::shapiro_wilk;

use crate::error::Error;
use crate::spectrum::{Framework, SpectrumLabel};
use crate::textfeat::FeatureVector;
use crate::Result;
use rayon::prelude::*;
use serde::Serialize;

/// A completed hypothesis test: W for Shapiro-Wilk and Levene, H for
/// Kruskal-Wallis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatResult {
    pub test: &'static str,
    pub statistic: f64,
    pub p_value: f64,
    /// Input sample sizes: one entry per group, or a single entry for the
    /// pooled Shapiro-Wilk sample.
    pub group_sizes: Vec<usize>,
    /// Degrees of freedom: empty for Shapiro-Wilk, [k-1, N-k] for Levene,
    /// [k-1] for Kruskal-Wallis.
    pub df: Vec<usize>,
}

/// One battery cell: a (feature, test) pair that either completed or was
/// skipped for a recorded reason.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryEntry {
    pub feature: &'static str,
    pub test: &'static str,
    pub outcome: BatteryOutcome,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "snake_case")]
pub enum BatteryOutcome {
    Completed(StatResult),
    Skipped { reason: String },
}

/// Full battery output: 3 tests for each of the 5 numerical features, in
/// feature-major, test-minor order, plus dataset-level warnings.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub framework: Framework,
    pub entries: Vec<BatteryEntry>,
    pub warnings: Vec<String>,
}

const BATTERY_TESTS: [&str; 3] = ["shapiro-wilk", "levene", "kruskal-wallis"];

/// Runs the battery on the five numerical features, grouping by the
/// requested framework's labels. Labels absent from the dataset are
/// dropped with a warning; a test whose preconditions fail (singleton
/// group, degenerate sample) is skipped with the reason recorded.
pub fn run_battery(
    features: &[FeatureVector],
    labels: &[SpectrumLabel],
    framework: Framework,
) -> Result<BatteryReport> {
    if features.len() != labels.len() {
        return Err(Error::invalid(format!(
            "feature table has {} rows but {} labels were provided",
            features.len(),
            labels.len()
        )));
    }
    if features.is_empty() {
        return Err(Error::invalid("cannot run battery on an empty dataset"));
    }

    let group_names = framework.label_names();
    let mut warnings = Vec::new();
    // Indices per label, in the framework's canonical label order.
    let groups: Vec<(&'static str, Vec<usize>)> = group_names
        .iter()
        .map(|&name| {
            let idx: Vec<usize> = labels
                .iter()
                .enumerate()
                .filter(|(_, l)| l.name_for(framework) == name)
                .map(|(i, _)| i)
                .collect();
            (name, idx)
        })
        .collect();
    for (name, idx) in &groups {
        if idx.is_empty() {
            warnings.push(format!(
                "label {name} absent from dataset; group-based tests run over remaining groups"
            ));
        }
    }
    let present: Vec<(&'static str, &Vec<usize>)> = groups
        .iter()
        .filter(|(_, idx)| !idx.is_empty())
        .map(|(n, idx)| (*n, idx))
        .collect();

    let feature_names = FeatureVector::battery_feature_names();
    let entries: Vec<BatteryEntry> = (0..feature_names.len())
        .into_par_iter()
        .flat_map_iter(|fi| {
            let name = feature_names[fi];
            let pooled: Vec<f64> = features.iter().map(|f| f.battery_values()[fi]).collect();
            let group_values: Vec<(&'static str, Vec<f64>)> = present
                .iter()
                .map(|(gname, idx)| (*gname, idx.iter().map(|&i| pooled[i]).collect()))
                .collect();
            battery_row(name, &pooled, &group_values)
        })
        .collect();

    Ok(BatteryReport {
        framework,
        entries,
        warnings,
    })
}

/// The three test cells for one feature, in test order.
fn battery_row(
    feature: &'static str,
    pooled: &[f64],
    groups: &[(&'static str, Vec<f64>)],
) -> Vec<BatteryEntry> {
    let entry = |test: &'static str, outcome: BatteryOutcome| BatteryEntry {
        feature,
        test,
        outcome,
    };
    let from = |r: Result<StatResult>| match r {
        Ok(res) => BatteryOutcome::Completed(res),
        Err(e) => BatteryOutcome::Skipped {
            reason: e.to_string(),
        },
    };

    let shapiro = from(shapiro_wilk(pooled));

    let singletons: Vec<&str> = groups
        .iter()
        .filter(|(_, v)| v.len() < 2)
        .map(|(n, _)| *n)
        .collect();
    let (lev, kw) = if !singletons.is_empty() {
        let reason = format!(
            "group(s) {} have fewer than 2 members",
            singletons.join(", ")
        );
        (
            BatteryOutcome::Skipped {
                reason: reason.clone(),
            },
            BatteryOutcome::Skipped { reason },
        )
    } else if groups.len() < 2 {
        let reason = format!("only {} non-empty group(s) after grouping", groups.len());
        (
            BatteryOutcome::Skipped {
                reason: reason.clone(),
            },
            BatteryOutcome::Skipped { reason },
        )
    } else {
        let refs: Vec<&[f64]> = groups.iter().map(|(_, v)| v.as_slice()).collect();
        (from(levene(&refs)), from(kruskal_wallis(&refs)))
    };

    vec![
        entry(BATTERY_TESTS[0], shapiro),
        entry(BATTERY_TESTS[1], lev),
        entry(BATTERY_TESTS[2], kw),
    ]
}
