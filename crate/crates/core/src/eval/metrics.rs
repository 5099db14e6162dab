//! Accuracy, per-class F1, macro/weighted averages, and the confusion
//! matrix. Zero-denominator precision, recall, or F1 is reported as 0 and
//! flagged per class.

use crate::error::Error;
use crate::Result;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub class_names: Vec<String>,
    pub accuracy: f64,
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
    pub f1: Vec<f64>,
    pub macro_f1: f64,
    pub weighted_f1: f64,
    pub support: Vec<usize>,
    /// Rows are true classes, columns predicted classes.
    pub confusion: Vec<Vec<usize>>,
    /// True where a class hit a zero denominator somewhere.
    pub zero_division: Vec<bool>,
}

pub fn classification_metrics(
    y_true: &[usize],
    y_pred: &[usize],
    class_names: &[String],
) -> Result<MetricsReport> {
    if y_true.is_empty() {
        return Err(Error::invalid("cannot score an empty prediction set"));
    }
    if y_true.len() != y_pred.len() {
        return Err(Error::invalid(format!(
            "{} true labels but {} predictions",
            y_true.len(),
            y_pred.len()
        )));
    }
    let k = class_names.len();
    if let Some(&bad) = y_true.iter().chain(y_pred).find(|&&c| c >= k) {
        return Err(Error::invalid(format!(
            "label index {bad} outside the {k} declared classes"
        )));
    }

    let n = y_true.len();
    let mut confusion = vec![vec![0usize; k]; k];
    for (&t, &p) in y_true.iter().zip(y_pred) {
        confusion[t][p] += 1;
    }
    let correct: usize = (0..k).map(|c| confusion[c][c]).sum();
    let support: Vec<usize> = confusion.iter().map(|row| row.iter().sum()).collect();
    let predicted: Vec<usize> = (0..k).map(|c| confusion.iter().map(|row| row[c]).sum()).collect();

    let mut precision = vec![0.0; k];
    let mut recall = vec![0.0; k];
    let mut f1 = vec![0.0; k];
    let mut zero_division = vec![false; k];
    for c in 0..k {
        let tp = confusion[c][c] as f64;
        if predicted[c] > 0 {
            precision[c] = tp / predicted[c] as f64;
        } else {
            zero_division[c] = true;
        }
        if support[c] > 0 {
            recall[c] = tp / support[c] as f64;
        } else {
            zero_division[c] = true;
        }
        if precision[c] + recall[c] > 0.0 {
            f1[c] = 2.0 * precision[c] * recall[c] / (precision[c] + recall[c]);
        } else {
            zero_division[c] = true;
        }
    }

    let macro_f1 = f1.iter().sum::<f64>() / k as f64;
    let weighted_f1 = f1
        .iter()
        .zip(&support)
        .map(|(&f, &s)| s as f64 / n as f64 * f)
        .sum();

    Ok(MetricsReport {
        class_names: class_names.to_vec(),
        accuracy: correct as f64 / n as f64,
        precision,
        recall,
        f1,
        macro_f1,
        weighted_f1,
        support,
        confusion,
        zero_division,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("C{i}")).collect()
    }

    #[test]
    fn perfect_prediction() {
        let y = vec![0, 1, 2, 1, 0];
        let m = classification_metrics(&y, &y, &names(3)).unwrap();
        assert_eq!(m.accuracy, 1.0);
        assert!(m.f1.iter().all(|&v| v == 1.0));
        assert_eq!(m.macro_f1, 1.0);
        assert_eq!(m.weighted_f1, 1.0);
    }

    #[test]
    fn hand_computed_binary_example() {
        let y_true = vec![0, 0, 1, 1];
        let y_pred = vec![0, 1, 1, 1];
        let m = classification_metrics(&y_true, &y_pred, &names(2)).unwrap();
        assert_eq!(m.accuracy, 0.75);
        assert!((m.f1[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((m.f1[1] - 0.8).abs() < 1e-12);
        assert!((m.macro_f1 - 11.0 / 15.0).abs() < 1e-12);
        assert!((m.weighted_f1 - 11.0 / 15.0).abs() < 1e-12);
        assert_eq!(m.confusion, vec![vec![1, 1], vec![0, 2]]);
        assert_eq!(m.support, vec![2, 2]);
    }

    #[test]
    fn never_predicted_class_scores_zero_with_flag() {
        let y_true = vec![0, 1, 1, 2];
        let y_pred = vec![0, 0, 0, 0];
        let m = classification_metrics(&y_true, &y_pred, &names(3)).unwrap();
        assert_eq!(m.f1[1], 0.0);
        assert_eq!(m.f1[2], 0.0);
        assert!(m.zero_division[1] && m.zero_division[2]);
        assert!(!m.zero_division[0]);
    }

    #[test]
    fn confusion_matrix_sums_to_n() {
        let y_true: Vec<usize> = (0..31).map(|i| i % 3).collect();
        let y_pred: Vec<usize> = (0..31).map(|i| (i * 2) % 3).collect();
        let m = classification_metrics(&y_true, &y_pred, &names(3)).unwrap();
        let total: usize = m.confusion.iter().flatten().sum();
        assert_eq!(total, 31);
    }

    #[test]
    fn weighted_f1_is_the_support_weighted_mean() {
        // Random-ish confusion structure; identity must hold exactly.
        let y_true: Vec<usize> = (0..200).map(|i| (i * 13 + 5) % 4).collect();
        let y_pred: Vec<usize> = (0..200).map(|i| (i * 7 + 2) % 4).collect();
        let m = classification_metrics(&y_true, &y_pred, &names(4)).unwrap();
        let manual: f64 = m
            .f1
            .iter()
            .zip(&m.support)
            .map(|(&f, &s)| s as f64 / 200.0 * f)
            .sum();
        assert_eq!(m.weighted_f1, manual);
        let macro_manual = m.f1.iter().sum::<f64>() / 4.0;
        assert_eq!(m.macro_f1, macro_manual);
    }

    #[test]
    fn rejects_mismatched_or_out_of_range() {
        assert!(classification_metrics(&[], &[], &names(2)).is_err());
        assert!(classification_metrics(&[0, 1], &[0], &names(2)).is_err());
        assert!(classification_metrics(&[0, 2], &[0, 0], &names(2)).is_err());
    }
}
