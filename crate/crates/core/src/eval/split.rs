//! Seeded stratified train/test partition over label indices.

use crate::error::Error;
use crate::Result;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIndices {
    pub train: Vec<usize>,
    pub test: Vec<usize>,
}

/// Splits sample indices so each class lands in the test set in proportion
/// test_fraction (within one sample), with at least one sample per class on
/// each side. Classes with no members are simply absent; a class with a
/// single member cannot be stratified and is an error.
pub fn stratified_split(
    y: &[usize],
    class_names: &[String],
    test_fraction: f64,
    seed: u64,
) -> Result<SplitIndices> {
    if y.is_empty() {
        return Err(Error::invalid("cannot split an empty dataset"));
    }
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::invalid(format!(
            "test fraction must be in (0, 1), got {test_fraction}"
        )));
    }
    if let Some(&bad) = y.iter().find(|&&c| c >= class_names.len()) {
        return Err(Error::invalid(format!(
            "label index {bad} outside the {} declared classes",
            class_names.len()
        )));
    }

    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); class_names.len()];
    for (i, &c) in y.iter().enumerate() {
        by_class[c].push(i);
    }
    let singletons: Vec<&str> = by_class
        .iter()
        .enumerate()
        .filter(|(_, members)| members.len() == 1)
        .map(|(c, _)| class_names[c].as_str())
        .collect();
    if !singletons.is_empty() {
        return Err(Error::invalid(format!(
            "cannot stratify: class(es) {} have only 1 member",
            singletons.join(", ")
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for members in by_class.iter_mut() {
        if members.is_empty() {
            continue;
        }
        members.shuffle(&mut rng);
        let n = members.len();
        let want = (test_fraction * n as f64).round() as usize;
        let take = want.clamp(1, n - 1);
        test.extend_from_slice(&members[..take]);
        train.extend_from_slice(&members[take..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok(SplitIndices { train, test })
}
