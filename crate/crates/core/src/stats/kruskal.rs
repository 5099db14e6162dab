//! Kruskal-Wallis H test on pooled mid-ranks with tie correction and a
//! chi-square upper-tail p-value.

use super::special::chi_square_sf;
use super::StatResult;
use crate::error::Error;
use crate::Result;

/// Kruskal-Wallis H across `groups`, tie-corrected.
pub fn kruskal_wallis(groups: &[&[f64]]) -> Result<StatResult> {
    let k = groups.len();
    if k < 2 {
        return Err(Error::StatTest {
            test: "kruskal-wallis",
            message: format!("requires at least 2 groups, got {k}"),
        });
    }
    for (gi, g) in groups.iter().enumerate() {
        if g.is_empty() {
            return Err(Error::StatTest {
                test: "kruskal-wallis",
                message: format!("group {gi} is empty"),
            });
        }
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::StatTest {
                test: "kruskal-wallis",
                message: format!("group {gi} contains non-finite values"),
            });
        }
    }

    // Pool with group tags, rank with mid-ranks for ties.
    let mut pooled: Vec<(f64, usize)> = groups
        .iter()
        .enumerate()
        .flat_map(|(gi, g)| g.iter().map(move |&v| (v, gi)))
        .collect();
    let n = pooled.len();
    pooled.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite values"));

    if pooled[0].0 == pooled[n - 1].0 {
        return Err(Error::StatTest {
            test: "kruskal-wallis",
            message: "all pooled values are identical; ranks are degenerate".into(),
        });
    }

    let mut rank_sums = vec![0.0f64; k];
    let mut tie_term = 0.0f64; // sum of t^3 - t over tie groups
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        let t = (j - i) as f64;
        // Ranks are 1-based; the tied block spans ranks i+1 ..= j.
        let mid_rank = (i + 1 + j) as f64 / 2.0;
        for &(_, gi) in &pooled[i..j] {
            rank_sums[gi] += mid_rank;
        }
        tie_term += t * t * t - t;
        i = j;
    }

    let nf = n as f64;
    let mut h = 12.0 / (nf * (nf + 1.0))
        * groups
            .iter()
            .enumerate()
            .map(|(gi, g)| rank_sums[gi].powi(2) / g.len() as f64)
            .sum::<f64>()
        - 3.0 * (nf + 1.0);

    let correction = 1.0 - tie_term / (nf * nf * nf - nf);
    h /= correction;

    let df = k - 1;
    let p_value = chi_square_sf(h, df as f64);
    Ok(StatResult {
        test: "kruskal-wallis",
        statistic: h,
        p_value,
        group_sizes: groups.iter().map(|g| g.len()).collect(),
        df: vec![df],
    })
}
