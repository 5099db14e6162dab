//! Levene's test for homogeneity of variances across groups, with the
//! classic mean-centered spread (Brown-Forsythe median centering available
//! behind an option).

use super::special::f_dist_sf;
use super::StatResult;
use crate::error::Error;
use crate::Result;

/// Center used for the per-group absolute deviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeveneCenter {
    #[default]
    Mean,
    Median,
}

/// Levene's W across `groups` using the default mean centering.
pub fn levene(groups: &[&[f64]]) -> Result<StatResult> {
    levene_with_center(groups, LeveneCenter::Mean)
}

/// Levene's W with an explicit deviation center.
pub fn levene_with_center(groups: &[&[f64]], center: LeveneCenter) -> Result<StatResult> {
    let k = groups.len();
    if k < 2 {
        return Err(Error::StatTest {
            test: "levene",
            message: format!("requires at least 2 groups, got {k}"),
        });
    }
    for (gi, g) in groups.iter().enumerate() {
        if g.is_empty() {
            return Err(Error::StatTest {
                test: "levene",
                message: format!("group {gi} is empty"),
            });
        }
        if g.iter().any(|v| !v.is_finite()) {
            return Err(Error::StatTest {
                test: "levene",
                message: format!("group {gi} contains non-finite values"),
            });
        }
    }
    let n_total: usize = groups.iter().map(|g| g.len()).sum();
    if n_total <= k {
        return Err(Error::StatTest {
            test: "levene",
            message: format!("needs more observations ({n_total}) than groups ({k})"),
        });
    }

    // z_ij = |x_ij - center_i|
    let z: Vec<Vec<f64>> = groups
        .iter()
        .map(|g| {
            let c = match center {
                LeveneCenter::Mean => mean(g),
                LeveneCenter::Median => median(g),
            };
            g.iter().map(|v| (v - c).abs()).collect()
        })
        .collect();

    let z_bar_i: Vec<f64> = z.iter().map(|zi| mean(zi)).collect();
    let z_bar = z.iter().flatten().sum::<f64>() / n_total as f64;

    let between: f64 = z
        .iter()
        .zip(&z_bar_i)
        .map(|(zi, zbi)| zi.len() as f64 * (zbi - z_bar).powi(2))
        .sum();
    let within: f64 = z
        .iter()
        .zip(&z_bar_i)
        .map(|(zi, zbi)| zi.iter().map(|v| (v - zbi).powi(2)).sum::<f64>())
        .sum();

    if within <= 0.0 {
        return Err(Error::StatTest {
            test: "levene",
            message: "within-group spread of deviations is zero; statistic undefined".into(),
        });
    }

    let df_between = k - 1;
    let df_within = n_total - k;
    let statistic = (df_within as f64 / df_between as f64) * between / within;
    let p_value = f_dist_sf(statistic, df_between as f64, df_within as f64);
    Ok(StatResult {
        test: "levene",
        statistic,
        p_value,
        group_sizes: groups.iter().map(|g| g.len()).collect(),
        df: vec![df_between, df_within],
    })
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    }
}
