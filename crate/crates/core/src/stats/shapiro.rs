//! Shapiro-Wilk normality test following Royston's AS R94 formulation:
//! Blom-score based coefficients with polynomial corrections for the two
//! largest weights, and a normalizing transform of W for the p-value.

use super::special::{normal_quantile, normal_sf};
use super::StatResult;
use crate::error::Error;
use crate::Result;

/// Polynomial correction coefficients for the largest weight (a_n),
/// applied in powers of u = 1/sqrt(n), constant term last.
const C1: [f64; 5] = [0.221157, -0.147981, -2.071190, 4.434685, -2.706056];
/// Correction coefficients for the second largest weight (a_{n-1}).
const C2: [f64; 5] = [0.042981, -0.293762, -1.752461, 5.682633, -3.582633];

/// Runs the Shapiro-Wilk test on `sample`. Requires 3 <= n <= 5000 and a
/// non-degenerate sample (at least two distinct values).
pub fn shapiro_wilk(sample: &[f64]) -> Result<StatResult> {
    let n = sample.len();
    if n < 3 {
        return Err(Error::StatTest {
            test: "shapiro-wilk",
            message: format!("requires at least 3 observations, got {n}"),
        });
    }
    if n > 5000 {
        return Err(Error::StatTest {
            test: "shapiro-wilk",
            message: format!("supports at most 5000 observations, got {n}"),
        });
    }
    if sample.iter().any(|v| !v.is_finite()) {
        return Err(Error::StatTest {
            test: "shapiro-wilk",
            message: "sample contains non-finite values".into(),
        });
    }
    let mut x: Vec<f64> = sample.to_vec();
    x.sort_by(|a, b| a.partial_cmp(b).expect("finite values"));
    if x[0] == x[n - 1] {
        return Err(Error::StatTest {
            test: "shapiro-wilk",
            message: "all sample values are identical".into(),
        });
    }

    let a = weights(n);

    let mean = x.iter().sum::<f64>() / n as f64;
    let ssq: f64 = x.iter().map(|v| (v - mean).powi(2)).sum();
    let b: f64 = a.iter().zip(&x).map(|(ai, xi)| ai * xi).sum();
    let w = (b * b / ssq).min(1.0);

    let p_value = p_value_for(w, n);
    Ok(StatResult {
        test: "shapiro-wilk",
        statistic: w,
        p_value,
        group_sizes: vec![n],
        df: Vec::new(),
    })
}

/// AS R94 weight vector. Symmetric: a_i = -a_{n+1-i}.
fn weights(n: usize) -> Vec<f64> {
    let nf = n as f64;
    // Blom expected normal order statistics m_i = Phi^{-1}((i - 3/8)/(n + 1/4))
    let m: Vec<f64> = (1..=n)
        .map(|i| normal_quantile((i as f64 - 0.375) / (nf + 0.25)))
        .collect();
    let ssq_m: f64 = m.iter().map(|v| v * v).sum();
    let norm = ssq_m.sqrt();
    let c: Vec<f64> = m.iter().map(|v| v / norm).collect();

    if n == 3 {
        let r = (0.5f64).sqrt();
        return vec![-r, 0.0, r];
    }

    let u = 1.0 / nf.sqrt();
    let a_n = poly(&C1, u) + c[n - 1];
    let (a_n1, fit_from) = if n > 5 {
        (poly(&C2, u) + c[n - 2], 2)
    } else {
        (c[n - 2], 1)
    };

    // phi rescales the interior coefficients so the full vector stays unit
    // length after the corrected tail weights are substituted.
    let phi = if n > 5 {
        (ssq_m - 2.0 * m[n - 1].powi(2) - 2.0 * m[n - 2].powi(2))
            / (1.0 - 2.0 * a_n * a_n - 2.0 * a_n1 * a_n1)
    } else {
        (ssq_m - 2.0 * m[n - 1].powi(2)) / (1.0 - 2.0 * a_n * a_n)
    };
    let sqrt_phi = phi.sqrt();

    let mut a = vec![0.0; n];
    for i in 0..n {
        a[i] = m[i] / sqrt_phi;
    }
    a[n - 1] = a_n;
    a[0] = -a_n;
    if fit_from == 2 {
        a[n - 2] = a_n1;
        a[1] = -a_n1;
    }
    a
}

/// Polynomial with coefficients ordered highest power first, constant last:
/// c[0] x^5-ish tail per AS R94 usage (here degree = len, constant omitted
/// since the caller adds c_n separately). Concretely evaluates
/// c[0] u + c[1] u^2 + ... using Horner on the reversed slice.
fn poly(c: &[f64; 5], u: f64) -> f64 {
    // AS R94 lists the corrections as a polynomial in u with these
    // coefficients attached to powers 1..=5.
    let mut acc = 0.0;
    for &ci in c.iter().rev() {
        acc = acc * u + ci;
    }
    acc * u
}

/// Normalizing transform of W and upper-tail p-value.
fn p_value_for(w: f64, n: usize) -> f64 {
    let nf = n as f64;
    if n == 3 {
        // Exact small-sample distribution.
        let pi = std::f64::consts::PI;
        let p = 6.0 / pi * ((w.sqrt()).asin() - (0.75f64.sqrt()).asin());
        return p.clamp(0.0, 1.0);
    }
    let (y, mu, sigma) = if n <= 11 {
        let g = -2.273 + 0.459 * nf;
        let y = -(g - (1.0 - w).ln()).ln();
        let mu = 0.5440 - 0.39978 * nf + 0.025054 * nf * nf - 0.0006714 * nf * nf * nf;
        let sigma = (1.3822 - 0.77857 * nf + 0.062767 * nf * nf - 0.0020322 * nf * nf * nf).exp();
        (y, mu, sigma)
    } else {
        let y = (1.0 - w).ln();
        let u = nf.ln();
        let mu = -1.5861 - 0.31082 * u - 0.083751 * u * u + 0.0038915 * u * u * u;
        let sigma = (-0.4803 - 0.082676 * u + 0.0030302 * u * u).exp();
        (y, mu, sigma)
    };
    normal_sf((y - mu) / sigma).clamp(0.0, 1.0)
}
