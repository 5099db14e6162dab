//! Measure of Textual Lexical Diversity: bidirectional factor counting
//! with a partial final factor, capped for degenerate token streams.

use crate::error::Error;
use crate::Result;
use std::collections::HashSet;

/// Cap applied when a direction completes no factors (fully distinct
/// streams diverge) and to the final clamped value.
pub const MTLD_CAP: f64 = 500.0;

/// Standard factor threshold from the original formulation.
pub const MTLD_THRESHOLD: f64 = 0.72;

/// MTLD over lowercase tokens. Errors on an empty token list or a
/// threshold outside (0,1).
pub fn mtld<S: AsRef<str>>(tokens: &[S], threshold: f64) -> Result<f64> {
    if tokens.is_empty() {
        return Err(Error::invalid("MTLD is undefined for an empty token list"));
    }
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::invalid(format!(
            "MTLD threshold must lie in (0,1), got {threshold}"
        )));
    }
    let forward = directional(tokens.iter().map(|t| t.as_ref()), threshold, tokens.len());
    let backward = directional(
        tokens.iter().rev().map(|t| t.as_ref()),
        threshold,
        tokens.len(),
    );
    Ok(((forward + backward) / 2.0).clamp(0.0, MTLD_CAP))
}

fn directional<'a>(tokens: impl Iterator<Item = &'a str>, threshold: f64, n: usize) -> f64 {
    let mut factors = 0.0f64;
    let mut types: HashSet<&str> = HashSet::new();
    let mut segment_len = 0usize;
    let mut ttr = 1.0;
    for tok in tokens {
        segment_len += 1;
        types.insert(tok);
        ttr = types.len() as f64 / segment_len as f64;
        if ttr < threshold {
            factors += 1.0;
            types.clear();
            segment_len = 0;
            ttr = 1.0;
        }
    }
    // Partial credit for the unfinished segment; an empty segment
    // contributes nothing.
    if segment_len > 0 {
        factors += (1.0 - ttr) / (1.0 - threshold);
    }
    if factors == 0.0 {
        MTLD_CAP
    } else {
        n as f64 / factors
    }
}
