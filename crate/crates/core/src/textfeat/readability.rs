//! The seven readability formulas and the normalized composite. Each raw
//! score is min-max normalized against a fixed bounds table, with grade
//! level metrics direction-flipped so larger always means more readable;
//! the composite is the median of the seven normalized values.

use super::textstats::{words, TextStats};
use once_cell::sync::Lazy;
use std::collections::HashSet;

/// Familiar-word snapshot used by Dale-Chall. Tokens that are pure
/// digits also count as familiar.
static FAMILIAR_WORDS: Lazy<HashSet<&'static str>> = Lazy::new(|| {
    include_str!("data/familiar_words.txt")
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .collect()
});

/// Raw scores of the seven formulas, in fixed report order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReadabilityScores {
    pub flesch_reading_ease: f64,
    pub smog: f64,
    pub coleman_liau: f64,
    pub ari: f64,
    pub dale_chall: f64,
    pub linsear_write: f64,
    pub gunning_fog: f64,
}

/// Fixed normalization bounds (min, max) per metric, in the same order
/// as the `ReadabilityScores` fields. The paper-style composite needs
/// constant hypothetical bounds; these contain all real-text outputs.
pub const SCORE_BOUNDS: [(f64, f64); 7] = [
    (-100.0, 121.22), // Flesch reading ease (higher = easier)
    (0.0, 25.0),      // SMOG grade
    (-10.0, 30.0),    // Coleman-Liau index
    (-10.0, 30.0),    // Automated readability index
    (0.0, 15.0),      // Dale-Chall score
    (0.0, 30.0),      // Linsear Write grade
    (0.0, 30.0),      // Gunning fog index
];

/// All metrics except Flesch are grade levels where higher = harder.
const DIRECTION_FLIPPED: [bool; 7] = [false, true, true, true, true, true, true];

/// Computes the seven raw scores. Degenerate text (no words or no
/// sentences) yields every metric's declared minimum bound.
pub fn readability_scores(stats: &TextStats, text: &str) -> ReadabilityScores {
    if stats.is_degenerate() {
        return ReadabilityScores {
            flesch_reading_ease: SCORE_BOUNDS[0].0,
            smog: SCORE_BOUNDS[1].0,
            coleman_liau: SCORE_BOUNDS[2].0,
            ari: SCORE_BOUNDS[3].0,
            dale_chall: SCORE_BOUNDS[4].0,
            linsear_write: SCORE_BOUNDS[5].0,
            gunning_fog: SCORE_BOUNDS[6].0,
        };
    }
    let w = stats.words as f64;
    let s = stats.sentences as f64;
    let wps = stats.avg_sentence_length();
    let spw = stats.avg_syllables_per_word();
    let cpw = stats.avg_characters_per_word();

    let flesch = 206.835 - 1.015 * wps - 84.6 * spw;
    let smog = 1.0430 * (30.0 * stats.polysyllables as f64 / s).sqrt() + 3.1291;
    // Coleman-Liau works per 100 words.
    let l = cpw * 100.0;
    let s100 = s / w * 100.0;
    let coleman_liau = 0.0588 * l - 0.296 * s100 - 15.8;
    let ari = 4.71 * cpw + 0.5 * wps - 21.43;

    let difficult = words(text)
        .filter(|word| {
            let lower = word.to_lowercase();
            !(FAMILIAR_WORDS.contains(lower.as_str())
                || lower.chars().all(|c| c.is_ascii_digit()))
        })
        .count() as f64;
    let pct_difficult = 100.0 * difficult / w;
    let mut dale_chall = 0.1579 * pct_difficult + 0.0496 * wps;
    if pct_difficult > 5.0 {
        dale_chall += 3.6365;
    }

    // Linsear Write: easy words (<= 2 syllables) score 1, hard words 3.
    let hard = stats.complex_words as f64;
    let easy = w - hard;
    let r = (easy + 3.0 * hard) / s;
    let linsear_write = if r > 20.0 { r / 2.0 } else { r / 2.0 - 1.0 };

    let gunning_fog = 0.4 * (wps + 100.0 * stats.complex_words as f64 / w);

    ReadabilityScores {
        flesch_reading_ease: flesch,
        smog,
        coleman_liau,
        ari,
        dale_chall,
        linsear_write,
        gunning_fog,
    }
}

impl ReadabilityScores {
    /// Raw values in report order.
    pub fn raw(&self) -> [f64; 7] {
        [
            self.flesch_reading_ease,
            self.smog,
            self.coleman_liau,
            self.ari,
            self.dale_chall,
            self.linsear_write,
            self.gunning_fog,
        ]
    }
}

/// Direction-aligned, min-max normalized scores, clamped to [0,1].
pub fn normalized_scores(scores: &ReadabilityScores) -> [f64; 7] {
    let raw = scores.raw();
    let mut out = [0.0; 7];
    for i in 0..7 {
        let (min, max) = SCORE_BOUNDS[i];
        let unit = (raw[i] - min) / (max - min);
        out[i] = if DIRECTION_FLIPPED[i] { 1.0 - unit } else { unit }.clamp(0.0, 1.0);
    }
    out
}

/// The composite: median (4th order statistic) of the 7 normalized
/// scores; always in [0,1].
pub fn median_readability(scores: &ReadabilityScores) -> f64 {
    let mut normalized = normalized_scores(scores);
    normalized.sort_by(f64::total_cmp);
    normalized[3]
}
