//! Tokenizer and surface statistics feeding the readability formulas.
//!
//! Sentences end at . ! ? followed by whitespace or end of input (a
//! trailing unterminated fragment still counts). Words are maximal runs
//! of alphanumerics plus apostrophes and hyphens that contain at least
//! one alphanumeric. Syllables use a vowel-group heuristic: count groups
//! of consecutive vowels (a e i o u y), drop a silent final "e" unless
//! the word ends in consonant + "le", minimum one per word.

/// Surface counts for one text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TextStats {
    pub sentences: usize,
    pub words: usize,
    /// Letters and digits only.
    pub characters: usize,
    pub syllables: usize,
    /// Words with >= 3 syllables. Equals `polysyllables` under the
    /// heuristic; kept separate because formulas name both.
    pub complex_words: usize,
    pub polysyllables: usize,
    pub monosyllables: usize,
}

impl TextStats {
    /// Words per sentence; 0 when there are no sentences.
    pub fn avg_sentence_length(&self) -> f64 {
        ratio(self.words, self.sentences)
    }

    /// Syllables per word; 0 when there are no words.
    pub fn avg_syllables_per_word(&self) -> f64 {
        ratio(self.syllables, self.words)
    }

    /// Characters per word; 0 when there are no words.
    pub fn avg_characters_per_word(&self) -> f64 {
        ratio(self.characters, self.words)
    }

    pub fn is_degenerate(&self) -> bool {
        self.words == 0 || self.sentences == 0
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

/// Full surface statistics for `text`.
pub fn compute_text_stats(text: &str) -> TextStats {
    let mut stats = TextStats {
        sentences: count_sentences(text),
        characters: text.chars().filter(|c| c.is_alphanumeric()).count(),
        ..TextStats::default()
    };
    for word in words(text) {
        stats.words += 1;
        let syl = syllables_in(word);
        stats.syllables += syl;
        if syl >= 3 {
            stats.complex_words += 1;
            stats.polysyllables += 1;
        } else if syl == 1 {
            stats.monosyllables += 1;
        }
    }
    stats
}

/// Sentence count: terminators followed by whitespace or end of input,
/// plus one for a trailing non-empty fragment.
pub fn count_sentences(text: &str) -> usize {
    let mut count = 0;
    let mut fragment = false;
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if matches!(c, '.' | '!' | '?') {
            match chars.peek() {
                None => {
                    count += 1;
                    fragment = false;
                }
                Some(next) if next.is_whitespace() => {
                    count += 1;
                    fragment = false;
                }
                _ => fragment = true,
            }
        } else if !c.is_whitespace() {
            fragment = true;
        }
    }
    count + usize::from(fragment)
}

/// Word tokens in order of appearance.
pub fn words(text: &str) -> impl Iterator<Item = &str> {
    let is_word_char = |c: char| c.is_alphanumeric() || matches!(c, '\'' | '\u{2019}' | '-');
    text.split(move |c| !is_word_char(c))
        .filter(|run| !run.is_empty() && run.chars().any(|c| c.is_alphanumeric()))
}

/// Lowercased word tokens, the MTLD input.
pub fn lowercase_tokens(text: &str) -> Vec<String> {
    words(text).map(|w| w.to_lowercase()).collect()
}

/// Heuristic syllable count; always >= 1.
pub fn syllables_in(word: &str) -> usize {
    let lower: Vec<char> = word.chars().flat_map(char::to_lowercase).collect();
    let is_vowel = |c: char| matches!(c, 'a' | 'e' | 'i' | 'o' | 'u' | 'y');
    let mut groups = 0;
    let mut in_group = false;
    for &c in &lower {
        if is_vowel(c) {
            if !in_group {
                groups += 1;
            }
            in_group = true;
        } else {
            in_group = false;
        }
    }
    // Silent final "e": "home" has one spoken syllable, but "table" keeps
    // its "-le" syllable because a consonant precedes it.
    let n = lower.len();
    if n >= 2 && lower[n - 1] == 'e' {
        let ends_consonant_le = n >= 3 && lower[n - 2] == 'l' && !is_vowel(lower[n - 3]);
        if !ends_consonant_le && groups > 0 {
            groups -= 1;
        }
    }
    groups.max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cat_sentence_counts() {
        let s = compute_text_stats("The cat sat on the mat.");
        assert_eq!(s.sentences, 1);
        assert_eq!(s.words, 6);
        assert_eq!(s.syllables, 6);
        assert_eq!(s.complex_words, 0);
        assert_eq!(s.characters, 17);
        assert_eq!(s.monosyllables, 6);
    }

    #[test]
    fn empty_text_is_all_zero() {
        assert_eq!(compute_text_stats(""), TextStats::default());
    }

    #[test]
    fn two_short_sentences() {
        let s = compute_text_stats("Hi! Go.");
        assert_eq!(s.sentences, 2);
        assert_eq!(s.words, 2);
    }

    #[test]
    fn sentence_edge_cases() {
        assert_eq!(count_sentences("no terminator here"), 1);
        assert_eq!(count_sentences("a.b"), 1);
        assert_eq!(count_sentences("Wait... what?"), 2);
        assert_eq!(count_sentences("One. Two. Three."), 3);
        assert_eq!(count_sentences("   "), 0);
        assert_eq!(count_sentences("Done.   "), 1);
    }

    #[test]
    fn word_tokenization() {
        let toks: Vec<&str> = words("don't over-think it; x2 = 3 -- ok?").collect();
        assert_eq!(toks, vec!["don't", "over-think", "it", "x2", "3", "ok"]);
        // Pure punctuation runs are not words.
        assert_eq!(words("--- ''' -").count(), 0);
    }

    #[test]
    fn trailing_whitespace_does_not_change_words() {
        let a = compute_text_stats("alpha beta gamma.");
        let b = compute_text_stats("alpha beta gamma.   \n\t");
        assert_eq!(a.words, b.words);
        assert_eq!(a.sentences, b.sentences);
    }

    #[test]
    fn syllable_heuristic_cases() {
        for (word, expected) in [
            ("cat", 1),
            ("the", 1),
            ("home", 1),
            ("table", 2),
            ("little", 2),
            ("whale", 1),
            ("apple", 2),
            ("see", 1),
            ("idea", 2),
            ("university", 5),
            ("rhythm", 1),
            ("mrs", 1),
            ("readability", 5),
            ("gym", 1),
        ] {
            assert_eq!(syllables_in(word), expected, "word {word:?}");
        }
    }

    #[test]
    fn complex_equals_polysyllables() {
        let s = compute_text_stats("The universities evaluated reproducibility yesterday.");
        assert_eq!(s.complex_words, s.polysyllables);
        assert!(s.complex_words >= 3);
        assert!(s.complex_words <= s.words);
    }

    #[test]
    fn ratios_are_guarded() {
        let zero = TextStats::default();
        assert_eq!(zero.avg_sentence_length(), 0.0);
        assert_eq!(zero.avg_syllables_per_word(), 0.0);
        assert_eq!(zero.avg_characters_per_word(), 0.0);
    }
}
