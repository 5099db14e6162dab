//! Section segmentation of plain full texts. Parsed PDF text has no
//! markup, so headers are recognized by a conservative line heuristic;
//! everything is preserved verbatim so the document reconstructs exactly.

/// One section: the raw header line (empty for the implicit preamble),
/// the trimmed title, and the body with its original line terminators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    /// Raw header line including its terminator; empty for the preamble.
    pub raw_header: String,
    /// Trimmed header text; empty for the preamble.
    pub title: String,
    pub body: String,
}

/// A full text split at recognized section headers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionedDocument {
    /// First entry is always the (possibly empty) preamble.
    pub sections: Vec<Section>,
}

impl SectionedDocument {
    /// Exact reconstruction of the original text.
    pub fn reconstruct(&self) -> String {
        let mut out = String::new();
        for s in &self.sections {
            out.push_str(&s.raw_header);
            out.push_str(&s.body);
        }
        out
    }

    /// Index of the references section, if present: the first section
    /// whose normalized title is "references" or "bibliography".
    pub fn references_index(&self) -> Option<usize> {
        self.sections.iter().position(|s| {
            let t = normalize_title(&s.title);
            t == "references" || t == "bibliography"
        })
    }

    /// Everything before the references header; the whole text when no
    /// references section exists.
    pub fn body_before_references(&self) -> String {
        let end = self.references_index().unwrap_or(self.sections.len());
        let mut out = String::new();
        for s in &self.sections[..end] {
            out.push_str(&s.raw_header);
            out.push_str(&s.body);
        }
        out
    }
}

/// Splits `full_text` on header lines. Text before the first header forms
/// the implicit preamble section.
pub fn segment_sections(full_text: &str) -> SectionedDocument {
    let mut sections = vec![Section {
        raw_header: String::new(),
        title: String::new(),
        body: String::new(),
    }];
    for line in split_keep_terminator(full_text) {
        let trimmed = line.trim();
        if is_header_line(trimmed) {
            sections.push(Section {
                raw_header: line.to_string(),
                title: trimmed.to_string(),
                body: String::new(),
            });
        } else {
            sections.last_mut().expect("preamble exists").body.push_str(line);
        }
    }
    SectionedDocument { sections }
}

/// Line iterator that keeps the trailing "\n" (and any "\r") with each
/// line so concatenation is the identity.
fn split_keep_terminator(text: &str) -> impl Iterator<Item = &str> {
    let mut rest = text;
    std::iter::from_fn(move || {
        if rest.is_empty() {
            return None;
        }
        let end = rest.find('\n').map(|i| i + 1).unwrap_or(rest.len());
        let (line, tail) = rest.split_at(end);
        rest = tail;
        Some(line)
    })
}

/// Header heuristic: an all-caps line of at most 6 words, or optional
/// numbering (digits/roman numerals joined by dots) followed by a title
/// of at most 12 words that starts uppercase and has no terminal
/// sentence punctuation.
fn is_header_line(trimmed: &str) -> bool {
    if trimmed.is_empty() {
        return false;
    }
    let words: Vec<&str> = trimmed.split_whitespace().collect();

    // All-caps form: every word carries a letter, none lowercase.
    let all_caps = words.len() <= 6
        && words.iter().all(|w| w.chars().any(|c| c.is_alphabetic()))
        && !trimmed.chars().any(|c| c.is_lowercase());
    if all_caps {
        return true;
    }

    // Numbered-title form.
    let title_words = if is_numbering(words[0]) { &words[1..] } else { &words[..] };
    if title_words.is_empty() || title_words.len() > 12 {
        return false;
    }
    let first_char = match title_words[0].chars().next() {
        Some(c) => c,
        None => return false,
    };
    if !first_char.is_uppercase() {
        return false;
    }
    let last_char = trimmed.chars().next_back().expect("non-empty");
    !matches!(last_char, '.' | '!' | '?' | ',' | ';' | ':' | '-')
}

/// Numbering token: dot-separated decimal or roman numeral groups, with
/// an optional trailing dot ("1", "2.3", "IV.", "1.2.").
fn is_numbering(token: &str) -> bool {
    let token = token.strip_suffix('.').unwrap_or(token);
    if token.is_empty() {
        return false;
    }
    token.split('.').all(|part| {
        !part.is_empty()
            && (part.chars().all(|c| c.is_ascii_digit())
                || part.chars().all(|c| matches!(c, 'I' | 'V' | 'X' | 'L' | 'C' | 'D' | 'M')))
    })
}

/// Lowercases and strips numbering and edge punctuation for references
/// matching.
fn normalize_title(title: &str) -> String {
    let words: Vec<&str> = title.split_whitespace().collect();
    let rest = match words.first() {
        Some(w) if is_numbering(w) => &words[1..],
        _ => &words[..],
    };
    rest.join(" ")
        .trim_matches(|c: char| !c.is_alphanumeric())
        .to_lowercase()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_single_empty_preamble() {
        let doc = segment_sections("");
        assert_eq!(doc.sections.len(), 1);
        assert_eq!(doc.sections[0].body, "");
        assert_eq!(doc.body_before_references(), "");
    }

    #[test]
    fn headers_split_into_preamble_plus_sections() {
        let text = "Some abstract text.\n1 Introduction\nWe begin.\nReferences\n[1] X et al.\n";
        let doc = segment_sections(text);
        assert_eq!(doc.sections.len(), 3);
        assert_eq!(doc.sections[0].title, "");
        assert_eq!(doc.sections[1].title, "1 Introduction");
        assert_eq!(doc.sections[2].title, "References");
        assert_eq!(doc.body_before_references(), "Some abstract text.\n1 Introduction\nWe begin.\n");
        assert_eq!(doc.reconstruct(), text);
    }

    #[test]
    fn no_headers_is_one_preamble() {
        let text = "just a lowercase paragraph that runs on.\nand another line.\n";
        let doc = segment_sections(text);
        assert_eq!(doc.sections.len(), 1);
        assert_eq!(doc.body_before_references(), text);
    }

    #[test]
    fn references_variants_detected() {
        for header in ["References", "REFERENCES", "7 References", "IV. Bibliography"] {
            let text = format!("intro body.\n{header}\ntrailing entry\n");
            let doc = segment_sections(&text);
            assert!(doc.references_index().is_some(), "header {header:?}");
            assert_eq!(doc.body_before_references(), "intro body.\n");
        }
    }

    #[test]
    fn text_after_references_stays_excluded() {
        let text = "body.\nReferences\n[1] cite\nA Appendix\nmore github.com text\n";
        let doc = segment_sections(text);
        assert_eq!(doc.body_before_references(), "body.\n");
    }

    #[test]
    fn all_caps_header_recognized() {
        let doc = segment_sections("ABSTRACT\nwe study things.\n");
        assert_eq!(doc.sections.len(), 2);
        assert_eq!(doc.sections[1].title, "ABSTRACT");
    }

    #[test]
    fn sentence_like_lines_are_not_headers() {
        for line in [
            "the model converges quickly.",
            "x = y + z   (3)",
            "Why does this hold?",
            "We trained for 10 epochs, then:",
            "42",
        ] {
            assert!(!is_header_line(line), "line {line:?}");
        }
    }

    #[test]
    fn numbering_tokens() {
        for tok in ["1", "2.3", "IV", "IV.", "1.2.", "10.1.4"] {
            assert!(is_numbering(tok), "{tok}");
        }
        for tok in ["", "a", "1a", "I.b", "..", "739x"] {
            assert!(!is_numbering(tok), "{tok}");
        }
    }

    #[test]
    fn reconstruction_is_exact_without_trailing_newline() {
        let text = "preamble\nMethods\nbody without trailing newline";
        let doc = segment_sections(text);
        assert_eq!(doc.reconstruct(), text);
    }

    #[test]
    fn reconstruction_preserves_crlf() {
        let text = "a\r\nIntroduction\r\nb\r\n";
        let doc = segment_sections(text);
        assert_eq!(doc.reconstruct(), text);
    }

    #[test]
    fn segmentation_idempotent_on_reconstruction() {
        let text = "pre.\n2 Results\nfindings here.\nREFERENCES\n[1]\n";
        let doc = segment_sections(text);
        let again = segment_sections(&doc.reconstruct());
        assert_eq!(doc, again);
    }
}
