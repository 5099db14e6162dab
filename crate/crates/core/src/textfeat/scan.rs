//! Mention detection (GitHub, Zenodo) over the pre-references body and
//! structure counting (algorithms, display equations) over the whole
//! document.

use crate::corpus::SectionedDocument;
use once_cell::sync::Lazy;
use regex::Regex;
use std::collections::HashSet;

static ALGORITHM_RE: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\bAlgorithm\s+(\d+)").expect("valid regex"));
static EQUATION_TAG_RE: Lazy<Regex> =
    Lazy::new(|| Regex::new(r"\(\d+\)$").expect("valid regex"));

/// Case-insensitive artifact-mention scan, excluding the references
/// section and everything after it.
pub fn detect_mentions(doc: &SectionedDocument) -> (bool, bool) {
    let haystack = doc.body_before_references().to_lowercase();
    let zenodo = haystack.contains("zenodo");
    let github = haystack.contains("github.com") || haystack.contains("github.io");
    (zenodo, github)
}

/// Counts distinct numbered algorithms and display-equation lines over
/// every section title and body.
pub fn count_structures(doc: &SectionedDocument) -> (u32, u32) {
    let mut algorithms: HashSet<&str> = HashSet::new();
    let mut equations = 0u32;
    for section in &doc.sections {
        for text in [section.title.as_str(), section.body.as_str()] {
            for cap in ALGORITHM_RE.captures_iter(text) {
                algorithms.insert(cap.get(1).expect("group 1").as_str());
            }
            for line in text.lines() {
                if is_equation_line(line.trim_end()) {
                    equations += 1;
                }
            }
        }
    }
    (algorithms.len() as u32, equations)
}

/// A display equation is a line ending in an "(<n>)" tag, or one dense
/// with relational/aggregate operators and free of sentence punctuation.
fn is_equation_line(line: &str) -> bool {
    if EQUATION_TAG_RE.is_match(line) {
        return true;
    }
    let operators = line
        .chars()
        .filter(|c| matches!(c, '=' | '<' | '>' | '\u{2264}' | '\u{2265}' | '\u{2211}' | '\u{222B}'))
        .count();
    operators >= 2 && !line.contains(['.', '!', '?'])
}
