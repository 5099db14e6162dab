//! Corpus input/output: paper records in a line-delimited JSON file,
//! section segmentation of full texts, and the embedding sidecar table.

mod embedding;
mod section;

pub use embedding::{chunk_mean_embedding, load_embeddings, parse_embeddings, EmbeddingTable};
pub use section::{segment_sections, Section, SectionedDocument};

use crate::error::Error;
use crate::Result;
use serde_json::Value;
use std::fs;
use std::path::Path;

/// The four badge names, exactly as they appear in corpus files.
pub const BADGE_NAMES: [&str; 4] = [
    "Artifacts Available",
    "Artifacts Evaluated and Functional",
    "Artifacts Evaluated and Reusable",
    "Results Reproduced",
];

/// Which artifact badges a paper holds. All 16 subsets are representable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct BadgeSet {
    pub available: bool,
    pub functional: bool,
    pub reusable: bool,
    pub reproduced: bool,
}

impl BadgeSet {
    /// Badge names held by this set, in canonical order.
    pub fn names(&self) -> Vec<&'static str> {
        let flags = [self.available, self.functional, self.reusable, self.reproduced];
        BADGE_NAMES
            .iter()
            .zip(flags)
            .filter(|(_, f)| *f)
            .map(|(n, _)| *n)
            .collect()
    }

    /// Parses exact badge names; anything unrecognized is an error.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> std::result::Result<Self, String> {
        let mut set = BadgeSet::default();
        for name in names {
            match name.as_ref() {
                "Artifacts Available" => set.available = true,
                "Artifacts Evaluated and Functional" => set.functional = true,
                "Artifacts Evaluated and Reusable" => set.reusable = true,
                "Results Reproduced" => set.reproduced = true,
                other => return Err(other.to_string()),
            }
        }
        Ok(set)
    }
}

/// One paper: metadata, badges, and full text as parsed from a corpus
/// file line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperRecord {
    pub id: String,
    pub title: String,
    pub year: i32,
    pub venue: String,
    pub full_text: String,
    pub badges: BadgeSet,
    pub citations: u64,
    pub checklist: bool,
    pub mandatory_artifacts: bool,
    pub awards: bool,
    pub correspondence: bool,
    pub funding: bool,
    pub supplemental: bool,
    pub pwc_github: bool,
    pub pwc_datasets: bool,
    pub pwc_methods: bool,
}

/// Loads a line-delimited corpus file. Records come back in file order;
/// malformed lines, unknown fields, unknown badges, and duplicate ids are
/// all rejected with the offending line number.
pub fn load_corpus(path: &Path) -> Result<Vec<PaperRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&text)
}

/// Parses corpus content already in memory. Line numbers are 1-based.
pub fn parse_corpus(text: &str) -> Result<Vec<PaperRecord>> {
    let mut records = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record = parse_record(line_no, line)?;
        if !seen.insert(record.id.clone()) {
            return Err(Error::DuplicateId {
                line: line_no,
                id: record.id,
            });
        }
        records.push(record);
    }
    Ok(records)
}

/// Writes records in canonical form: declared field order, badges in
/// canonical order, compact JSON, one record per line.
pub fn write_corpus(path: &Path, records: &[PaperRecord]) -> Result<()> {
    fs::write(path, corpus_to_string(records)).map_err(|e| Error::io(path, e))
}

/// Canonical serialization of a whole corpus.
pub fn corpus_to_string(records: &[PaperRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&record_to_line(r));
        out.push('\n');
    }
    out
}

/// Canonical single-line serialization of one record.
pub fn record_to_line(r: &PaperRecord) -> String {
    // serde_json::Map does not preserve declared field order, so the
    // canonical writer lays fields out by hand.
    let js = |v: &str| serde_json::to_string(v).expect("string serialization");
    let badge_list = r
        .badges
        .names()
        .iter()
        .map(|n| js(n))
        .collect::<Vec<_>>()
        .join(",");
    format!(
        "{{\"id\":{},\"title\":{},\"year\":{},\"venue\":{},\"full_text\":{},\"badges\":[{}],\
         \"citations\":{},\"checklist\":{},\"mandatory_artifacts\":{},\"awards\":{},\
         \"correspondence\":{},\"funding\":{},\"supplemental\":{},\"pwc_github\":{},\
         \"pwc_datasets\":{},\"pwc_methods\":{}}}",
        js(&r.id),
        js(&r.title),
        r.year,
        js(&r.venue),
        js(&r.full_text),
        badge_list,
        r.citations,
        r.checklist,
        r.mandatory_artifacts,
        r.awards,
        r.correspondence,
        r.funding,
        r.supplemental,
        r.pwc_github,
        r.pwc_datasets,
        r.pwc_methods,
    )
}

fn parse_record(line_no: usize, line: &str) -> Result<PaperRecord> {
    let bad = |message: String| Error::CorpusLine {
        line: line_no,
        message,
    };
    let value: Value = serde_json::from_str(line)
        .map_err(|e| bad(format!("not valid JSON: {e}")))?;
    let Value::Object(mut obj) = value else {
        return Err(bad("expected a JSON object".into()));
    };

    let take_string = |obj: &mut serde_json::Map<String, Value>, field: &str| match obj
        .remove(field)
    {
        Some(Value::String(s)) => Ok(s),
        Some(other) => Err(bad(format!(
            "field `{field}`: expected a string, found {}",
            kind(&other)
        ))),
        None => Err(bad(format!("field `{field}` missing"))),
    };

    let id = take_string(&mut obj, "id")?;
    if id.is_empty() {
        return Err(Error::CorpusLine {
            line: line_no,
            message: "field `id` must be non-empty".into(),
        });
    }
    let title = take_string(&mut obj, "title")?;
    let year = take_i32(line_no, &mut obj, "year")?;
    let venue = take_string(&mut obj, "venue")?;
    let full_text = take_string(&mut obj, "full_text")?;

    let badges = match obj.remove("badges") {
        Some(Value::Array(items)) => {
            let mut names = Vec::with_capacity(items.len());
            for item in items {
                match item {
                    Value::String(s) => names.push(s),
                    other => {
                        return Err(Error::CorpusLine {
                            line: line_no,
                            message: format!(
                                "field `badges`: expected strings, found {}",
                                kind(&other)
                            ),
                        })
                    }
                }
            }
            BadgeSet::from_names(&names).map_err(|badge| Error::UnknownBadge {
                line: line_no,
                badge,
            })?
        }
        Some(other) => {
            return Err(Error::CorpusLine {
                line: line_no,
                message: format!("field `badges`: expected an array, found {}", kind(&other)),
            })
        }
        None => {
            return Err(Error::CorpusLine {
                line: line_no,
                message: "field `badges` missing".into(),
            })
        }
    };

    let citations = take_u64(line_no, &mut obj, "citations")?;
    let checklist = take_bool(line_no, &mut obj, "checklist", true)?.expect("required");
    let mandatory_artifacts =
        take_bool(line_no, &mut obj, "mandatory_artifacts", true)?.expect("required");
    let awards = take_bool(line_no, &mut obj, "awards", true)?.expect("required");
    let correspondence = take_bool(line_no, &mut obj, "correspondence", true)?.expect("required");
    let funding = take_bool(line_no, &mut obj, "funding", true)?.expect("required");
    let supplemental = take_bool(line_no, &mut obj, "supplemental", true)?.expect("required");
    // PapersWithCode flags arrive precomputed; older corpus files omit
    // them, which reads as false.
    let pwc_github = take_bool(line_no, &mut obj, "pwc_github", false)?.unwrap_or(false);
    let pwc_datasets = take_bool(line_no, &mut obj, "pwc_datasets", false)?.unwrap_or(false);
    let pwc_methods = take_bool(line_no, &mut obj, "pwc_methods", false)?.unwrap_or(false);

    if !obj.is_empty() {
        let mut keys: Vec<&str> = obj.keys().map(|k| k.as_str()).collect();
        keys.sort_unstable();
        return Err(Error::CorpusLine {
            line: line_no,
            message: format!("unknown field(s): {}", keys.join(", ")),
        });
    }

    Ok(PaperRecord {
        id,
        title,
        year,
        venue,
        full_text,
        badges,
        citations,
        checklist,
        mandatory_artifacts,
        awards,
        correspondence,
        funding,
        supplemental,
        pwc_github,
        pwc_datasets,
        pwc_methods,
    })
}

fn kind(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "a boolean",
        Value::Number(_) => "a number",
        Value::String(_) => "a string",
        Value::Array(_) => "an array",
        Value::Object(_) => "an object",
    }
}

fn take_i32(
    line: usize,
    obj: &mut serde_json::Map<String, Value>,
    field: &str,
) -> Result<i32> {
    match obj.remove(field) {
        Some(Value::Number(n)) => n
            .as_i64()
            .and_then(|v| i32::try_from(v).ok())
            .ok_or_else(|| Error::CorpusLine {
                line,
                message: format!("field `{field}`: expected a 32-bit integer, got {n}"),
            }),
        Some(other) => Err(Error::CorpusLine {
            line,
            message: format!("field `{field}`: expected an integer, found {}", kind(&other)),
        }),
        None => Err(Error::CorpusLine {
            line,
            message: format!("field `{field}` missing"),
        }),
    }
}

fn take_u64(
    line: usize,
    obj: &mut serde_json::Map<String, Value>,
    field: &str,
) -> Result<u64> {
    match obj.remove(field) {
        Some(Value::Number(n)) => n.as_u64().ok_or_else(|| Error::CorpusLine {
            line,
            message: format!("field `{field}`: expected a non-negative integer, got {n}"),
        }),
        Some(other) => Err(Error::CorpusLine {
            line,
            message: format!("field `{field}`: expected an integer, found {}", kind(&other)),
        }),
        None => Err(Error::CorpusLine {
            line,
            message: format!("field `{field}` missing"),
        }),
    }
}

fn take_bool(
    line: usize,
    obj: &mut serde_json::Map<String, Value>,
    field: &str,
    required: bool,
) -> Result<Option<bool>> {
    match obj.remove(field) {
        Some(Value::Bool(b)) => Ok(Some(b)),
        Some(other) => Err(Error::CorpusLine {
            line,
            message: format!("field `{field}`: expected a boolean, found {}", kind(&other)),
        }),
        None if required => Err(Error::CorpusLine {
            line,
            message: format!("field `{field}` missing"),
        }),
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal_line(id: &str, badges: &str) -> String {
        format!(
            "{{\"id\":\"{id}\",\"title\":\"T\",\"year\":2020,\"venue\":\"V\",\
             \"full_text\":\"body\",\"badges\":[{badges}],\"citations\":3,\
             \"checklist\":false,\"mandatory_artifacts\":true,\"awards\":false,\
             \"correspondence\":false,\"funding\":true,\"supplemental\":false}}"
        )
    }

    #[test]
    fn empty_input_is_empty_corpus() {
        assert!(parse_corpus("").unwrap().is_empty());
        assert!(parse_corpus("\n\n").unwrap().is_empty());
    }

    #[test]
    fn badge_names_map_to_flags() {
        let line = minimal_line("p1", "\"Artifacts Available\",\"Results Reproduced\"");
        let records = parse_corpus(&line).unwrap();
        assert_eq!(records.len(), 1);
        let b = records[0].badges;
        assert!(b.available && b.reproduced);
        assert!(!b.functional && !b.reusable);
    }

    #[test]
    fn duplicate_id_names_the_id() {
        let text = format!("{}\n{}", minimal_line("p1", ""), minimal_line("p1", ""));
        let err = parse_corpus(&text).unwrap_err();
        match err {
            Error::DuplicateId { line, id } => {
                assert_eq!(line, 2);
                assert_eq!(id, "p1");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_badge_names_the_string() {
        let line = minimal_line("p1", "\"Artifacts Shiny\"");
        match parse_corpus(&line).unwrap_err() {
            Error::UnknownBadge { line, badge } => {
                assert_eq!(line, 1);
                assert_eq!(badge, "Artifacts Shiny");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn malformed_field_names_line_and_field() {
        let line = minimal_line("p1", "").replace("\"citations\":3", "\"citations\":-3");
        let err = parse_corpus(&line).unwrap_err().to_string();
        assert!(err.contains("line 1"), "{err}");
        assert!(err.contains("citations"), "{err}");
    }

    #[test]
    fn unknown_field_rejected() {
        let line = minimal_line("p1", "").replace(
            "\"supplemental\":false}",
            "\"supplemental\":false,\"reviewer\":\"me\"}",
        );
        let err = parse_corpus(&line).unwrap_err().to_string();
        assert!(err.contains("reviewer"), "{err}");
    }

    #[test]
    fn missing_field_named() {
        let line = minimal_line("p1", "").replace("\"funding\":true,", "");
        let err = parse_corpus(&line).unwrap_err().to_string();
        assert!(err.contains("funding"), "{err}");
    }

    #[test]
    fn pwc_fields_default_false_and_are_always_written() {
        let records = parse_corpus(&minimal_line("p1", "")).unwrap();
        assert!(!records[0].pwc_github && !records[0].pwc_datasets && !records[0].pwc_methods);
        let canonical = record_to_line(&records[0]);
        assert!(canonical.contains("\"pwc_github\":false"));
        // Canonical form is a fixpoint of parse -> write.
        let reparsed = parse_corpus(&canonical).unwrap();
        assert_eq!(records, reparsed);
        assert_eq!(canonical, record_to_line(&reparsed[0]));
    }

    #[test]
    fn badge_names_round_trip_in_canonical_order() {
        let set = BadgeSet {
            available: true,
            functional: false,
            reusable: true,
            reproduced: true,
        };
        let names = set.names();
        assert_eq!(
            names,
            vec![
                "Artifacts Available",
                "Artifacts Evaluated and Reusable",
                "Results Reproduced"
            ]
        );
        assert_eq!(BadgeSet::from_names(&names).unwrap(), set);
    }
}
