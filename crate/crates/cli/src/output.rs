//! Report emission: atomic file writes and the effective-config echo
//! woven into each format (comment preamble for CSV, a config object for
//! JSON, XML comments for SVG).

use anyhow::{Context, Result};
use serde_json::{json, Value};
use std::io::Write;
use std::path::Path;

/// Writes via a temporary file in the target directory plus a rename, so
/// a crashed run never leaves a half-written artifact behind.
pub fn write_atomic(path: &Path, content: &str) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(parent)
        .with_context(|| format!("cannot create output directory {}", parent.display()))?;
    let mut tmp = tempfile::Builder::new()
        .prefix(".reprospect-")
        .tempfile_in(parent)
        .with_context(|| format!("cannot create temporary file in {}", parent.display()))?;
    tmp.write_all(content.as_bytes())
        .with_context(|| format!("cannot write {}", path.display()))?;
    tmp.persist(path)
        .with_context(|| format!("cannot finalize {}", path.display()))?;
    Ok(())
}

/// CSV field quoting: quotes only when the field needs it, doubling any
/// embedded quotes.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Leading comment block carrying the effective configuration.
pub fn csv_preamble(entries: &[(String, String)]) -> String {
    let mut s = String::from("# reprospect configuration\n");
    for (k, v) in entries {
        s.push_str(&format!("# {k} = {v}\n"));
    }
    s
}

/// The same configuration as a JSON object, for embedding in reports.
pub fn config_object(entries: &[(String, String)]) -> Value {
    let map: serde_json::Map<String, Value> = entries
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(v.clone())))
        .collect();
    Value::Object(map)
}

/// Standard JSON report envelope: the effective config next to the
/// payload, pretty-printed with a trailing newline.
pub fn json_report(entries: &[(String, String)], payload: Value) -> Result<String> {
    let doc = json!({ "config": config_object(entries), "report": payload });
    let text = serde_json::to_string_pretty(&doc).context("cannot serialize JSON report")?;
    Ok(text + "\n")
}

/// Injects the config as XML comments right after the opening svg tag.
/// Comment bodies must not contain "--", so runs of dashes are split.
pub fn svg_with_config(svg: &str, entries: &[(String, String)]) -> String {
    let mut comments = String::new();
    for (k, v) in entries {
        let body = format!("{k} = {v}").replace("--", "- -");
        comments.push_str(&format!("<!-- {body} -->\n"));
    }
    match svg.split_once('\n') {
        Some((first, rest)) => format!("{first}\n{comments}{rest}"),
        None => format!("{comments}{svg}"),
    }
}

/// Fixed-point with six decimals: the format for all report reals.
pub fn f6(v: f64) -> String {
    format!("{v:.6}")
}

/// Scientific with six significant decimals: the format for p-values.
pub fn e6(v: f64) -> String {
    format!("{v:.6e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entries() -> Vec<(String, String)> {
        vec![
            ("model".to_string(), "random_forest".to_string()),
            ("seed".to_string(), "42".to_string()),
        ]
    }

    #[test]
    fn atomic_write_replaces_existing_content() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.csv");
        write_atomic(&path, "first\n").unwrap();
        write_atomic(&path, "second\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "second\n");
        let leftovers: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .filter_map(|e| e.ok())
            .filter(|e| e.file_name().to_string_lossy().starts_with(".reprospect-"))
            .collect();
        assert!(leftovers.is_empty(), "temp files left behind");
    }

    #[test]
    fn atomic_write_creates_missing_directories() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("nested/deep/report.csv");
        write_atomic(&path, "x\n").unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "x\n");
    }

    #[test]
    fn csv_field_quotes_only_when_needed() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn svg_injection_keeps_root_tag_first() {
        let svg = "<svg xmlns=\"x\">\n<rect/>\n</svg>\n";
        let out = svg_with_config(svg, &entries());
        assert!(out.starts_with("<svg"));
        assert!(out.contains("<!-- model = random_forest -->\n"));
        assert!(out.contains("<!-- seed = 42 -->\n<rect/>"));
    }

    #[test]
    fn svg_comment_bodies_never_contain_double_dash() {
        let tricky = vec![("output_dir".to_string(), "runs--latest".to_string())];
        let out = svg_with_config("<svg>\n</svg>\n", &tricky);
        let comment = out.lines().nth(1).unwrap();
        let body = &comment[4..comment.len() - 3];
        assert!(!body.contains("--"), "{body}");
    }

    #[test]
    fn json_report_embeds_config_and_payload() {
        let text = json_report(&entries(), serde_json::json!({"rows": 3})).unwrap();
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["config"]["seed"], "42");
        assert_eq!(doc["report"]["rows"], 3);
    }
}
