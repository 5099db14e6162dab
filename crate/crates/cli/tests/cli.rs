//! End-to-end checks of the reprospect binary: exit codes, output
//! selection, config precedence, and report contents.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_reprospect"));
    cmd.env_remove("REPROSPECT_OUTPUT_DIR");
    cmd
}

fn record(id: &str, badges: &[&str], text: &str) -> String {
    serde_json::json!({
        "id": id,
        "title": format!("Study {id}"),
        "year": 2020,
        "venue": "CONF",
        "full_text": text,
        "badges": badges,
        "citations": 12,
        "checklist": true,
        "mandatory_artifacts": false,
        "awards": false,
        "correspondence": true,
        "funding": true,
        "supplemental": false,
        "pwc_github": false,
        "pwc_datasets": false,
        "pwc_methods": false
    })
    .to_string()
}

fn tiny_corpus(dir: &Path) -> std::path::PathBuf {
    let text_a = "We study artifact quality.\n\n1 Introduction\n\nArtifacts matter for \
                  verification. The pipeline applies Algorithm 1 to the corpus. Results \
                  hold across venues.\n\nReferences\n\n[1] Prior work.";
    let text_b = "Replication notes.\n\n1 Introduction\n\nCode lives at github.com/lab/kit \
                  and data at zenodo.org/record/77. Every run is scripted. The suite is \
                  fast.\n\nReferences\n\n[2] Earlier study.";
    let text_c = "A compact report.\n\n1 Method\n\nx = y + z   (1)\n\nThe estimator is \
                  simple. It converges quickly. We verify it twice.\n\nReferences\n\n[3] Base.";
    let text_d = "Reproduction account.\n\n1 Findings\n\nAn external team reran the \
                  experiments. Numbers agreed closely. Logs were archived.\n\nReferences\n\n[4] Kit.";
    let lines = [
        record("p1", &[], text_a),
        record(
            "p2",
            &["Artifacts Available", "Artifacts Evaluated and Functional"],
            text_b,
        ),
        record(
            "p3",
            &["Artifacts Evaluated and Reusable", "Results Reproduced"],
            text_c,
        ),
        record("p4", &["Results Reproduced"], text_d),
    ];
    let path = dir.join("corpus.jsonl");
    fs::write(&path, lines.join("\n") + "\n").expect("corpus written");
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn ingest_writes_canonical_corpus_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tiny_corpus(dir.path());
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["ingest", "--corpus"])
        .arg(&corpus)
        .arg("--output-dir")
        .arg(&out_dir)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let canonical = fs::read_to_string(out_dir.join("corpus.canonical.jsonl")).unwrap();
    assert_eq!(canonical.lines().count(), 4);
    for line in canonical.lines() {
        assert!(line.starts_with("{\"id\":"), "canonical field order: {line}");
    }

    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("ingest.json")).unwrap()).unwrap();
    assert_eq!(report["config"]["seed"], "42");
    assert_eq!(report["report"]["n_records"], 4);
    assert_eq!(report["report"]["author_label_counts"]["A_PAX"], 1);
    assert_eq!(report["report"]["external_label_counts"]["E_NR"], 1);
}

#[test]
fn label_rows_follow_spectrum_rules() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tiny_corpus(dir.path());
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["label", "--corpus"])
        .arg(&corpus)
        .arg("--output-dir")
        .arg(&out_dir)
        .args(["--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let csv = fs::read_to_string(out_dir.join("labels.csv")).unwrap();
    assert!(csv.contains("# seed = 42"), "config preamble missing: {csv}");
    let rows: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(
        rows,
        vec![
            "id,author_label,external_label",
            "p1,A_PWA,E_NR",
            "p2,A_PUNX,E_AR",
            "p3,A_PAX,E_R",
            "p4,A_PWA,E_Re",
        ]
    );
}

#[test]
fn unknown_config_key_is_rejected_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("run.conf");
    fs::write(&conf, "seed=7\nbogus_key=1\n").unwrap();
    let out = bin().args(["label", "--config"]).arg(&conf).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("bogus_key"), "stderr should name the key: {err}");
    assert_eq!(err.lines().count(), 1, "diagnostic must be a single line: {err}");
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
}

#[test]
fn format_json_restricts_featurize_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tiny_corpus(dir.path());
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["featurize", "--corpus"])
        .arg(&corpus)
        .arg("--output-dir")
        .arg(&out_dir)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(out_dir.join("features.json").exists());
    assert!(!out_dir.join("features.csv").exists());

    let rows: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out_dir.join("features.json")).unwrap()).unwrap();
    let rows = rows["report"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["id"], "p2");
    assert_eq!(rows[1]["X8"], 1.0, "p2 mentions an archived dataset");
    assert_eq!(rows[1]["X9"], 1.0, "p2 mentions a code repository");
    assert_eq!(rows[0]["X9"], 0.0, "p1 has no repository mention");
    assert_eq!(rows[0]["X1"], 1.0, "p1 names one algorithm");
}

#[test]
fn env_sets_output_dir_and_flag_wins() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tiny_corpus(dir.path());
    let env_dir = dir.path().join("from-env");
    let flag_dir = dir.path().join("from-flag");

    let out = bin()
        .args(["label", "--corpus"])
        .arg(&corpus)
        .env("REPROSPECT_OUTPUT_DIR", &env_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(env_dir.join("labels.csv").exists());

    let out = bin()
        .args(["label", "--corpus"])
        .arg(&corpus)
        .env("REPROSPECT_OUTPUT_DIR", dir.path().join("ignored"))
        .arg("--output-dir")
        .arg(&flag_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    assert!(flag_dir.join("labels.csv").exists());
    assert!(!dir.path().join("ignored").exists(), "flag must override the env var");
}

#[test]
fn predict_rejects_short_feature_lines() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tiny_corpus(dir.path());
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["train", "--corpus"])
        .arg(&corpus)
        .arg("--output-dir")
        .arg(&out_dir)
        .args(["--model", "decision_tree", "--framework", "author"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));

    let fifteen = format!("p9,{}", vec!["0"; 15].join(","));
    let out = bin()
        .args(["predict", "--model"])
        .arg(out_dir.join("model_author.json"))
        .args(["--line", &fifteen])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(
        err.contains("15 values") && err.contains("expected 16"),
        "stderr should state both counts: {err}"
    );

    let sixteen = format!("p9,{}", vec!["0"; 16].join(","));
    let out = bin()
        .args(["predict", "--model"])
        .arg(out_dir.join("model_author.json"))
        .args(["--line", &sixteen])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let table = stdout(&out);
    assert!(
        table.lines().next().unwrap().starts_with("id,predicted,A_PWA,A_PUNX,A_PAX"),
        "prediction header: {table}"
    );
    assert!(table.lines().nth(1).unwrap().starts_with("p9,"));
}

#[test]
fn svg_format_is_rejected_where_inapplicable() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tiny_corpus(dir.path());
    let out = bin()
        .args(["label", "--corpus"])
        .arg(&corpus)
        .arg("--output-dir")
        .arg(dir.path().join("out"))
        .args(["--format", "svg"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("svg"), "stderr should name the format: {err}");
}

#[test]
fn stats_on_small_groups_reports_skips() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tiny_corpus(dir.path());
    let out_dir = dir.path().join("out");
    let out = bin()
        .args(["stats", "--corpus"])
        .arg(&corpus)
        .arg("--output-dir")
        .arg(&out_dir)
        .args(["--framework", "author", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", stderr(&out));
    let csv = fs::read_to_string(out_dir.join("stats_author.csv")).unwrap();
    assert!(csv.contains("skipped"), "four records cannot fill every group: {csv}");
    let summary = stdout(&out);
    assert!(summary.contains("stats author:"), "summary line missing: {summary}");
}
