//! The nine subcommands. Every command reads inputs, writes artifacts
//! under the output directory atomically, and never mutates its inputs.
//! Reports embed the effective configuration; all randomness derives
//! from the single configured seed.

use crate::config::{feature_key, model_key, OutputFormat, RunConfig};
use crate::output::{
    csv_field, csv_preamble, e6, f6, json_report, svg_with_config, write_atomic,
};
use crate::PredictArgs;
use anyhow::{anyhow, bail, Context, Result};
use reprospect_core::corpus::{corpus_to_string, load_corpus, PaperRecord};
use reprospect_core::derive_seed;
use reprospect_core::eval::{
    calibration_svg, evaluate_pipeline, feature_matrix, importance_svg, label_indices,
    EvalOutcome,
};
use reprospect_core::models::{apply_scaler, fit_scaler, FeatureSource, ModelArtifact};
use reprospect_core::spectrum::{joint_label, Framework, SpectrumLabel};
use reprospect_core::stats::{run_battery, BatteryOutcome, BatteryReport};
use reprospect_core::textfeat::{featurize_corpus, FeatureVector};
use serde_json::{json, Value};
use std::path::PathBuf;

fn load_records(cfg: &RunConfig) -> Result<Vec<PaperRecord>> {
    let path = cfg
        .corpus
        .as_ref()
        .ok_or_else(|| anyhow!("missing corpus path; pass --corpus or set corpus= in the config"))?;
    Ok(load_corpus(path)?)
}

fn out_path(cfg: &RunConfig, name: &str) -> PathBuf {
    cfg.output_dir.join(name)
}

/// Rejects --format values a command has no output for.
fn reject_formats(cfg: &RunConfig, command: &str, unsupported: &[OutputFormat]) -> Result<()> {
    if let Some(f) = cfg.format {
        if unsupported.contains(&f) {
            let name = match f {
                OutputFormat::Csv => "csv",
                OutputFormat::Json => "json",
                OutputFormat::Svg => "svg",
            };
            bail!("{command} has no {name} output; drop --format {name}");
        }
    }
    Ok(())
}

fn spectrum_labels(records: &[PaperRecord]) -> Vec<SpectrumLabel> {
    records.iter().map(|r| joint_label(&r.badges)).collect()
}

/// Label tallies in the framework's canonical label order.
fn label_counts(records: &[PaperRecord], framework: Framework) -> Vec<(String, usize)> {
    let names = framework.label_names();
    let mut counts = vec![0usize; names.len()];
    for idx in label_indices(records, framework) {
        counts[idx] += 1;
    }
    names
        .iter()
        .zip(counts)
        .map(|(n, c)| (n.to_string(), c))
        .collect()
}

fn counts_object(counts: &[(String, usize)]) -> Value {
    let map: serde_json::Map<String, Value> = counts
        .iter()
        .map(|(n, c)| (n.clone(), Value::from(*c)))
        .collect();
    Value::Object(map)
}

pub fn ingest(cfg: &RunConfig) -> Result<()> {
    reject_formats(cfg, "ingest", &[OutputFormat::Csv, OutputFormat::Svg])?;
    let records = load_records(cfg)?;
    let canon_path = out_path(cfg, "corpus.canonical.jsonl");
    write_atomic(&canon_path, &corpus_to_string(&records))?;
    let payload = json!({
        "n_records": records.len(),
        "author_label_counts": counts_object(&label_counts(&records, Framework::Author)),
        "external_label_counts": counts_object(&label_counts(&records, Framework::External)),
        "canonical_corpus": canon_path.display().to_string(),
    });
    let report = json_report(&cfg.effective_entries(), payload)?;
    write_atomic(&out_path(cfg, "ingest.json"), &report)?;
    println!(
        "ingested {} records -> {}",
        records.len(),
        canon_path.display()
    );
    Ok(())
}

pub fn label(cfg: &RunConfig) -> Result<()> {
    reject_formats(cfg, "label", &[OutputFormat::Svg])?;
    let records = load_records(cfg)?;
    let labels = spectrum_labels(&records);
    let entries = cfg.effective_entries();

    if cfg.emits(OutputFormat::Csv) {
        let mut csv = csv_preamble(&entries);
        csv.push_str("id,author_label,external_label\n");
        for (r, l) in records.iter().zip(&labels) {
            csv.push_str(&format!(
                "{},{},{}\n",
                csv_field(&r.id),
                l.name_for(Framework::Author),
                l.name_for(Framework::External)
            ));
        }
        write_atomic(&out_path(cfg, "labels.csv"), &csv)?;
    }
    if cfg.emits(OutputFormat::Json) {
        let rows: Vec<Value> = records
            .iter()
            .zip(&labels)
            .map(|(r, l)| {
                json!({
                    "id": r.id,
                    "author_label": l.name_for(Framework::Author),
                    "external_label": l.name_for(Framework::External),
                })
            })
            .collect();
        let report = json_report(&entries, Value::Array(rows))?;
        write_atomic(&out_path(cfg, "labels.json"), &report)?;
    }
    println!("labeled {} records -> {}", records.len(), cfg.output_dir.display());
    Ok(())
}

pub fn featurize(cfg: &RunConfig) -> Result<()> {
    reject_formats(cfg, "featurize", &[OutputFormat::Svg])?;
    let records = load_records(cfg)?;
    let features = featurize_corpus(&records);
    let entries = cfg.effective_entries();

    if cfg.emits(OutputFormat::Csv) {
        let mut csv = csv_preamble(&entries);
        for f in &features {
            for w in &f.warnings {
                csv.push_str(&format!("# warning: {}: {w}\n", f.id));
            }
        }
        csv.push_str("id");
        for i in 1..=16 {
            csv.push_str(&format!(",X{i}"));
        }
        csv.push('\n');
        for f in &features {
            csv.push_str(&f.to_output_line());
            csv.push('\n');
        }
        write_atomic(&out_path(cfg, "features.csv"), &csv)?;
    }
    if cfg.emits(OutputFormat::Json) {
        let rows: Vec<Value> = features.iter().map(feature_row_json).collect();
        let report = json_report(&entries, Value::Array(rows))?;
        write_atomic(&out_path(cfg, "features.json"), &report)?;
    }
    println!(
        "featurized {} records -> {}",
        features.len(),
        cfg.output_dir.display()
    );
    Ok(())
}

fn feature_row_json(f: &FeatureVector) -> Value {
    let mut map = serde_json::Map::new();
    map.insert("id".to_string(), Value::from(f.id.clone()));
    for (i, v) in f.values().iter().enumerate() {
        map.insert(format!("X{}", i + 1), Value::from(*v));
    }
    map.insert(
        "warnings".to_string(),
        Value::Array(f.warnings.iter().map(|w| Value::from(w.clone())).collect()),
    );
    Value::Object(map)
}

pub fn stats(cfg: &RunConfig) -> Result<()> {
    reject_formats(cfg, "stats", &[OutputFormat::Svg])?;
    let records = load_records(cfg)?;
    let features = featurize_corpus(&records);
    let labels = spectrum_labels(&records);
    let entries = cfg.effective_entries();

    for framework in cfg.framework.frameworks() {
        let report = run_battery(&features, &labels, framework)?;
        let fw = framework.as_str();
        if cfg.emits(OutputFormat::Csv) {
            let csv = battery_csv(&entries, &features, &report);
            write_atomic(&out_path(cfg, &format!("stats_{fw}.csv")), &csv)?;
        }
        if cfg.emits(OutputFormat::Json) {
            let text = json_report(&entries, serde_json::to_value(&report)?)?;
            write_atomic(&out_path(cfg, &format!("stats_{fw}.json")), &text)?;
        }
        let completed = report
            .entries
            .iter()
            .filter(|e| matches!(e.outcome, BatteryOutcome::Completed(_)))
            .count();
        println!(
            "stats {fw}: {completed}/{} tests completed -> {}",
            report.entries.len(),
            cfg.output_dir.display()
        );
    }
    Ok(())
}

fn battery_csv(
    entries: &[(String, String)],
    features: &[FeatureVector],
    report: &BatteryReport,
) -> String {
    let mut csv = csv_preamble(entries);
    for f in features {
        for w in &f.warnings {
            csv.push_str(&format!("# warning: {}: {w}\n", f.id));
        }
    }
    for w in &report.warnings {
        csv.push_str(&format!("# warning: {w}\n"));
    }
    csv.push_str("feature,test,status,statistic,p_value,df,group_sizes,reason\n");
    let join = |v: &[usize]| {
        v.iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(";")
    };
    for entry in &report.entries {
        match &entry.outcome {
            BatteryOutcome::Completed(r) => csv.push_str(&format!(
                "{},{},completed,{},{},{},{},\n",
                csv_field(entry.feature),
                entry.test,
                f6(r.statistic),
                e6(r.p_value),
                join(&r.df),
                join(&r.group_sizes),
            )),
            BatteryOutcome::Skipped { reason } => csv.push_str(&format!(
                "{},{},skipped,,,,,{}\n",
                csv_field(entry.feature),
                entry.test,
                csv_field(reason),
            )),
        }
    }
    csv
}

pub fn train(cfg: &RunConfig) -> Result<()> {
    reject_formats(cfg, "train", &[OutputFormat::Csv, OutputFormat::Svg])?;
    let records = load_records(cfg)?;
    let embeddings = cfg.load_embedding_table()?;
    let features = featurize_corpus(&records);
    let (matrix, _) = feature_matrix(&records, &features, embeddings.as_ref(), cfg.features)?;
    let entries = cfg.effective_entries();

    for framework in cfg.framework.frameworks() {
        let y = label_indices(&records, framework);
        let n_classes = framework.label_names().len();
        // Full-corpus fit; the scaler sees the same rows the model does.
        let (rows, scaler) = if cfg.features == FeatureSource::XScaled {
            let params = fit_scaler(&matrix)?;
            (apply_scaler(&params, &matrix), Some(params))
        } else {
            (matrix.clone(), None)
        };
        let mut spec = cfg.model_spec();
        spec.forest.master_seed = derive_seed(cfg.seed, 2);
        spec.mlp.seed = derive_seed(cfg.seed, 3);
        let model = spec.fit(&rows, &y, n_classes)?;
        let family = model_key(model.family());
        let artifact = ModelArtifact::new(framework, cfg.features, cfg.seed, scaler, model);

        let fw = framework.as_str();
        let model_path = out_path(cfg, &format!("model_{fw}.json"));
        write_atomic(&model_path, &(artifact.to_json()? + "\n"))?;
        if cfg.emits(OutputFormat::Json) {
            let payload = json!({
                "framework": fw,
                "family": family,
                "features": feature_key(cfg.features),
                "n_records": records.len(),
                "label_counts": counts_object(&label_counts(&records, framework)),
                "model_path": model_path.display().to_string(),
            });
            let report = json_report(&entries, payload)?;
            write_atomic(&out_path(cfg, &format!("train_report_{fw}.json")), &report)?;
        }
        println!(
            "trained {family} ({fw}) on {} records -> {}",
            records.len(),
            model_path.display()
        );
    }
    Ok(())
}

/// Shared evaluation driver for evaluate, calibrate, and importance.
fn run_eval(cfg: &RunConfig) -> Result<Vec<(Framework, EvalOutcome)>> {
    let records = load_records(cfg)?;
    let embeddings = cfg.load_embedding_table()?;
    let config = cfg.eval_config();
    cfg.framework
        .frameworks()
        .into_iter()
        .map(|fw| Ok((fw, evaluate_pipeline(&records, embeddings.as_ref(), fw, &config)?)))
        .collect()
}

pub fn evaluate(cfg: &RunConfig) -> Result<()> {
    let entries = cfg.effective_entries();
    for (framework, outcome) in run_eval(cfg)? {
        let fw = framework.as_str();
        if cfg.emits(OutputFormat::Csv) {
            write_atomic(
                &out_path(cfg, &format!("metrics_{fw}.csv")),
                &metrics_csv(&entries, &outcome),
            )?;
            write_atomic(
                &out_path(cfg, &format!("calibration_{fw}.csv")),
                &calibration_csv(&entries, &outcome),
            )?;
        }
        if cfg.emits(OutputFormat::Svg) {
            let svg = calibration_svg(
                &outcome.calibration,
                &format!("Calibration ({fw} framework)"),
            );
            write_atomic(
                &out_path(cfg, &format!("calibration_{fw}.svg")),
                &svg_with_config(&svg, &entries),
            )?;
        }
        emit_importance_files(cfg, &entries, framework, &outcome)?;
        if cfg.emits(OutputFormat::Json) {
            let report = json_report(&entries, serde_json::to_value(&outcome)?)?;
            write_atomic(&out_path(cfg, &format!("evaluation_{fw}.json")), &report)?;
            write_atomic(
                &out_path(cfg, &format!("model_{fw}.json")),
                &(outcome.artifact.to_json()? + "\n"),
            )?;
        }
        println!(
            "evaluate {fw}: accuracy {} macro_f1 {} weighted_f1 {} (train {}, test {})",
            f6(outcome.metrics.accuracy),
            f6(outcome.metrics.macro_f1),
            f6(outcome.metrics.weighted_f1),
            outcome.train_size,
            outcome.test_size
        );
    }
    Ok(())
}

pub fn calibrate(cfg: &RunConfig) -> Result<()> {
    let entries = cfg.effective_entries();
    for (framework, outcome) in run_eval(cfg)? {
        let fw = framework.as_str();
        if cfg.emits(OutputFormat::Csv) {
            write_atomic(
                &out_path(cfg, &format!("calibration_{fw}.csv")),
                &calibration_csv(&entries, &outcome),
            )?;
        }
        if cfg.emits(OutputFormat::Json) {
            let report = json_report(&entries, serde_json::to_value(&outcome.calibration)?)?;
            write_atomic(&out_path(cfg, &format!("calibration_{fw}.json")), &report)?;
        }
        if cfg.emits(OutputFormat::Svg) {
            let svg = calibration_svg(
                &outcome.calibration,
                &format!("Calibration ({fw} framework)"),
            );
            write_atomic(
                &out_path(cfg, &format!("calibration_{fw}.svg")),
                &svg_with_config(&svg, &entries),
            )?;
        }
        println!(
            "calibrate {fw}: {} classes over {} bins -> {}",
            outcome.calibration.classes.len(),
            outcome.n_bins,
            cfg.output_dir.display()
        );
    }
    Ok(())
}

pub fn importance(cfg: &RunConfig) -> Result<()> {
    let entries = cfg.effective_entries();
    for (framework, outcome) in run_eval(cfg)? {
        let fw = framework.as_str();
        let ranked = outcome.importance.as_ref().ok_or_else(|| {
            anyhow!(
                "model family '{}' has no impurity importance; choose decision_tree or random_forest",
                model_key(outcome.model_family)
            )
        })?;
        emit_importance_files(cfg, &entries, framework, &outcome)?;
        let top = &ranked[0];
        println!(
            "importance {fw}: top feature {} ({}) at {}",
            top.feature,
            top.label,
            f6(top.importance)
        );
    }
    Ok(())
}

/// Importance CSV/SVG/JSON for tree-based outcomes; silently absent for
/// families without impurity importance (the importance command errors
/// out first).
fn emit_importance_files(
    cfg: &RunConfig,
    entries: &[(String, String)],
    framework: Framework,
    outcome: &EvalOutcome,
) -> Result<()> {
    let Some(ranked) = &outcome.importance else {
        return Ok(());
    };
    let fw = framework.as_str();
    if cfg.emits(OutputFormat::Csv) {
        let mut csv = csv_preamble(entries);
        csv.push_str("feature,label,importance\n");
        for entry in ranked {
            csv.push_str(&format!(
                "{},{},{}\n",
                csv_field(&entry.feature),
                csv_field(&entry.label),
                f6(entry.importance)
            ));
        }
        write_atomic(&out_path(cfg, &format!("importance_{fw}.csv")), &csv)?;
    }
    if cfg.emits(OutputFormat::Json) {
        let report = json_report(entries, serde_json::to_value(ranked)?)?;
        write_atomic(&out_path(cfg, &format!("importance_{fw}.json")), &report)?;
    }
    if cfg.emits(OutputFormat::Svg) {
        let svg = importance_svg(ranked, &format!("Gini importance ({fw} framework)"));
        write_atomic(
            &out_path(cfg, &format!("importance_{fw}.svg")),
            &svg_with_config(&svg, entries),
        )?;
    }
    Ok(())
}

/// One metrics row: model/features provenance, accuracy, per-class F1,
/// macro and weighted averages.
fn metrics_csv(entries: &[(String, String)], outcome: &EvalOutcome) -> String {
    let m = &outcome.metrics;
    let mut csv = csv_preamble(entries);
    for w in &outcome.warnings {
        csv.push_str(&format!("# warning: {w}\n"));
    }
    for (name, flagged) in m.class_names.iter().zip(&m.zero_division) {
        if *flagged {
            csv.push_str(&format!(
                "# note: class {name} had an undefined precision, recall, or F1 reported as 0\n"
            ));
        }
    }
    csv.push_str("model,features,framework,seed,train_size,test_size,accuracy");
    for name in &m.class_names {
        csv.push_str(&format!(",f1_{name}"));
    }
    csv.push_str(",macro_f1,weighted_f1\n");
    csv.push_str(&format!(
        "{},{},{},{},{},{},{}",
        model_key(outcome.model_family),
        feature_key(outcome.feature_source),
        outcome.framework.as_str(),
        outcome.seed,
        outcome.train_size,
        outcome.test_size,
        f6(m.accuracy)
    ));
    for f1 in &m.f1 {
        csv.push_str(&format!(",{}", f6(*f1)));
    }
    csv.push_str(&format!(",{},{}\n", f6(m.macro_f1), f6(m.weighted_f1)));
    csv
}

fn calibration_csv(entries: &[(String, String)], outcome: &EvalOutcome) -> String {
    let mut csv = csv_preamble(entries);
    csv.push_str("class,bin_low,bin_high,mean_pred,frac_pos,count\n");
    for class in &outcome.calibration.classes {
        for bin in &class.bins {
            csv.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&class.class_name),
                f6(bin.bin_low),
                f6(bin.bin_high),
                f6(bin.mean_predicted),
                f6(bin.fraction_positive),
                bin.count
            ));
        }
    }
    csv
}

pub fn predict(args: &PredictArgs) -> Result<()> {
    let artifact = ModelArtifact::load(&args.model)?;
    let mut lines: Vec<String> = args.line.clone();
    if let Some(path) = &args.input {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read input file {}", path.display()))?;
        lines.extend(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_string),
        );
    }
    if lines.is_empty() {
        bail!("no input lines; pass --line or --input");
    }

    let expected = artifact.model.n_features();
    let rows: Vec<(String, Vec<f64>)> = match artifact.feature_source {
        FeatureSource::X | FeatureSource::XScaled => lines
            .iter()
            .skip_while(|l| l.starts_with("id,"))
            .map(|l| parse_feature_line(l, expected))
            .collect::<Result<_>>()?,
        FeatureSource::XEmb => {
            let path = args.embeddings.as_ref().ok_or_else(|| {
                anyhow!("model expects X_emb features; pass --embeddings <file>")
            })?;
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("cannot read embeddings file {}", path.display()))?;
            let dim = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .and_then(|h| h.strip_prefix("dim="))
                .and_then(|d| d.parse().ok())
                .ok_or_else(|| anyhow!("embeddings file is missing its dim=<d> header"))?;
            if dim != expected {
                bail!("embeddings have dimension {dim} but the model expects {expected} features");
            }
            let table = reprospect_core::corpus::parse_embeddings(&text, dim)?;
            lines
                .iter()
                .map(|id| {
                    let id = id.trim();
                    table
                        .mean_for(id)
                        .map(|v| (id.to_string(), v))
                        .ok_or_else(|| anyhow!("id '{id}' not present in the embeddings file"))
                })
                .collect::<Result<_>>()?
        }
    };

    let mut stdout = String::from("id,predicted");
    for name in &artifact.class_names {
        stdout.push_str(&format!(",{name}"));
    }
    stdout.push('\n');
    for (id, values) in &rows {
        let proba = artifact.predict_proba(values);
        let label = &artifact.class_names[reprospect_core::models::argmax(&proba)];
        stdout.push_str(&format!("{},{}", csv_field(id), label));
        for p in &proba {
            stdout.push_str(&format!(",{}", f6(*p)));
        }
        stdout.push('\n');
    }
    print!("{stdout}");
    Ok(())
}

/// Parses "id,v1,...,vk" where k must match the model's feature arity.
fn parse_feature_line(line: &str, expected: usize) -> Result<(String, Vec<f64>)> {
    let mut fields = line.split(',');
    let id = fields
        .next()
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .ok_or_else(|| anyhow!("feature line has no id field: {line:?}"))?;
    let mut values = Vec::new();
    for (i, field) in fields.enumerate() {
        let v: f64 = field.trim().parse().map_err(|_| {
            anyhow!(
                "feature line for id '{id}': value {} ('{}') is not a number",
                i + 1,
                field.trim()
            )
        })?;
        if !v.is_finite() {
            bail!("feature line for id '{id}': value {} is not finite", i + 1);
        }
        values.push(v);
    }
    if values.len() != expected {
        bail!(
            "feature line for id '{id}' has {} values; expected {expected}",
            values.len()
        );
    }
    Ok((id.to_string(), values))
}
