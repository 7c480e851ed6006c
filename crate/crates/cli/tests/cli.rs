//! End-to-end tests against the compiled binary: exit statuses, report
//! shapes, flag reachability and the synth round-trip.

use std::path::{Path, PathBuf};
use std::process::Command;

fn roc(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_roc"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn write_corpus(dir: &Path, name: &str, lines: &[&str]) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    path
}

/// Paper FLOOR makes no citations and receives three.
fn floor_corpus(dir: &Path) -> PathBuf {
    write_corpus(
        dir,
        "floor.jsonl",
        &[
            r#"{"id":"FLOOR","year":2010,"authors":["A1"],"journal":"J1","publisher":"X"}"#,
            r#"{"id":"C1","year":2011,"authors":["B1"],"journal":"J2","publisher":"X","refs":[{"kind":"paper","id":"FLOOR"}]}"#,
            r#"{"id":"C2","year":2011,"authors":["B2"],"journal":"J3","publisher":"X","refs":[{"kind":"paper","id":"FLOOR"}]}"#,
            r#"{"id":"C3","year":2012,"authors":["B3"],"journal":"J4","publisher":"X","refs":[{"kind":"paper","id":"FLOOR"}]}"#,
        ],
    )
}

#[test]
fn roc_report_shows_floor() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = floor_corpus(dir.path());
    let (code, stdout, _) = roc(&[
        "roc",
        "--corpus",
        corpus.to_str().unwrap(),
        "--entity",
        "paper:FLOOR",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let mut lines = stdout.lines();
    assert_eq!(
        lines.next().unwrap(),
        "scope,id,numerator,raw_denominator,effective_denominator,value,floor_applied,outstanding"
    );
    assert_eq!(lines.next().unwrap(), "paper,FLOOR,3,0,0.5,6,true,true");
}

#[test]
fn json_lines_mirror_result_field_names() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = floor_corpus(dir.path());
    let (code, stdout, _) = roc(&[
        "roc",
        "--corpus",
        corpus.to_str().unwrap(),
        "--entity",
        "paper:FLOOR",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code, 0);
    let row: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    for key in [
        "numerator",
        "raw_denominator",
        "effective_denominator",
        "value",
        "floor_applied",
        "outstanding",
    ] {
        assert!(row.get(key).is_some(), "missing {key} in {row}");
    }
    assert_eq!(row["entity"]["scope"], "paper");
    assert_eq!(row["entity"]["id"], "FLOOR");
    assert_eq!(row["value"], 6.0);
    assert_eq!(row["floor_applied"], true);
}

/// Six journals, three at ROC 1.0 and three at 0.5, plus the citing
/// journals at 0.
fn tie_corpus(dir: &Path) -> PathBuf {
    let mut lines: Vec<String> = Vec::new();
    for (journal, cites) in [
        ("JA", 1),
        ("JB", 1),
        ("JC", 1),
        ("JD", 2),
        ("JE", 2),
        ("JF", 2),
    ] {
        lines.push(format!(
            r#"{{"id":"P-{journal}","year":2010,"authors":["a-{journal}"],"journal":"{journal}","publisher":"X","refs":[{{"kind":"external","class":"webpage","label":"w-{journal}-1"}},{{"kind":"external","class":"webpage","label":"w-{journal}-2"}}]}}"#
        ));
        for k in 0..cites {
            lines.push(format!(
                r#"{{"id":"c-{journal}-{k}","year":2011,"authors":["b-{journal}-{k}"],"journal":"JC-{journal}-{k}","publisher":"X","refs":[{{"kind":"paper","id":"P-{journal}"}}]}}"#
            ));
        }
    }
    let path = dir.join("ties.jsonl");
    std::fs::write(&path, lines.join("\n") + "\n").unwrap();
    path
}

#[test]
fn rank_orders_by_metric_then_id() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tie_corpus(dir.path());
    let args = [
        "rank",
        "--corpus",
        corpus.to_str().unwrap(),
        "--scope",
        "journal",
        "--metric",
        "roc",
        "--top",
        "5",
        "--format",
        "csv",
    ];
    let (code, stdout, _) = roc(&args);
    assert_eq!(code, 0);
    assert_eq!(
        stdout,
        "rank,scope,id,metric,value\n\
         1,journal,JD,roc,1\n\
         2,journal,JE,roc,1\n\
         3,journal,JF,roc,1\n\
         4,journal,JA,roc,0.5\n\
         5,journal,JB,roc,0.5\n"
    );
    let (_, again, _) = roc(&args);
    assert_eq!(stdout, again);
}

#[test]
fn synth_round_trips_through_ingest() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("synth.jsonl");
    let (code, _, _) = roc(&[
        "synth",
        "--papers",
        "500",
        "--seed",
        "77",
        "--out",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let (code, stdout, _) = roc(&[
        "ingest",
        "--corpus",
        corpus.to_str().unwrap(),
        "--format",
        "json-lines",
    ]);
    assert_eq!(code, 0);
    let report: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(report["total_papers"], 500);
    assert_eq!(report["dropped_self_loops"], 0);
    assert_eq!(report["deduplicated_refs"], 0);
    assert_eq!(report["unresolved_refs"], 0);
    assert!(report["total_internal_edges"].as_u64().unwrap() > 0);
}

#[test]
fn synth_to_stdout_matches_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("synth.jsonl");
    let (code, stdout, _) = roc(&["synth", "--papers", "40", "--seed", "3"]);
    assert_eq!(code, 0);
    let (code2, _, _) = roc(&[
        "synth",
        "--papers",
        "40",
        "--seed",
        "3",
        "--out",
        corpus.to_str().unwrap(),
    ]);
    assert_eq!(code2, 0);
    assert_eq!(stdout, std::fs::read_to_string(corpus).unwrap());
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = floor_corpus(dir.path());
    let corpus = corpus.to_str().unwrap();

    // Missing required flag.
    let (code, _, _) = roc(&["roc", "--corpus", corpus]);
    assert_eq!(code, 1);
    // Unknown subcommand.
    let (code, _, _) = roc(&["frobnicate"]);
    assert_eq!(code, 1);
    // Bad selector scope.
    let (code, _, stderr) = roc(&["roc", "--corpus", corpus, "--entity", "gremlin:X"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("unknown scope"));
    // Selector without a colon.
    let (code, _, _) = roc(&["roc", "--corpus", corpus, "--entity", "FLOOR"]);
    assert_eq!(code, 1);
    // Period on a single paper.
    let (code, _, _) = roc(&[
        "roc", "--corpus", corpus, "--entity", "paper:FLOOR", "--period", "2010:2011",
    ]);
    assert_eq!(code, 1);
    // Inverted period.
    let (code, _, _) = roc(&[
        "roc", "--corpus", corpus, "--entity", "journal:J1", "--period", "2011:2010",
    ]);
    assert_eq!(code, 1);
    // h-index over publishers.
    let (code, _, _) = roc(&[
        "rank", "--corpus", corpus, "--scope", "publisher", "--metric", "h-index",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = floor_corpus(dir.path());
    let corpus = corpus.to_str().unwrap();

    // Unknown entity.
    let (code, _, stderr) = roc(&["roc", "--corpus", corpus, "--entity", "paper:NOPE"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("unknown paper"));
    // Missing corpus file.
    let (code, _, _) = roc(&["roc", "--corpus", "/no/such/file", "--entity", "paper:X"]);
    assert_eq!(code, 2);
    // Malformed corpus line.
    let bad = write_corpus(
        dir.path(),
        "bad.jsonl",
        &[r#"{"id":"P1","authors":["A1"],"journal":"J1","publisher":"X"}"#],
    );
    let (code, _, stderr) = roc(&["ingest", "--corpus", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("year") && stderr.contains("line 1"));
    // Duplicate paper id.
    let dup = write_corpus(
        dir.path(),
        "dup.jsonl",
        &[
            r#"{"id":"P1","year":2010,"authors":["A1"],"journal":"J1","publisher":"X"}"#,
            r#"{"id":"P1","year":2011,"authors":["A2"],"journal":"J1","publisher":"X"}"#,
        ],
    );
    let (code, _, stderr) = roc(&["ingest", "--corpus", dup.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(stderr.contains("duplicate paper id"));
}

#[test]
fn weight_and_exclusion_flags_reach_the_engine() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(
        dir.path(),
        "weights.jsonl",
        &[
            r#"{"id":"P1","year":2010,"authors":["A1"],"journal":"J1","publisher":"X","refs":[{"kind":"external","class":"webpage","label":"w"}]}"#,
            r#"{"id":"C1","year":2011,"authors":["B1"],"journal":"JW","publisher":"X","refs":[{"kind":"paper","id":"P1"}]}"#,
            r#"{"id":"C2","year":2011,"authors":["A1"],"journal":"JZ","publisher":"X","refs":[{"kind":"paper","id":"P1"}]}"#,
        ],
    );
    let corpus = corpus.to_str().unwrap();
    let weights = dir.path().join("weights.jsonl.weights");
    std::fs::write(&weights, "# boost JW\n{\"journal\":\"JW\",\"weight\":2.5}\n").unwrap();

    let row = |extra: &[&str]| -> serde_json::Value {
        let mut args = vec![
            "roc", "--corpus", corpus, "--entity", "paper:P1", "--format", "json-lines",
        ];
        args.extend_from_slice(extra);
        let (code, stdout, stderr) = roc(&args);
        assert_eq!(code, 0, "{stderr}");
        serde_json::from_str(stdout.trim()).unwrap()
    };

    assert_eq!(row(&[])["numerator"], 2.0);
    assert_eq!(row(&["--weights", weights.to_str().unwrap()])["numerator"], 3.5);
    // C2 shares author A1 with P1 and drops out under exclusion.
    assert_eq!(row(&["--exclude-self"])["numerator"], 1.0);
    // Before C1/C2 are published nothing is received.
    assert_eq!(row(&["--as-of", "2010"])["numerator"], 0.0);
    // value 2.0 beats the default benchmark but not 3.
    assert_eq!(row(&[])["outstanding"], true);
    assert_eq!(row(&["--benchmark", "3"])["outstanding"], false);

    // Non-positive weights are an options error.
    std::fs::write(&weights, "{\"journal\":\"JW\",\"weight\":0.0}\n").unwrap();
    let (code, _, stderr) = roc(&[
        "roc", "--corpus", corpus, "--entity", "paper:P1",
        "--weights", weights.to_str().unwrap(),
    ]);
    assert_eq!(code, 1);
    assert!(stderr.contains("strictly positive"));
}

#[test]
fn empty_period_intersection_is_flagged() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = floor_corpus(dir.path());
    let (code, stdout, _) = roc(&[
        "roc",
        "--corpus",
        corpus.to_str().unwrap(),
        "--entity",
        "journal:J1",
        "--period",
        "1980:1990",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code, 0);
    let row: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(row["empty_scope"], true);
    assert_eq!(row["numerator"], 0.0);
    assert_eq!(row["raw_denominator"], 0);
    assert_eq!(row["floor_applied"], true);
    assert_eq!(row["value"], 0.0);
}

#[test]
fn series_reports_one_row_per_year() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = floor_corpus(dir.path());
    let (code, stdout, _) = roc(&[
        "series",
        "--corpus",
        corpus.to_str().unwrap(),
        "--entity",
        "paper:FLOOR",
        "--from",
        "2009",
        "--to",
        "2012",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    // 2009 precedes publication and is skipped.
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("2010,0,0,0.5,0,true,"));
    assert!(lines[2].starts_with("2011,2,0,0.5,4,true,"));
    assert!(lines[3].starts_with("2012,3,0,0.5,6,true,"));
}

#[test]
fn stats_report_matches_portfolio_fields() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = tie_corpus(dir.path());
    let (code, stdout, _) = roc(&[
        "stats",
        "--corpus",
        corpus.to_str().unwrap(),
        "--entity",
        "journal:JD",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code, 0);
    let row: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    for key in [
        "paper_rocs",
        "roc_max",
        "high_roc_count",
        "high_roc_ratio_percent",
        "total_papers",
    ] {
        assert!(row.get(key).is_some(), "missing {key}");
    }
    assert_eq!(row["total_papers"], 1);
    assert_eq!(row["roc_max"], 1.0);
    assert_eq!(row["high_roc_count"], 0);
}

#[test]
fn compare_keeps_good_rows_on_partial_failure() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = floor_corpus(dir.path());
    let (code, stdout, stderr) = roc(&[
        "compare",
        "--corpus",
        corpus.to_str().unwrap(),
        "--entity",
        "paper:FLOOR",
        "--entity",
        "paper:MISSING",
        "--format",
        "csv",
    ]);
    assert_eq!(code, 2);
    assert!(stdout.contains("paper,FLOOR,6,true,3,,"));
    assert!(stderr.contains("MISSING"));
}

#[test]
fn compare_includes_if2y_for_journals_with_census_year() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = write_corpus(
        dir.path(),
        "journal.jsonl",
        &[
            r#"{"id":"R1","year":2010,"authors":["A1"],"journal":"JI","publisher":"X","refs":[{"kind":"external","class":"webpage","label":"w"}]}"#,
            r#"{"id":"R2","year":2011,"authors":["A2"],"journal":"JI","publisher":"X"}"#,
            r#"{"id":"C1","year":2012,"authors":["B1"],"journal":"JX","publisher":"X","refs":[{"kind":"paper","id":"R1"},{"kind":"paper","id":"R2"}]}"#,
        ],
    );
    let (code, stdout, _) = roc(&[
        "compare",
        "--corpus",
        corpus.to_str().unwrap(),
        "--entity",
        "journal:JI",
        "--census-year",
        "2012",
        "--format",
        "json-lines",
    ]);
    assert_eq!(code, 0);
    let row: serde_json::Value = serde_json::from_str(stdout.trim()).unwrap();
    assert_eq!(row["if2y"], 1.0);
    assert_eq!(row["h_index"], 1);
    assert_eq!(row["citation_count"], 2);
    assert!(row["roc"]["value"].is_number());
}

#[test]
fn help_and_version_exit_zero() {
    let (code, stdout, _) = roc(&["--help"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("Usage"));
    let (code, _, _) = roc(&["--version"]);
    assert_eq!(code, 0);
}
