//! End-to-end behavior of the `cwising` binary: exit codes, payload
//! formats, and stream separation.

use std::path::PathBuf;
use std::process::{Command, Output};

use cwising::polynomial::Poly;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cwising"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write_temp(name: &str, content: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("cwising-test-{}-{name}", std::process::id()));
    std::fs::write(&path, content).unwrap();
    path
}

#[test]
fn compute_biclique_ising_reports_quadratic_y_degree() {
    let out = run(&["compute", "--family", "biclique:3,3", "--poly", "ising"]);
    assert!(out.status.success());
    let poly = Poly::from_json_str(&stdout_str(&out)).unwrap();
    assert_eq!(poly.max_degree("y").unwrap(), 9);
    // diagnostics stay on stderr so stdout is pipeable JSON
    assert!(!out.stderr.is_empty());
    assert!(stdout_str(&out).starts_with('{'));
}

#[test]
fn compute_term_file_matches_known_polynomial() {
    let term = write_temp("k2.cwe", "# K_2\ne(1,2, U(v(1,1), v(2,2)))\n");
    let out = run(&[
        "compute",
        "--term",
        term.to_str().unwrap(),
        "--poly",
        "ising",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), "1 + 2*x*y + x^2*z");
}

#[test]
fn compute_redundant_term_exits_3_with_aggregated_engine() {
    let term = write_temp("redundant.cwe", "e(1,2, e(1,2, U(v(1,1), v(2,2))))\n");
    let out = run(&[
        "compute",
        "--term",
        term.to_str().unwrap(),
        "--poly",
        "ising",
        "--engine",
        "aggregated",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // the reference engine accepts the same term
    let out = run(&[
        "compute",
        "--term",
        term.to_str().unwrap(),
        "--poly",
        "ising",
        "--engine",
        "reference",
        "--format",
        "text",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), "1 + 2*x*y + x^2*z");
}

#[test]
fn compute_rejects_bad_input_with_exit_2() {
    let term = write_temp("bad.cwe", "e(1,1, v(1,1))\n");
    let out = run(&[
        "compute",
        "--term",
        term.to_str().unwrap(),
        "--poly",
        "ising",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["compute", "--family", "nonsense:3", "--poly", "ising"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&[
        "compute",
        "--family",
        "clique:3",
        "--poly",
        "ising",
        "--budget-secs",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_accepts_k2_for_all_presets_and_flags_corruption() {
    let term = write_temp("k2-check.cwe", "e(1,2, U(v(1,1), v(2,2)))\n");
    for poly in ["ising", "independence_ising", "dominating_ising"] {
        let out = run(&["check", "--term", term.to_str().unwrap(), "--poly", poly]);
        assert!(out.status.success(), "preset {poly}");
    }
    // full sweep across predicates and engines
    let out = run(&["check", "--term", term.to_str().unwrap()]);
    assert!(out.status.success());

    let out = bin()
        .args([
            "check",
            "--term",
            term.to_str().unwrap(),
            "--corrupt-for-tests",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_str(&out);
    assert!(text.contains("MISMATCH"));
    assert!(text.contains("engine=") && text.contains("oracle="));
}

#[test]
fn check_is_green_over_the_standard_corpus() {
    for family in [
        "clique:4",
        "path:5",
        "cycle:5",
        "biclique:2,3",
        "cograph:J(U(1,2),J(3,4))",
    ] {
        let out = run(&["check", "--family", family]);
        assert!(out.status.success(), "family {family}");
    }
}

#[test]
fn check_rejects_redundant_terms_for_the_aggregated_engine() {
    let term = write_temp("red-check.cwe", "e(1,2, e(1,2, U(v(1,1), v(2,2))))\n");
    let out = run(&["check", "--term", term.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    // restricted to the reference engine the term checks out
    let out = run(&[
        "check",
        "--term",
        term.to_str().unwrap(),
        "--engine",
        "reference",
    ]);
    assert!(out.status.success());
}

#[test]
fn oracle_command_matches_engine_output() {
    let graph = write_temp("c4.txt", "4 4\n1 2\n2 3\n3 4\n4 1\n");
    let oracle_out = run(&[
        "oracle",
        "--graph",
        graph.to_str().unwrap(),
        "--poly",
        "dominating_ising",
    ]);
    assert!(oracle_out.status.success());
    let engine_out = run(&[
        "compute",
        "--graph",
        graph.to_str().unwrap(),
        "--poly",
        "dominating_ising",
    ]);
    assert!(engine_out.status.success());
    assert_eq!(stdout_str(&oracle_out), stdout_str(&engine_out));
}

#[test]
fn oracle_respects_size_bound() {
    let graph = write_temp("big.txt", "5 0\n");
    let out = run(&[
        "oracle",
        "--graph",
        graph.to_str().unwrap(),
        "--poly",
        "ising",
        "--oracle-max-n",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_empty_range_emits_header_only_and_succeeds() {
    let out = run(&[
        "bench", "--family", "biclique", "--min", "5", "--max", "4", "--poly", "ising",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    assert_eq!(
        text.trim(),
        "family,n,k,engine,wall_time_secs,peak_cells,max_coeff_bits,status"
    );
}

#[test]
fn bench_produces_rows_and_slope() {
    let out = run(&[
        "bench", "--family", "path", "--min", "4", "--max", "8", "--step", "2", "--poly", "ising",
    ]);
    assert!(out.status.success());
    let text = stdout_str(&out);
    let rows: Vec<&str> = text.trim().lines().collect();
    assert_eq!(rows.len(), 4); // header + n = 4, 6, 8
    assert!(rows[1].starts_with("path,4,3,aggregated,"));
    assert!(rows.iter().skip(1).all(|r| r.ends_with(",ok")));
    let stderr = String::from_utf8(out.stderr.clone()).unwrap();
    assert!(stderr.contains("loglog-slope:"));
}

#[test]
fn expr_subcommands_round_trip() {
    let term = write_temp("roundtrip.cwe", "  e(1,2,\n U(v(1,1), v(2,2)))  # K_2\n");
    let out = run(&["expr", "parse", "--term", term.to_str().unwrap()]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), "e(1,2,U(v(1,1),v(2,2)))");

    let out = run(&["expr", "validate", "--term", term.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["width"], 2);
    assert_eq!(report["irredundant"], true);

    let out = run(&["expr", "build", "--family", "cycle:5"]);
    assert!(out.status.success());
    let built = write_temp("c5.cwe", &stdout_str(&out));
    let out = run(&["expr", "validate", "--term", built.to_str().unwrap()]);
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["vertex_count"], 5);
    assert_eq!(report["edge_count"], 5);

    let graph = write_temp("fallback-src.txt", "3 1\n1 3\n");
    let out = run(&[
        "expr",
        "build",
        "--family",
        "fallback",
        "--graph",
        graph.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out).trim(), "e(1,3,U(U(v(1,1),v(2,2)),v(3,3)))");
}

#[test]
fn expr_validate_reports_redundant_sites() {
    let term = write_temp("red.cwe", "e(1,2, e(1,2, U(v(1,1), v(2,2))))\n");
    let out = run(&["expr", "validate", "--term", term.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(report["irredundant"], false);
    assert_eq!(report["redundant_sites"].as_array().unwrap().len(), 1);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["compute", "--family", "biclique:3,3", "--poly", "ising"];
    let a = run(&args);
    let b = run(&args);
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn trace_file_has_one_line_per_node() {
    let trace = std::env::temp_dir().join(format!("cwising-trace-{}.jsonl", std::process::id()));
    let out = run(&[
        "compute",
        "--family",
        "path:4",
        "--poly",
        "ising",
        "--trace",
        trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&trace).unwrap();
    let lines: Vec<&str> = text.trim().lines().collect();
    // path:4 has 4 singletons, 3 unions, 3 edge creations, 6 recolors
    assert_eq!(lines.len(), 16);
    for line in lines {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(row["cells"].as_u64().unwrap() > 0);
        assert!(row["op"].is_string());
    }
}
