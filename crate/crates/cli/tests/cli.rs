use std::process::{Command, Output};

fn tricolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tricolor"))
        .args(args)
        .env("TRICOLOR_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn table_n1_csv() {
    let o = tricolor(&["table", "--n", "1", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "m,k0,k1,k2,count\n0,3,2,1,1\n1,3,1,2,1\n");
    assert!(String::from_utf8_lossy(&o.stderr).contains("brute-force"));
}

#[test]
fn table_json_records_provenance() {
    let o = tricolor(&["table", "--n", "6", "--m", "0"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["source"], "transfer-matrix");
    let total: u64 = doc["table"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["count"].as_str().unwrap().parse::<u64>().unwrap())
        .sum();
    assert_eq!(total, 9_304_650);
}

#[test]
fn qpoly_n2() {
    let o = tricolor(&["qpoly", "--n", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("\"combinatorial\": [1, 0, 3]"), "{out}");
    assert!(out.contains("\"determinant\": [1, 0, 3]"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("combinatorial == determinant: true"));
    let text = stdout(&tricolor(&["qpoly", "--n", "2", "--format", "text"]));
    assert!(text.contains("combinatorial == determinant: true"));
}

#[test]
fn verify_all_is_green_and_reproducible() {
    let args = ["verify", "--suite", "all", "--n-max", "3", "--seed", "42"];
    let a = tricolor(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["passed"], true);
    assert!(!doc["exact"].as_array().unwrap().is_empty());
    assert!(!doc["numeric"].as_array().unwrap().is_empty());
    assert_eq!(stdout(&a), stdout(&tricolor(&args)));
}

#[test]
fn verify_selected_suites() {
    let o = tricolor(&["verify", "--suite", "lemma,corollaries", "--n-max", "2", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5, "{out}");
    assert!(!out.contains("theorem"));
}

#[test]
fn enumerate_streams_encodings() {
    let o = tricolor(&["enumerate", "--n", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 12);
    let o = tricolor(&["enumerate", "--n", "2", "--m", "0", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn refusals_and_usage_errors() {
    for args in [
        &["table", "--n", "12"][..],
        &["enumerate", "--n", "7"],
        &["table", "--n", "0"],
        &["verify", "--suite", "bogus"],
        &["frobnicate"],
    ] {
        let o = tricolor(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn bench_reports_rate_and_peak() {
    let o = tricolor(&["bench", "--n", "3"]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["states"], "208");
    assert!(doc["peak_keys"].as_u64().unwrap() > 0);
    assert!(doc["states_per_sec"].as_f64().unwrap() > 0.0);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("tricolor-table-{}.csv", std::process::id()));
    let o = tricolor(&["table", "--n", "1", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 3);
    std::fs::remove_file(path).unwrap();
}
