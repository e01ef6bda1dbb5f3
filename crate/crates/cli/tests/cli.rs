use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat-slice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn analyze_json_reports_verified_curve() {
    let o = run(&[
        "analyze", "--p", "11", "--e0", "1", "--e1", "3", "--e2", "9", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for needle in [
        r#""count_g": 33"#,
        r#""deficiency_i": 3"#,
        r#""verified": true"#,
        r#""n": 5"#,
    ] {
        assert!(text.contains(needle), "missing {needle} in {text}");
    }
}

#[test]
fn analyze_text_lists_d_lines() {
    let o = run(&["analyze", "--p", "7", "--e0", "3", "--e1", "0", "--e2", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("union of d = 3 lines"));
    for line in ["X1 + X2 ", "X1 + 2*X2", "X1 + 4*X2"] {
        assert!(text.contains(line), "missing {line}");
    }
}

#[test]
fn small_characteristic_is_a_usage_error() {
    let o = run(&["analyze", "--p", "3", "--e0", "0", "--e1", "0", "--e2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("characteristic must exceed 3"));
}

#[test]
fn out_of_range_parameter_is_a_usage_error() {
    let o = run(&["analyze", "--p", "7", "--e0", "7", "--e1", "0", "--e2", "0"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_table_is_a_usage_error() {
    assert_eq!(
        run(&["tables", "--p", "7", "--table", "6"]).status.code(),
        Some(2)
    );
    assert_eq!(
        run(&["tables", "--p", "7", "--table", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn census_signatures_has_one_row_per_class() {
    let o = run(&["census", "--p", "7", "--sweep", "signatures"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 11);
    assert!(text.starts_with("p,h,q,e0,e1,e2,signature,"));
}

#[test]
fn census_sample_is_deterministic() {
    let args = [
        "census", "--p", "13", "--sweep", "sample", "6", "--seed", "9",
    ];
    let a = stdout(&run(&args));
    assert_eq!(a, stdout(&run(&args)));
    assert_eq!(a.lines().count(), 7);
    let other = stdout(&run(&[
        "census", "--p", "13", "--sweep", "sample", "6", "--seed", "10",
    ]));
    assert_ne!(a, other);
}

#[test]
fn census_all_is_gated_for_large_fields() {
    assert_eq!(
        run(&["census", "--p", "17", "--sweep", "all"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn census_writes_csv_file() {
    let path = std::env::temp_dir().join(format!("fermat-slice-census-{}.csv", std::process::id()));
    let o = run(&[
        "census",
        "--p",
        "5",
        "--sweep",
        "all",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(csv.lines().count(), 126);
    assert!(String::from_utf8_lossy(&o.stderr).contains("125 rows"));
}

#[test]
fn tables_two_and_five_match_enumeration() {
    let t2 = run(&["tables", "--p", "11", "--table", "2"]);
    assert_eq!(t2.status.code(), Some(0));
    assert!(stdout(&t2).contains("{-1,-1,-1}"));
    let t5 = run(&["tables", "--p", "13", "--table", "5"]);
    assert_eq!(t5.status.code(), Some(0));
    assert!(!stdout(&t5).is_empty());
}

#[test]
fn verify_without_probe_passes_small_fields() {
    let path =
        std::env::temp_dir().join(format!("fermat-slice-verify-{}.json", std::process::id()));
    let o = run(&[
        "verify",
        "--p-list",
        "5,7",
        "--probe-depth",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(
        text.lines().filter(|l| l.starts_with("criterion")).count(),
        11
    );
    let json = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(json.contains(r#""criteria""#));
}

#[test]
fn verify_rejects_mismatched_degree_list() {
    assert_eq!(
        run(&["verify", "--p-list", "5,7,11", "--h-list", "1,1"])
            .status
            .code(),
        Some(2)
    );
}
