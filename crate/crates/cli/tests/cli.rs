use std::process::{Command, Output};

use abelian_codes_cli::{run, Analyses, ExitStatus, Format, RunConfig};

fn abelcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelcodes"))
        .args(args)
        .env_remove("ABELCODES_THREADS")
        .output()
        .expect("run abelcodes")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

#[test]
fn verify_c15_exits_zero() {
    let o = abelcodes(&["analyze", "15", "--verify"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn c35_reports_the_failed_condition() {
    let o = abelcodes(&["analyze", "35", "--verify", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    let f = &v["hypotheses"]["failures"][0];
    assert_eq!(f["condition"], "two_not_primitive");
    assert_eq!(f["modulus"], 49);
    assert_eq!(f["order"], 21);
}

#[test]
fn override_builds_and_notes_the_hypothesis() {
    let o = abelcodes(&["analyze", "39", "--verify", "--allow-unverified-hypotheses"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NOTE standing hypotheses (overridden)"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unverified"));
}

#[test]
fn c33_distribution_as_json() {
    let o = abelcodes(&[
        "analyze",
        "33",
        "--distribution",
        "--format",
        "json",
        "--threads",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let e3 = v["codes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["label"] == "e3")
        .unwrap();
    let dist = &e3["distribution"];
    for (w, n) in [
        ("12", 165),
        ("14", 165),
        ("16", 165),
        ("18", 330),
        ("20", 165),
        ("22", 33),
    ] {
        assert_eq!(dist[w], n, "weight {w}");
    }
    assert_eq!(e3["predicted_weight"]["source"], "theorem");
    assert_eq!(e3["dimension_source"], "theorem");
}

#[test]
fn theory_numbers_carry_sources() {
    let o = abelcodes(&[
        "analyze",
        "9x25",
        "--weights",
        "--format",
        "json",
        "--budget",
        "2^12",
    ]);
    let v = json(&o);
    for c in v["codes"].as_array().unwrap() {
        assert!(c["dimension_source"].is_string());
        if let Some(w) = c.get("predicted_weight") {
            let s = w["source"].as_str().unwrap();
            assert!(["theorem", "table", "conjecture"].contains(&s), "{s}");
        }
    }
    let i11 = v["codes"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["label"] == "I1,1*")
        .unwrap();
    assert_eq!(i11["predicted_weight"]["kind"], "conjecture");
    assert_eq!(i11["weight_verdict"]["status"], "recorded");
}

#[test]
fn budget_refusal_has_its_own_code() {
    let o = abelcodes(&["analyze", "3x5x11", "--distribution", "--budget", "2^10"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("refused e8"));
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        vec!["analyze", "12"],
        vec!["analyze", "15", "--budget", "100"],
        vec!["analyze"],
        vec!["frobnicate"],
        vec!["analyze", "15", "--matrix", "e9"],
    ] {
        assert_eq!(abelcodes(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn group_flag_and_threads_env() {
    let a = abelcodes(&["analyze", "-g", "3x11", "--weights", "--format", "json"]);
    let b = Command::new(env!("CARGO_BIN_EXE_abelcodes"))
        .args(["analyze", "33", "--weights", "--format", "json"])
        .env("ABELCODES_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(a.status.code(), Some(0));
    let (va, vb) = (json(&a), json(&b));
    assert_eq!(va["codes"], vb["codes"]);
}

#[test]
fn matrix_text_rows() {
    let o = abelcodes(&["analyze", "15", "--matrix", "e0"]);
    assert!(stdout(&o).lines().any(|l| l == "111111111111111"));
    let o = abelcodes(&["analyze", "15", "--matrix", "e3"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text
        .lines()
        .filter(|l| l.len() == 15 && l.chars().all(|c| c == '0' || c == '1'))
        .collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.matches('1').count() == 8));
}

#[test]
fn export_and_csv_files() {
    let dir = std::env::temp_dir().join(format!("abelcodes-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let export = dir.join("c15.json");
    let csv = dir.join("c15.csv");
    let o = abelcodes(&[
        "analyze",
        "15",
        "--export",
        export.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&export).unwrap()).unwrap();
    assert_eq!(v["factor_orders"], serde_json::json!([5, 3]));
    assert_eq!(
        v["idempotents"]["e3"]["support"],
        serde_json::json!([1, 2, 3, 4, 6, 9, 12, 13])
    );
    assert_eq!(v["generator_matrices"]["e3"]["dimension"], 4);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("label,weight,count\n"));
    assert!(table.contains("e3,8,15\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn library_run_matches_binary() {
    let mut cfg = RunConfig::new("33");
    cfg.analyses = Analyses {
        distribution: true,
        ..Default::default()
    };
    cfg.format = Format::Json;
    let outcome = run(&cfg);
    assert_eq!(outcome.status, ExitStatus::Ok);
    let bin = abelcodes(&["analyze", "33", "--distribution", "--format", "json"]);
    assert_eq!(outcome.stdout.as_bytes(), bin.stdout.as_slice());
}
