use std::process::Command;

use factoriza_cli::{parse_list, run_args, EXIT_CAP, EXIT_MISMATCH, EXIT_PASS, EXIT_USAGE};

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_factoriza")).args(args).env_remove("FACTORIZA_SEED").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

fn json(text: &str) -> serde_json::Value {
    serde_json::from_str(text).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["verify", "--table", "T2", "--case", "1", "--n", "3", "--q", "2"]).0, EXIT_PASS);
    assert_eq!(bin(&["verify", "--table", "T9", "--case", "1"]).0, EXIT_USAGE);
    assert_eq!(bin(&["verify", "--table", "T2", "--case", "3", "--m", "2", "--q", "3"]).0, EXIT_USAGE);
    assert_eq!(bin(&["verify", "--bogus"]).0, EXIT_USAGE);
    assert_eq!(bin(&["verify", "--table", "T4", "--case", "9"]).0, EXIT_CAP);
    assert_eq!(bin(&["--version"]).0, EXIT_PASS);
}

#[test]
fn negative_control_meets_its_expectation() {
    let (code, out, _) = bin(&["verify", "--table", "T2", "--case", "7", "--m", "3", "--q", "3", "--negative-control", "--format", "structured"]);
    assert_eq!(code, EXIT_PASS);
    let v = json(&out);
    assert_eq!(v["records"][0]["report"]["transitive"], false);
    assert_eq!(v["records"][0]["verdict"], "pass");
}

#[test]
fn mismatch_exit_code() {
    // the index-2 control of an exact case 3 witness does not exist at (3,2)
    let r = run_args(["verify", "--table", "T2", "--case", "3", "--m", "3", "--q", "2", "--negative-control"]);
    assert_eq!(r.code, EXIT_MISMATCH);
}

#[test]
fn t5_cases_past_four_read_as_t4() {
    let (code, out, err) = bin(&["verify", "--table", "T5", "--case", "36", "--format", "structured"]);
    assert_eq!(code, EXIT_PASS);
    assert!(err.contains("T4 case 36"));
    let v = json(&out);
    assert_eq!(v["records"][0]["label"], "T4/case36");
    assert_eq!(v["notices"].as_array().unwrap().len(), 1);
}

#[test]
fn parameter_lists_take_the_product() {
    let r = run_args(["verify", "--table", "T2", "--case", "1", "--n", "2,3", "--q", "2..3", "--format", "structured"]);
    assert_eq!(r.code, EXIT_PASS);
    let v = json(&r.text);
    let labels: Vec<&str> = v["records"].as_array().unwrap().iter().map(|x| x["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["T2/case1/n=2,q=2", "T2/case1/n=2,q=3", "T2/case1/n=3,q=2", "T2/case1/n=3,q=3"]);
    assert_eq!(v["summary"]["pass"], 4);
    assert_eq!(parse_list("5..7,9").unwrap(), vec![5, 6, 7, 9]);
    assert!(parse_list("7..5").is_err());
}

#[test]
fn structured_output_is_byte_identical() {
    let args = |jobs: &'static str| ["verify", "--all-tractable", "--table", "T5", "--format", "structured", "--jobs", jobs];
    let a = run_args(args("1"));
    let b = run_args(args("4"));
    assert_eq!(a.code, EXIT_PASS);
    assert_eq!(a.text, b.text);
    let v = json(&a.text);
    assert_eq!(v["schema"], "factoriza-report/1");
    assert!(v["records"].as_array().unwrap().iter().all(|r| r["report"]["elapsed_ms"] == 0));
}

#[test]
fn timings_are_opt_in() {
    let r = run_args(["verify", "--table", "T2", "--case", "9", "--q", "3", "--timings", "--format", "structured"]);
    let rec = &json(&r.text)["records"][0];
    assert!(rec["build_ms"].as_u64().unwrap() > 0);
    assert!(rec["report"]["elapsed_ms"].as_u64().unwrap() > 0);
    let r = run_args(["verify", "--table", "T2", "--case", "9", "--q", "3", "--format", "structured"]);
    let rec = &json(&r.text)["records"][0];
    assert_eq!((rec["build_ms"].as_u64(), rec["report"]["elapsed_ms"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn seed_flag_beats_environment() {
    let run = |extra: &[&str], env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_factoriza"));
        c.args(["verify", "--table", "T4", "--case", "36", "--format", "structured"]).args(extra);
        match env {
            Some(s) => c.env("FACTORIZA_SEED", s),
            None => c.env_remove("FACTORIZA_SEED"),
        };
        json(&String::from_utf8(c.output().unwrap().stdout).unwrap())["config"]["seed"].as_u64().unwrap()
    };
    assert_eq!(run(&[], None), 0);
    assert_eq!(run(&[], Some("7")), 7);
    assert_eq!(run(&["--seed", "3"], Some("7")), 3);
}

#[test]
fn search_regular_names_the_classes() {
    let r = run_args(["search-regular", "--group", "psp43-27", "--nilpotent-only", "--format", "structured"]);
    assert_eq!(r.code, EXIT_PASS);
    let v = json(&r.text);
    let classes: Vec<(String, String)> = v["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["extraspecial"].as_str().unwrap().to_string()))
        .collect();
    assert_eq!(classes, [("3^(1+2)+".to_string(), "plus".to_string()), ("3^(1+2)-".to_string(), "minus".to_string())]);
}

#[test]
fn report_and_tables() {
    let r = run_args(["report", "--format", "structured"]);
    assert_eq!(r.code, EXIT_PASS);
    let v = json(&r.text);
    let rows: Vec<u64> = v["coverage"].as_array().unwrap().iter().map(|c| c["rows"].as_u64().unwrap()).collect();
    assert_eq!(rows, [9, 9, 25, 47, 4, 28, 12]);
    assert!(v["order_arithmetic"].as_array().unwrap().iter().all(|o| o["check"]["consistent"] == true));
    let t = run_args(["tables", "--table", "T6", "--format", "structured"]);
    assert_eq!(json(&t.text)["rows"].as_array().unwrap().len(), 28);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("factoriza-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let r = run_args(["verify", "--table", "T4", "--case", "36", "--format", "structured", "--output", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_PASS);
    assert!(r.text.is_empty());
    assert_eq!(json(&std::fs::read_to_string(&path).unwrap())["summary"]["pass"], 1);
    std::fs::remove_dir_all(dir).unwrap();
}
