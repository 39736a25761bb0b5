use std::process::{Command, Output};

const U12: &str = r#"{"type":"uniform","rank":1,"n":2}"#;
const U22: &str = r#"{"type":"uniform","rank":2,"n":2}"#;
const K3: &str = r#"{"type":"graphic","vertices":3,"edges":[[1,2],[2,3],[1,3]]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_potts-hodge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn eval_rank_strata() {
    let o = run(&["eval", U12, "--k", "2", "--q", "1", "--w", "1,1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o).trim(), "1");
    let o = run(&["eval", K3, "--k", "0"]);
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn eval_rejects_bad_q() {
    let o = run(&["eval", U12, "--q", "0"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid parameters"));
    assert_eq!(code(&run(&["eval", U12, "--q", "0.5"])), 2);
    let o = run(&["eval", U12, "--q", "0.5", "--mode", "float", "--json"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn eval_weighted_and_json() {
    let o = run(&["eval", U12, "--q", "1/3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], "10");
    let o = run(&["eval", U12, "--q", "1/2", "--w", "1,1,1", "--alpha", "1,0,0"]);
    assert_eq!(stdout(&o).trim(), "6");
}

#[test]
fn spectrum_examples() {
    let o = run(&["spectrum", U12, "--q", "1", "--w", "1,1,1", "--c", "1,1,1"]);
    let out = stdout(&o);
    assert!(out.starts_with("(1,1,1)"), "{out}");
    assert!(out.contains("3.000000") && out.contains("-1.000000"));
    let o = run(&["spectrum", U22, "--q", "1", "--w", "1,1,1", "--c", "1,1,1"]);
    assert!(stdout(&o).starts_with("(1,1,1)"));
    let o = run(&["spectrum", U22, "--alpha", "0,2,0"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("identically zero"));
}

#[test]
fn hessian_json() {
    let o = run(&["hessian", U12, "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 3);
}

#[test]
fn verify_single_matroid() {
    let o = run(&["verify", U12, "--theorem", "qHR", "--q-grid", "1"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let o = run(&["verify", U12, "--theorem", "qHR", "--q-grid", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["checks"][0]["annotations"]
        .as_array()
        .unwrap()
        .iter()
        .any(|a| a.as_str().unwrap().contains("singular")));
}

#[test]
fn verify_rejects_non_log_concave_c() {
    let o = run(&["verify", U12, "--theorem", "cqHR", "--c", "1,1,1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("configuration error"));
}

#[test]
fn verify_mason_default_corpus() {
    let o = run(&["verify", "--theorem", "mason"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("mason"));
}

#[test]
fn verify_json_is_byte_stable_and_written() {
    let dir = std::env::temp_dir().join(format!("potts-hodge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args = [
        "verify",
        "uniform:max_n=3",
        "--theorem",
        "all",
        "--trials",
        "2",
        "--seed",
        "7",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ];
    let a = run(&args);
    let b = run(&["verify", "uniform:max_n=3", "--theorem", "all", "--trials", "2", "--seed", "7", "--json", "--workers", "1"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(written, stdout(&a));
    let csv_path = dir.join("report.csv");
    let o = run(&["verify", "uniform:max_n=2", "--theorem", "mason", "--out", csv_path.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    assert!(csv.starts_with("theorem,matroid,verdict,inputs,witness,annotations"));
    assert!(csv.lines().nth(1).unwrap().starts_with("mason,\"U(0,2)\",vacuous,"));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn matroid_errors_map_to_exit_codes() {
    let o = run(&["eval", r#"{"type":"rank_table","n":1,"ranks":[0,2]}"#]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a matroid"));
    let o = run(&["eval", "{\"type\":\"uniform\",\n\"rank\":1,}"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    let o = run(&["eval", r#"{"type":"uniform","rank":1,"n":25}"#]);
    assert_eq!(code(&o), 3);
    assert_eq!(code(&run(&["bogus"])), 2);
    assert_eq!(code(&run(&["verify", "--theorem", "nope"])), 2);
}

#[test]
fn cap_override_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_potts-hodge"))
        .args(["eval", r#"{"type":"uniform","rank":1,"n":6}"#])
        .env("POTTS_HODGE_MAX_N", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn corpus_and_mason_commands() {
    let o = run(&["corpus", "uniform:max_n=3"]);
    assert!(stdout(&o).contains("7 matroids"));
    let o = run(&["corpus", "graphic:K3", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 1);
    let o = run(&["mason", K3]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("[1,3,3,0]"));
    assert!(stdout(&o).contains("equality at k=1"));
}
