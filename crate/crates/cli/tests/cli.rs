use std::process::{Command, Output};

fn chowcfg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chowcfg")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn betti_csv() {
    let out = chowcfg(&["betti", "--m", "5", "--theta", "canonical", "--max-degree", "4", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "degree,dimension\n0,1\n1,5\n2,1\n3,0\n4,0\n");
}

#[test]
fn betti_json_lists_generators() {
    let out = chowcfg(&["betti", "--m", "6", "--theta", "theta-plus", "--max-degree", "4", "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["schema"], "chowcfg/1");
    assert_eq!(value["generators"].as_array().unwrap().len(), 15);
    assert_eq!(value["poincare"], serde_json::json!([1, 6, 6, 1]));
    assert_eq!(value["theta"]["weights"][0], "13/24");
}

#[test]
fn inline_weights_and_files() {
    let dir = std::env::temp_dir().join(format!("chowcfg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("theta.json");
    std::fs::write(&file, r#"{"m":4,"weights":["2/3","4/9","4/9","4/9"]}"#).unwrap();
    let from_file = chowcfg(&["betti", "--theta", file.to_str().unwrap(), "--max-degree", "3", "--output", "csv"]);
    let inline = chowcfg(&["betti", "--theta", "2/3,4/9,4/9,4/9", "--max-degree", "3", "--output", "csv"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(stdout(&from_file), "degree,dimension\n0,1\n1,1\n2,0\n3,0\n");
    assert_eq!(stdout(&from_file), stdout(&inline));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn distinguish_json_is_deterministic() {
    let args = ["distinguish", "--n", "3", "--seed", "7", "--output", "json"];
    let first = chowcfg(&args);
    let second = chowcfg(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let value: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(value["verdict"], "rings distinguished");
    assert_eq!(value["square_zero"]["witness"], serde_json::json!(["0/1", "1/1", "1/1", "1/1", "1/1", "0/1"]));
    assert_eq!(value["square_zero"]["certificate"]["cases"].as_array().unwrap().len(), 33);
}

#[test]
fn distinguish_n2_text() {
    let out = chowcfg(&["distinguish", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("verdict: inconclusive at this n"));
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_chowcfg"))
            .args(["distinguish", "--n", "3", "--seed", "5", "--output", "json"])
            .env("CHOWCFG_WORKERS", workers)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("0").status.code(), Some(2));
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn verify_suite() {
    let out = chowcfg(&["verify", "lemma-rs", "--m", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.ends_with("lemma-rs: all oracle identities hold\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("ok ") && l.ends_with(" us)")).count(), 64);
    let json = chowcfg(&["verify", "hilbert", "--output", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(value["passed"], true);
}

#[test]
fn relations_and_nilpotent() {
    let out = chowcfg(&["relations", "--m", "4", "--subset", "1", "3", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("R_{1,3,4} = X1*X3 + X1*X4 + X3*X4 + Y\n"));
    let out = chowcfg(&["nilpotent", "--theta", "theta-minus", "--witness", "0,1,1,1,1,0", "--output", "json"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["square_zero"], true);
    let out = chowcfg(&["nilpotent", "--theta", "theta-plus", "--witness", "0,1,1,1,1,0"]);
    assert!(stdout(&out).contains("square zero: false"));
}

#[test]
fn aut_check_factorizes() {
    let dir = std::env::temp_dir().join(format!("chowcfg-aut-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("matrix.json");
    std::fs::write(&file, r#"[["-2","0","0"],["0","2","0"],["0","0","2"]]"#).unwrap();
    let out = chowcfg(&["aut", "check", "--matrix", file.to_str().unwrap(), "--output", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["verdict"], "automorphism");
    assert_eq!(value["factorization"]["dilation"], "2/1");
    assert_eq!(value["factorization"]["signs"], serde_json::json!([-1, 1, 1]));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["betti", "--m", "5", "--theta", "nonsense", "--max-degree", "2"],
        vec!["betti", "--m", "6", "--theta", "theta-plus", "--epsilon", "1/0", "--max-degree", "2"],
        vec!["betti", "--m", "6", "--theta", "theta-plus", "--epsilon", "3/4", "--max-degree", "2"],
        vec!["betti", "--m", "30", "--theta", "canonical", "--max-degree", "2"],
        vec!["distinguish", "--n", "13"],
        vec!["verify", "no-such-suite"],
        vec!["stability", "--theta", "canonical", "--m", "5", "--output", "csv"],
        vec!["aut", "check", "--matrix", "/nonexistent/matrix.json"],
        vec!["betti"],
    ] {
        let out = chowcfg(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}
