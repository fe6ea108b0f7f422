use std::process::{Command, Output};

fn weylkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weylkit")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn composition_suite_passes() {
    let o = weylkit(&["suite", "--name", "composition", "--ring", "zmod:97", "--trials", "200", "--seed", "42"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn injected_mutation_exits_one_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = weylkit(&[
        "suite", "--name", "composition", "--ring", "zmod:97", "--trials", "50", "--seed", "42",
        "--inject-mutation", "--json", path.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 1);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let failed: Vec<_> = report["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_array()));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&weylkit(&["suite", "--name", "nope"])), 2);
    assert_eq!(code(&weylkit(&["suite", "--name", "composition", "--ring", "zmod:0"])), 2);
    assert_eq!(code(&weylkit(&["suite", "--name", "composition", "--ring", "reals"])), 2);
    assert_eq!(code(&weylkit(&["weyl", "--realization", "sl:9", "--x", "1"])), 2);
    assert_eq!(code(&weylkit(&["grading", "--index", "B", "--params", "0"])), 2);
}

#[test]
fn weyl_sl1_suite_checks_the_square() {
    let o = weylkit(&["suite", "--name", "weyl:sl:1", "--ring", "rat", "--trials", "50", "--seed", "7"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.contains("pass  sl:1: w^2 = coroot(-1)"), "{out}");
}

#[test]
fn json_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = ["a.json", "b.json"].iter().map(|n| dir.path().join(n)).collect();
    for p in &paths {
        let o = weylkit(&[
            "suite", "--name", "weyl", "--realization", "sp:2", "--ring", "zmod:97", "--trials", "5", "--seed", "9",
            "--json", p.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn weyl_command_reports_the_ultrashort_square() {
    let o = weylkit(&["weyl", "--realization", "sl3bc1", "--ring", "rat", "--x", "1,2,5"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["w_squared"], "[[2/3, 0, 0], [0, 9/4, 0], [0, 0, 2/3]]");
    assert_eq!(v["square_central"], false);
}

#[test]
fn weyl_command_sl2() {
    let o = weylkit(&["weyl", "--realization", "sl:2", "--ring", "zmod:97", "--x", "1,2;0,1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["w_squared"], v["coroot_minus_one"]);
    assert_eq!(v["is_weyl"], true);
    assert_eq!(v["square_central"], true);
}

#[test]
fn grading_command() {
    let o = weylkit(&["grading", "--index", "E7"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["layers"], serde_json::json!({"-1": 27, "0": 72, "1": 27}));
    assert_eq!(v["lemma3"]["pass"], true);
}

#[test]
fn e7_command_applies_a_word() {
    let mut v = vec!["0"; 57];
    v[0] = "1";
    let vector = v.join(",");
    let o = weylkit(&["e7", "--ring", "rat", "--action", "d:2", "--vector", &vector]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8_lossy(&o.stdout);
    assert!(out.starts_with("(r: "), "{out}");
}

#[test]
fn validate_e6_accepts_identity_and_rejects_a_scaling() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, diag: &str| {
        let text: String = (0..27)
            .map(|i| (0..27).map(|j| if i == j { diag } else { "0" }).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        let p = dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let id = write("id.txt", "1");
    let twice = write("twice.txt", "2");
    assert_eq!(code(&weylkit(&["validate-e6", "--matrix", id.to_str().unwrap()])), 0);
    assert_eq!(code(&weylkit(&["validate-e6", "--matrix", twice.to_str().unwrap()])), 1);
}
