use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

use fuzzy_doxastic::model::load_model;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn fdl(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fdl"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let (code, stdout, stderr) = fdl(&all);
    let v = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, v)
}

#[test]
fn eval_golden() {
    let m1 = fixture("m1.json");
    assert_eq!(
        fdl(&["eval", &m1, "s0", "B{a} p"]),
        (0, "4/5 (0.8)\n".into(), String::new())
    );
    assert_eq!(fdl(&["eval", &m1, "s0", "bot"]).1, "0/1 (0)\n");
    let cpa2 = fixture("cpa2.json");
    assert_eq!(
        fdl(&["eval", &cpa2, "s11", "S{a} p", "--variant", "source"]).1,
        "1/1 (1)\n"
    );
    assert_eq!(
        fdl(&[
            "--variant",
            "target",
            "eval",
            &m1,
            "s0",
            "S{a} p -> S{a} S{a} p"
        ])
        .1,
        "193/250 (0.772)\n"
    );
    let (code, v) = json(&["eval", &m1, "s0", "B{a} B{a} p"]);
    assert_eq!(
        (code, v["value"].as_str(), v["decimal"].as_str()),
        (0, Some("7/10"), Some("0.7"))
    );
}

#[test]
fn frame_exit_codes() {
    let m1 = fixture("m1.json");
    let (code, out, _) = fdl(&["frame", &m1, "transitive"]);
    assert_eq!(
        (code, out.as_str()),
        (1, "transitive: fails at (a, s0, s1, s2)\n")
    );
    let (code, v) = json(&["frame", &m1, "recognizable"]);
    assert_eq!(code, 1);
    assert_eq!(v["witness"]["states"], serde_json::json!(["s0", "s0"]));
    assert_eq!(fdl(&["frame", &fixture("cpa2.json"), "r-crisp"]).0, 0);
}

#[test]
fn valid_exit_codes() {
    let m1 = fixture("m1.json");
    let (code, v) = json(&["valid", &m1, "B{a} p -> B{a} B{a} p"]);
    assert_eq!(
        (code, v["min_value"].as_str(), v["argmin_state"].as_str()),
        (1, Some("9/10"), Some("s0"))
    );
    assert_eq!(fdl(&["valid", &m1, "p -> p"]).0, 0);
}

#[test]
fn search_finds_and_saves_counterexamples() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("cex.json");
    let out_s = out.display().to_string();
    let (code, v) = json(&[
        "--seed",
        "3",
        "--trials",
        "200",
        "search",
        "B ?phi -> ?phi",
        "--out",
        &out_s,
    ]);
    assert_eq!(code, 1);
    let saved = load_model(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(load_model(&v["model"].to_string()).unwrap(), saved);
    let (code, v) = json(&[
        "--trials",
        "50",
        "search",
        "!B bot",
        "--constrain",
        "serial",
    ]);
    assert_eq!((code, v["found"].as_bool()), (0, Some(false)));
    let (code, _, err) = fdl(&["search", "!B bot", "--constrain", "serial,recognizable"]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn prove_exit_codes() {
    assert_eq!(
        fdl(&["prove", &fixture("derivations/conj_intro.json")]).0,
        0
    );
    let (code, v) = json(&["prove", &fixture("derivations/gen_premise.json")]);
    assert_eq!(code, 1);
    assert_eq!(
        v["lines"][1]["message"].as_str(),
        Some("generalization over premise-dependent line")
    );
}

#[test]
fn scenario_then_cpastat() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out.json").display().to_string();
    assert_eq!(
        fdl(&["scenario", "cpa", &fixture("cpa2_config.json"), &out]).0,
        0
    );
    assert_eq!(fdl(&["cpastat", &out]), (0, "1/4\n".into(), String::new()));
    let (_, v) = json(&["cpastat", &fixture("cpa2_config.json")]);
    assert_eq!(
        (v["count_above"].as_u64(), v["ratio"].as_str()),
        (Some(1), Some("1/4"))
    );
    let (code, stdout, _) = fdl(&["scenario", "muddy", &fixture("muddy.json")]);
    assert_eq!(code, 0);
    assert_eq!(load_model(&stdout).unwrap().num_states(), 9);
}

#[test]
fn sweep_exit_codes() {
    assert_eq!(fdl(&["cpastat", "--sweep", "4..10"]).0, 0);
    let (code, v) = json(&["cpastat", "--sweep", "2..12"]);
    assert_eq!((code, v["all_pass"].as_bool()), (1, Some(false)));
    assert_eq!(fdl(&["cpastat", "--sweep", "4..40", "--analytic"]).0, 0);
}

#[test]
fn input_errors_exit_two() {
    let m1 = fixture("m1.json");
    for args in [
        vec!["eval", m1.as_str(), "s0", "B{a} p &"],
        vec!["eval", m1.as_str(), "s9", "p"],
        vec!["eval", "/no/such/file.json", "s0", "p"],
        vec!["frame", m1.as_str(), "euclidean"],
        vec!["prove", m1.as_str()],
        vec!["scenario", "cpa", m1.as_str()],
        vec!["cpastat", fixture("muddy.json").as_str()],
        vec!["bogus"],
    ] {
        let (code, _, err) = fdl(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty());
    }
}
