use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn cm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compmachine"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("compmachine-{}-{name}", std::process::id()));
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn validate_accepts_fixtures() {
    for f in ["example1.json", "example2.json", "walkthrough.json"] {
        let o = cm(&["validate", &fixture(f)]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), "OK\n");
    }
}

#[test]
fn validate_reports_violations() {
    let text = std::fs::read_to_string(fixture("example1.json"))
        .unwrap()
        .replacen("\"target\": \"x2\"", "\"target\": \"x1\"", 1);
    let p = scratch("loop.json", &text);
    let o = cm(&["validate", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Loop"));
}

#[test]
fn exit_codes() {
    let ex1 = fixture("example1.json");
    let wt = fixture("walkthrough.json");
    assert_eq!(code(&cm(&["validate", "/nonexistent/machine.json"])), 1);
    let bad = scratch("garbage.json", "{ not json");
    assert_eq!(code(&cm(&["validate", bad.to_str().unwrap()])), 1);
    assert_eq!(code(&cm(&["frobnicate"])), 64);
    assert_eq!(code(&cm(&["run", &ex1])), 64);
    assert_eq!(
        code(&cm(&["run", &ex1, "--steps", "2", "--initial", "101"])),
        64
    );
    assert_eq!(
        code(&cm(&[
            "run",
            &ex1,
            "--steps",
            "2",
            "--initial",
            "11011x1001"
        ])),
        64
    );
    assert_eq!(code(&cm(&["cycle", &ex1, "--max-steps", "0"])), 64);
    assert_eq!(code(&cm(&["space", &ex1, "--at", "1", "--maximal"])), 64);
    assert_eq!(code(&cm(&["--help"])), 0);
    // absent from the space at t=1: a1 is dead
    assert_eq!(
        code(&cm(&[
            "eval",
            &wt,
            "--morphism",
            "f2∘f1",
            "--input",
            "1",
            "--at",
            "1"
        ])),
        2
    );
    assert_eq!(
        code(&cm(&["eval", &wt, "--morphism", "f1∘f2", "--input", "1"])),
        2
    );
    assert_eq!(
        code(&cm(&["eval", &ex1, "--morphism", "f1", "--input", "1"])),
        2
    );
    assert_eq!(
        code(&cm(&["eval", &wt, "--morphism", "f9", "--input", "1"])),
        2
    );
}

#[test]
fn eval_runs_morphisms() {
    let wt = fixture("walkthrough.json");
    let o = cm(&[
        "eval",
        &wt,
        "--morphism",
        "f3∘f2∘f1",
        "--input",
        "3",
        "--at",
        "0",
    ]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "3:d4\n");
    let o = cm(&["eval", &wt, "--morphism", "f3.f2.f1", "--input", "-7"]);
    assert_eq!(stdout(&o), "-17:d4\n");
    let o = cm(&["eval", &wt, "--morphism", "id:d6", "--input", "42"]);
    assert_eq!(stdout(&o), "42:d6\n");
}

#[test]
fn cycle_output() {
    let o = cm(&["cycle", &fixture("example1.json")]);
    assert_eq!(stdout(&o), "{\"preperiod\": 5, \"period\": 4}\n");
    let o = cm(&["cycle", &fixture("example2.json")]);
    assert_eq!(stdout(&o), "{\"preperiod\": 2, \"period\": 6}\n");
    let o = cm(&["cycle", &fixture("example1.json"), "--max-steps", "8"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "no cycle found within 8 steps\n");
}

#[test]
fn run_reports_json() {
    let o = cm(&["run", &fixture("example1.json"), "--steps", "12"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["steps"], 12);
    let configs = v["configurations"].as_array().unwrap();
    assert_eq!(configs.len(), 13);
    assert_eq!(configs[0], "1101101001");
    assert_eq!(configs[5], configs[9]);
    assert_eq!(v["cycle"]["preperiod"], 5);
    assert_eq!(v["cycle"]["period"], 4);
    assert_eq!(v["space_stats"].as_array().unwrap().len(), 13);

    let o = cm(&[
        "run",
        &fixture("example1.json"),
        "--steps",
        "1",
        "--initial",
        "0000000000",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // only the isolated arrow a7 has a unary rule, NOT
    assert_eq!(v["configurations"][1], "0000001000");
}

#[test]
fn diagram_lines() {
    let o = cm(&["diagram", &fixture("example2.json"), "--steps", "4"]);
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "t=0\t1101101001");
    assert_eq!(lines[1], "t=1\t1111111011");
    assert_eq!(lines[4], "t=4\t1111111111");
    for (t, l) in lines.iter().enumerate() {
        let (head, bits) = l.split_once('\t').unwrap();
        assert_eq!(head, format!("t={t}"));
        assert_eq!(bits.len(), 10);
    }
}

#[test]
fn fully_alive_space_is_maximal() {
    let ex2 = fixture("example2.json");
    let at4 = cm(&["space", &ex2, "--at", "4", "--format", "text"]);
    let top = cm(&["space", &ex2, "--maximal", "--format", "text"]);
    assert_eq!(code(&at4), 0);
    assert_eq!(at4.stdout, top.stdout);
    assert_ne!(cm(&["space", &ex2, "--at", "3"]).stdout, top.stdout);
}

#[test]
fn space_formats() {
    let wt = fixture("walkthrough.json");
    let dot = stdout(&cm(&["space", &wt, "--format", "dot"]));
    assert!(dot.starts_with("digraph space {\n"));
    assert_eq!(dot.matches(" -> ").count(), 10);
    assert_eq!(dot.matches("dashed").count(), 4);
    let json: serde_json::Value =
        serde_json::from_slice(&cm(&["space", &wt, "--format", "json"]).stdout).unwrap();
    assert_eq!(json["stats"]["total"], 18);
    assert_eq!(json["morphisms"].as_array().unwrap().len(), 18);
}

#[test]
fn outputs_are_deterministic() {
    let ex1 = fixture("example1.json");
    for args in [
        vec!["space", ex1.as_str(), "--maximal", "--format", "dot"],
        vec!["space", ex1.as_str(), "--at", "2", "--format", "dot"],
        vec!["diagram", ex1.as_str(), "--steps", "20"],
        vec!["run", ex1.as_str(), "--steps", "20"],
    ] {
        assert_eq!(cm(&args).stdout, cm(&args).stdout);
    }
}

#[test]
fn save_and_reload_is_idempotent() {
    use composition_machine::{load_machine, machine_to_json};
    for f in ["example1.json", "example2.json", "walkthrough.json"] {
        let m = load_machine(fixture(f)).unwrap();
        let first = machine_to_json(&m);
        let p = scratch(&format!("rt-{f}"), &first);
        let m2 = load_machine(&p).unwrap();
        let second = machine_to_json(&m2);
        assert_eq!(first, second);
        assert_eq!(code(&cm(&["validate", p.to_str().unwrap()])), 0);
        assert_eq!(
            cm(&["diagram", p.to_str().unwrap(), "--steps", "10"]).stdout,
            cm(&["diagram", &fixture(f), "--steps", "10"]).stdout
        );
    }
}
