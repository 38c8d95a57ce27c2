use std::io::Write;
use std::process::{Command, Output, Stdio};

fn atlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atlas")).args(args).output().unwrap()
}

fn atlas_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn short_and_long_forms_agree() {
    let a = atlas(&["classify", "-15,-22", "--json"]);
    let b = atlas(&["classify", "0,0,0,-15,-22", "--json"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn rational_coefficients_accepted() {
    let o = atlas(&["classify", "0,-27/4"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn malformed_and_singular_inputs() {
    let o = atlas(&["classify", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("expected 2 or 5 coefficients"));
    let o = atlas(&["classify", "-3,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("discriminant 0"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(atlas(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(atlas(&["verify", "--check", "lemma99"]).status.code(), Some(2));
    assert_eq!(atlas(&["family", "6"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    let o = atlas(&["family", "11", "1", "0", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("invalid level 11"));
    assert_eq!(atlas(&["fricke", "2", "1", "0"]).status.code(), Some(1));
    assert_eq!(atlas(&["semistable-twist", "2,0"]).status.code(), Some(1));
}

#[test]
fn family_and_fricke_values() {
    assert_eq!(stdout(&atlas(&["family", "6", "1", "-6", "-1"])), "-19440,-1026432\n");
    assert_eq!(stdout(&atlas(&["fricke", "6", "1", "-6"])), "54000\n");
    assert_eq!(stdout(&atlas(&["sporadic", "19", "2", "1"])), "-608,5776\n");
}

#[test]
fn graph_output() {
    let text = stdout(&atlas(&["graph", "27"]));
    assert!(text.contains("  1 3 9 27\n"));
    let dot = stdout(&atlas(&["graph", "6", "--dot"]));
    assert!(dot.starts_with("graph isogeny_class_n6 {\n"));
    assert_eq!(dot.matches(" -- ").count(), 4);
}

#[test]
fn dot_and_minimal() {
    let dot = stdout(&atlas(&["classify", "-15,-22", "--dot"]));
    assert!(dot.contains("  1 -- 2 [label=2];"));
    let min = stdout(&atlas(&["classify", "-15,-22", "--minimal"]));
    assert!(min.contains("C_{6,2}: 0,-1\n"), "{min}");
}

#[test]
fn emitted_members_are_valid_input() {
    for input in ["-15,-22", "0,16", "-1,0", "1,0,1,4,-6"] {
        let out = stdout(&atlas(&["classify", input, "--json"]));
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for m in v["members"].as_array().unwrap() {
            let text = match m.get("A") {
                Some(a) => format!("{},{}", a.as_str().unwrap(), m["B"].as_str().unwrap()),
                None => m["a"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect::<Vec<_>>().join(","),
            };
            assert!(atlas(&["classify", &text]).status.success(), "{text}");
        }
    }
}

#[test]
fn batch_mode_keeps_order() {
    let o = atlas_stdin(&["classify", "--stdin", "--json"], "-15,-22\n# comment\n\n0,0\n1,1\n");
    assert_eq!(o.status.code(), Some(1));
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["n"], 6);
    assert_eq!(lines[1]["input"], "0,0");
    assert_eq!(lines[2]["n"], 1);
    let ok = atlas_stdin(&["semistable-twist", "--stdin"], "-15,-22\n");
    assert!(ok.status.success());
    assert_eq!(stdout(&ok), "# -15,-22\nd: -1\nmodel: -15,22\n");
}

#[test]
fn isogenies_algorithm_one() {
    let o = atlas(&["isogenies", "-15,-22", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("t: "));
    assert_eq!(stdout(&atlas(&["isogenies", "-15,-22", "5"])), "");
}

#[test]
fn verify_single_check() {
    let o = atlas(&["verify", "--check", "lemma41", "--samples", "5", "--seed", "3"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("# prop31_j"));
    assert!(text.contains("lemma41           pass"));
}

#[test]
fn verify_writes_jsonl() {
    let path = std::env::temp_dir().join(format!("atlas-cli-{}.jsonl", std::process::id()));
    let o = atlas(&["verify", "--check", "lemma44", "--jsonl", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["check"], "lemma44");
    assert_eq!(v["status"], "pass");
    std::fs::remove_file(path).ok();
}

#[test]
fn fixture_override_from_env() {
    let dir = std::env::temp_dir().join(format!("atlas-cli-fx-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("families.json"), "[]").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_atlas")).args(["graph", "6"]).env("ATLAS_FIXTURE_DIR", &dir).output().unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("fixture error"));
    std::fs::remove_dir_all(dir).ok();
}
