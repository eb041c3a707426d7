use std::path::Path;
use std::process::{Command, Output};

fn sgchroma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sgchroma")).args(args).output().expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn generate_then_colour() {
    let dir = tempfile::tempdir().unwrap();
    let out = sgchroma(&["generate", "tilde:cycle:5"]);
    assert!(out.status.success());
    let file = write(dir.path(), "c5.txt", &String::from_utf8(out.stdout).unwrap());
    assert_eq!(json(&sgchroma(&["chib", &file]))["chi_b"], 3);
    assert_eq!(json(&sgchroma(&["chifb", &file]))["chi_fb"], "5/2");
    assert_eq!(json(&sgchroma(&["balance", &file]))["balanced"], false);
    assert_eq!(json(&sgchroma(&["parse", &file]))["m"], 10);
}

#[test]
fn minors_and_dichotomy() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = write(dir.path(), "k4.txt", &String::from_utf8(sgchroma(&["generate", "complete:4"]).stdout).unwrap());
    assert_eq!(json(&sgchroma(&["minor", "--pattern", "evenodd:3", &k4]))["found"], false);
    let tri = write(dir.path(), "tri.txt", "3 3\n0 1 -\n1 2 -\n0 2 -\n");
    let m = json(&sgchroma(&["minor", "--pattern", "ktilde:2", &tri]));
    assert_eq!(m["found"], true);
    assert_eq!(m["verdict"]["verdict"], "valid");
    assert_eq!(json(&sgchroma(&["minor", "--pattern", "subdivision:2", &tri]))["found"], true);
    let h_tri = write(dir.path(), "htri.txt", "3 3\n0 1 +\n1 2 -\n0 2 +\n");
    let d = json(&sgchroma(&["dichotomy", &h_tri, "--H", "0,1", "--k", "1"]));
    assert_eq!(d["verdict"]["verdict"], "valid");
    assert_eq!(d["certificate"]["result"]["paths"][0]["vertices"], serde_json::json!([0, 2, 1]));
    // H joined only by a negative edge breaks the precondition
    assert_eq!(sgchroma(&["dichotomy", &tri, "--H", "0,1", "--k", "1"]).status.code(), Some(1));
    let q = json(&sgchroma(&["quotient", &tri]));
    assert_eq!(q["verdict"]["verdict"], "valid");
}

#[test]
fn scan_formats_and_determinism() {
    let args = ["scan", "--check", "signed-hadwiger", "--t", "2", "--n", "4", "--format", "csv"];
    let a = sgchroma(&args);
    let b = sgchroma(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let csv = String::from_utf8(a.stdout).unwrap();
    assert!(csv.starts_with("check,t,n,graphs,counterexamples"));
    let one = Command::new(env!("CARGO_BIN_EXE_sgchroma"))
        .args(["scan", "--check", "spanning-balanced", "--t", "0", "--n", "20", "--seed", "3", "--count", "200", "--format", "json"])
        .env("SGCHROMA_THREADS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_sgchroma"))
        .args(["scan", "--check", "spanning-balanced", "--t", "0", "--n", "20", "--seed", "3", "--count", "200", "--format", "json"])
        .env("SGCHROMA_THREADS", "3")
        .output()
        .unwrap();
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(json(&one)["label"], "bounded-order estimates");
}

#[test]
fn checkpointed_scan_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck.json");
    let ck = ck.to_str().unwrap();
    let args = ["scan", "--check", "tilde-identity", "--t", "0", "--n", "5", "--format", "json", "--checkpoint", ck];
    let first = sgchroma(&args);
    let second = sgchroma(&args);
    assert_eq!(json(&first), json(&second));
}

#[test]
fn exit_codes() {
    assert_eq!(sgchroma(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(sgchroma(&["scan", "--check", "nope", "--t", "1", "--n", "3"]).status.code(), Some(1));
    assert_eq!(sgchroma(&["scan", "--check", "signed-hadwiger", "--t", "2", "--n", "9"]).status.code(), Some(1));
    assert_eq!(sgchroma(&["chib", "/nonexistent/graph.txt"]).status.code(), Some(1));
    assert_eq!(sgchroma(&["minor", "--pattern", "ktilde", "/dev/null"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "2 1\n0 5 +\n");
    let out = sgchroma(&["parse", &bad]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    assert_eq!(sgchroma(&["--help"]).status.code(), Some(0));
}
