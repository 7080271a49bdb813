use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muirhead-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn statuses(v: &Value) -> Vec<String> {
    v["items"]
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["status"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn components_for_m3() {
    let out = run(&["charvar", "components", "--m", "3", "--out", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["items"][0]["data"]["count"], 15);
    assert_eq!(v["items"][1]["data"].as_array().unwrap().len(), 15);
}

#[test]
fn rank_for_m5() {
    let out = run(&["muirhead", "rank", "--m", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["items"][0]["data"]["rank"]["value"], 32);
}

#[test]
fn verify_all_passes() {
    let out = run(&["verify-all", "--m", "2", "--degree", "6"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let v = json(&out);
    let st = statuses(&v);
    assert_eq!(st.len(), 12);
    assert!(st.iter().all(|s| s == "pass"), "{st:?}");
}

#[test]
fn json_is_byte_stable() {
    let args = ["restriction", "hr", "--m", "2", "--s", "1"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn golden_round_trip() {
    let dir =
        PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("golden-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    let d = dir.to_str().unwrap();
    let args = ["zonal", "--m", "2", "--degree", "3", "--golden", d];
    let first = json(&run(&args));
    assert_eq!(statuses(&first).last().unwrap(), "info");
    let second = run(&args);
    assert_eq!(second.status.code(), Some(0));
    assert_eq!(statuses(&json(&second)).last().unwrap(), "pass");

    let file = std::fs::read_dir(&dir)
        .unwrap()
        .next()
        .unwrap()
        .unwrap()
        .path();
    let stored = std::fs::read_to_string(&file).unwrap();
    std::fs::write(
        &file,
        stored.replacen("\"version\": 1", "\"version\": 9", 1),
    )
    .unwrap();
    let third = run(&args);
    assert_eq!(third.status.code(), Some(1));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["muirhead", "rank"]).status.code(), Some(2));
    assert_eq!(
        run(&["muirhead", "rank", "--m", "2", "--c", "x/y"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn library_input_errors_exit_2() {
    // c = 1/2 is excluded for m = 2
    let out = run(&["series", "--m", "2", "--degree", "2", "--spec", "c=1/2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parameter"));
    let out = run(&["solutions", "kernel", "--m", "3", "--at", "1,2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn text_report() {
    let out = run(&[
        "solutions",
        "kernel",
        "--m",
        "2",
        "--at",
        "1,1",
        "--out",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] diagonal point"));
    assert!(text.contains("x1^2 + 6*x1*x2 + x2^2"));
    assert!(text.trim_end().ends_with("ok"));
}

#[test]
fn series_value() {
    let out = run(&[
        "series",
        "--m",
        "2",
        "--degree",
        "2",
        "--spec",
        "a=1/3,c=5/7",
        "--eval",
        "x=1/2,1/4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["items"][3]["data"]["value"], "3607/2592");
}
