//! CLI behavior: exit codes, JSON shape, determinism of single subcommands.

use std::process::Command;

fn figvi(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_figvi"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn exit_codes() {
    // 0: all checks pass
    let ok = figvi(&["morphisms", "--category", "fi", "--m", "1", "--n", "2"]);
    assert_eq!(ok.status.code(), Some(0));
    // 1: a check fails honestly (hbar below its threshold)
    let fail = figvi(&["pieri", "--partition", "2", "--add", "0", "--hbar-m", "2"]);
    assert_eq!(fail.status.code(), Some(1));
    // 2: usage errors
    let usage = figvi(&["no-such-command"]);
    assert_eq!(usage.status.code(), Some(2));
    let missing = figvi(&["morphisms", "--category", "vi", "--m", "0", "--n", "1"]);
    assert_eq!(missing.status.code(), Some(2), "vi requires --p");
    let bad_group = figvi(&["verify-fig", "--group", "d4", "--m", "0", "--trunc", "2"]);
    assert_eq!(bad_group.status.code(), Some(2));
}

#[test]
fn morphisms_json_shape() {
    let out = figvi(&["morphisms", "--category", "vi", "--p", "2", "--m", "1", "--n", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["v"], "v1");
    assert_eq!(doc["command"], "morphisms");
    assert_eq!(doc["results"]["count"], 3);
    assert_eq!(doc["pass"], true);
    let fi = figvi(&["morphisms", "--category", "fi", "--m", "1", "--n", "2"]);
    let doc_fi: serde_json::Value = serde_json::from_slice(&fi.stdout).unwrap();
    assert_eq!(doc_fi["results"]["count"], 2);
}

#[test]
fn verify_fig_passes() {
    let out = figvi(&["verify-fig", "--group", "z2", "--m", "1", "--trunc", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], true);
}

#[test]
fn charp_verdicts() {
    let out = figvi(&["charp", "--p", "2", "--trunc", "3"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"]["split_dim_fp"], 0);
    assert!(doc["results"]["split_dim_q"].as_u64().unwrap() > 0);
    assert_eq!(doc["results"]["u_dims"], serde_json::json!([0, 0, 1, 3]));
}

#[test]
fn single_command_determinism_and_out_file() {
    let args = [
        "coind", "--category", "vi", "--p", "2", "--m", "0", "--trunc", "3", "--compare-hom",
    ];
    let a = figvi(&args);
    let b = figvi(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical reruns");
    // --out writes the same document
    let path = std::env::temp_dir().join("figvi_coind_test.json");
    let mut with_out: Vec<&str> = args.to_vec();
    let path_str = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &path_str]);
    let c = figvi(&with_out);
    assert!(c.status.success());
    let file = std::fs::read(&path).unwrap();
    let stdout_str = String::from_utf8(c.stdout).unwrap();
    assert_eq!(stdout_str.trim_end(), String::from_utf8(file).unwrap());
    std::fs::remove_file(&path).ok();
}

#[test]
fn verify_vi_passes() {
    let out = figvi(&["verify-vi", "--p", "3", "--m", "0", "--trunc", "2"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["pass"], true);
    // dims of Q and the target are reported
    assert_eq!(doc["results"]["dims"][0], serde_json::json!([1, 5]));
}

#[test]
fn stability_subcommand() {
    let out = figvi(&["stability", "--group", "z2", "--m", "1", "--from", "2", "--to", "4"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["results"]["rs3"]["stable_from"], 2);
}
