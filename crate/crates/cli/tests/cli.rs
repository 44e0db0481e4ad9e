use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn matchkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_matchkit")).args(args).env_remove("MATCHKIT_BUDGET").output().unwrap()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn ok(args: &[&str]) -> Value {
    let out = matchkit(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["schema"], 1);
    v
}

fn gadget(dir: &TempDir, file: &str, extra: &[&str]) -> PathBuf {
    let path = dir.path().join(file);
    let mut args = vec!["gadget"];
    args.extend_from_slice(extra);
    args.extend(["--out", path.to_str().unwrap()]);
    ok(&args);
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn count_gk3_with_cograph_dp() {
    let dir = TempDir::new().unwrap();
    let gk3 = gadget(&dir, "gk3.el", &["--family", "gk", "--k", "3"]);
    let v = ok(&["count", "--graph", s(&gk3), "--algorithm", "cograph"]);
    assert_eq!(v["count"], "53");
    assert_eq!(v["method"], "cograph");
    let p = ok(&["count", "--graph", s(&gk3), "--profile"]);
    assert_eq!(p["profile"].as_array().unwrap().last().unwrap(), "53");
    for alg in ["auto", "treewidth", "brute"] {
        assert_eq!(ok(&["count", "--graph", s(&gk3), "--algorithm", alg])["count"], "53", "{alg}");
    }
}

#[test]
fn count_with_decomposition_file() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("c6.el");
    std::fs::write(&g, "6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n").unwrap();
    let td = dir.path().join("c6.td");
    std::fs::write(&td, "s td 4 3 6\nb 1 1 2 6\nb 2 2 3 6\nb 3 3 5 6\nb 4 3 4 5\n1 2\n2 3\n3 4\n").unwrap();
    let v = ok(&["count", "--graph", s(&g), "--algorithm", "treewidth", "--td", s(&td)]);
    assert_eq!((v["count"].as_str(), v["width"].as_u64()), (Some("2"), Some(2)));
    std::fs::write(&td, "s td 2 2 6\nb 1 1 2\nb 2 3 4\n1 2\n").unwrap();
    let out = matchkit(&["count", "--graph", s(&g), "--td", s(&td)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json_of(&out)["error"]["kind"], "invalid_decomposition");
}

#[test]
fn recognize_fig7_is_not_switchable() {
    let dir = TempDir::new().unwrap();
    let fig7 = gadget(&dir, "fig7.el", &["--family", "fixture", "--name", "fig7_cograph"]);
    let v = ok(&["recognize", "--graph", s(&fig7), "--class", "switchable"]);
    assert_eq!(v["member"], false);
    assert_eq!(v["witness"]["kind"], "cycle");
    let cyc: Vec<u64> = v["witness"]["vertices"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert!(cyc.len() >= 6 && cyc.iter().all(|&x| (1..=6).contains(&x)));
    assert_eq!(ok(&["recognize", "--graph", s(&fig7), "--class", "cograph"])["member"], true);
}

#[test]
fn recognize_every_class() {
    let dir = TempDir::new().unwrap();
    let ml8 = gadget(&dir, "ml8.el", &["--family", "mobius", "--k", "8"]);
    let expect = [
        ("och", false),
        ("switchable", true),
        ("qmon", false),
        ("mono", false),
        ("chains", false),
        ("quachains", false),
        ("cograph", false),
        ("cochain", false),
    ];
    for (class, member) in expect {
        let v = ok(&["recognize", "--graph", s(&ml8), "--class", class]);
        assert_eq!(v["member"], member, "{class}");
        assert_eq!(v.get("witness").is_some(), !member, "{class}");
    }
}

#[test]
fn web2_transition_graph_is_ergodic() {
    let dir = TempDir::new().unwrap();
    let web2 = gadget(&dir, "web2.el", &["--family", "web", "--k", "2"]);
    let v = ok(&["tgraph", "analyze", "--graph", s(&web2)]);
    assert_eq!(v["ergodic"], true);
    assert_eq!(v["components"], 1);
    let tg = dir.path().join("tg.json");
    let b = ok(&["tgraph", "build", "--graph", s(&web2), "--out", s(&tg)]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&tg).unwrap()).unwrap();
    assert_eq!(doc["nodes"].as_array().unwrap().len() as u64, b["num_matchings"].as_u64().unwrap());
    assert_eq!(doc["edges"].as_array().unwrap().len() as u64, v["num_edges"].as_u64().unwrap());
}

#[test]
fn annulus_is_not_ergodic() {
    let dir = TempDir::new().unwrap();
    let g = gadget(&dir, "annulus.el", &["--family", "annulus"]);
    let v = ok(&["tgraph", "analyze", "--graph", s(&g)]);
    assert_eq!((v["ergodic"].as_bool(), v["components"].as_u64()), (Some(false), Some(3)));
    assert!(v["diameter"].is_null());
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let g = gadget(&dir, "ml8.el", &["--family", "mobius", "--k", "8"]);
    let cmds: Vec<Vec<&str>> = vec![
        vec!["chain", "run", "--graph", s(&g), "--steps", "500", "--seed", "7", "--trace"],
        vec!["chain", "sample", "--graph", s(&g), "--steps", "200", "--samples", "300", "--seed", "3"],
        vec!["chain", "sample", "--graph", s(&g), "--steps", "200", "--samples", "300", "--format", "tsv"],
        vec!["mix", "analyze", "--graph", s(&g), "--tv", "0,50,400", "--samples", "500", "--seed", "9"],
        vec!["enumerate", "--graph", s(&g)],
    ];
    for args in cmds {
        let a = matchkit(&args);
        let b = matchkit(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    let s0 = ok(&["chain", "sample", "--graph", s(&g), "--steps", "200", "--samples", "300"]);
    let s1 = ok(&["chain", "sample", "--graph", s(&g), "--steps", "200", "--samples", "300", "--seed", "1"]);
    assert_eq!(s0["seed"], 0);
    assert_ne!(s0["histogram"], s1["histogram"]);
}

#[test]
fn chain_sample_histogram_sums_to_samples() {
    let dir = TempDir::new().unwrap();
    let g = gadget(&dir, "ml8.el", &["--family", "mobius", "--k", "8"]);
    let v = ok(&["chain", "sample", "--graph", s(&g), "--steps", "100", "--samples", "250"]);
    let total: u64 = v["histogram"].as_array().unwrap().iter().map(|h| h["count"].as_u64().unwrap()).sum();
    assert_eq!(total, 250);
    let tsv = matchkit(&["chain", "sample", "--graph", s(&g), "--steps", "100", "--samples", "250", "--format", "tsv"]);
    let text = String::from_utf8(tsv.stdout).unwrap();
    assert!(text.starts_with("# seed=0 steps=100 samples=250\ncount\tmatching\n"));
    let tsv_total: u64 = text.lines().skip(2).map(|l| l.split('\t').next().unwrap().parse::<u64>().unwrap()).sum();
    assert_eq!(tsv_total, 250);
}

#[test]
fn mix_analyze_reports_cut_and_gap() {
    let dir = TempDir::new().unwrap();
    let g = gadget(&dir, "gk2.el", &["--family", "gk", "--k", "2"]);
    let v = ok(&["mix", "analyze", "--graph", s(&g), "--tv", "0,100", "--samples", "200"]);
    assert_eq!(v["num_matchings"], 17);
    assert_eq!(v["phi_exact"], "1/100");
    assert!(v["gap"].as_f64().unwrap() > 0.0);
    assert_eq!(v["tv_series"].as_array().unwrap().len(), 2);
    let cut = dir.path().join("cut.txt");
    std::fs::write(&cut, "0\n").unwrap();
    let c = ok(&["mix", "analyze", "--graph", s(&g), "--cut", s(&cut)]);
    assert!(c.get("phi_bound").is_some() && c.get("phi_exact").is_none());
}

#[test]
fn exit_codes_and_structured_errors() {
    let dir = TempDir::new().unwrap();
    let fig7 = gadget(&dir, "fig7.el", &["--family", "fixture", "--name", "fig7_cograph"]);
    let bad = dir.path().join("bad.el");
    std::fs::write(&bad, "3 1\n1 1\n").unwrap();
    let cases: Vec<(Vec<&str>, i32, &str)> = vec![
        (vec!["count", "--graph", s(&fig7), "--algorithm", "cochain"], 1, "not_in_class"),
        (vec!["count", "--graph", s(&bad)], 1, "self_loop"),
        (vec!["count", "--graph", "/nonexistent/g.el"], 1, "io"),
        (vec!["gadget", "--family", "fixture", "--name", "nope", "--out", "/tmp/x.el"], 1, "unknown_fixture"),
        (vec!["enumerate", "--graph", s(&fig7), "--budget", "2"], 1, "budget_exceeded"),
        (vec!["frobnicate"], 2, "usage"),
        (vec!["count"], 2, "usage"),
        (vec!["recognize", "--graph", s(&fig7), "--class", "planar"], 2, "usage"),
        (vec!["count", "--graph", s(&fig7), "--algorithm", "brute", "--td", "x.td"], 2, "usage"),
        (vec!["gadget", "--family", "gk", "--out", "/tmp/x.el"], 2, "usage"),
    ];
    for (args, code, kind) in cases {
        let out = matchkit(&args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let v = json_of(&out);
        assert_eq!(v["status"], "error", "{args:?}");
        assert_eq!(v["error"]["kind"], kind, "{args:?}");
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert!(!stderr.contains("panicked"), "{stderr}");
    }
}

#[test]
fn budget_from_environment() {
    let dir = TempDir::new().unwrap();
    let g = gadget(&dir, "gk3.el", &["--family", "gk", "--k", "3"]);
    let run = |env: &str| {
        Command::new(env!("CARGO_BIN_EXE_matchkit"))
            .args(["enumerate", "--graph", s(&g)])
            .env("MATCHKIT_BUDGET", env)
            .output()
            .unwrap()
    };
    assert_eq!(run("5").status.code(), Some(1));
    assert_eq!(run("100000").status.code(), Some(0));
    assert_eq!(run("lots").status.code(), Some(2));
}

#[test]
fn help_and_elapsed_time() {
    assert_eq!(matchkit(&["--help"]).status.code(), Some(0));
    let dir = TempDir::new().unwrap();
    let g = gadget(&dir, "k.el", &["--family", "mobius", "--k", "4"]);
    let out = matchkit(&["count", "--graph", s(&g)]);
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("elapsed_ms="));
    assert_eq!(json_of(&out)["count"], "3");
}
