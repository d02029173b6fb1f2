use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use eqtransfer::io;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eqtransfer"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_on(args: &[&str], name: &str) -> (i32, String, String) {
    let path = fixture(name);
    let mut all: Vec<&str> = args.to_vec();
    all.push(path.to_str().unwrap());
    let out = run(&all);
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn tree_transfer_reports_equilibrium_and_calls() {
    let (code, out, _) = run_on(&["transfer", "--oracle", "tree"], "tree_xyz.json");
    assert_eq!(code, 0);
    assert!(out.contains("profile (0,0) is a Nash equilibrium"), "{out}");
    assert!(out.contains("winner_calls=3 strategy_calls=2 (n=3)"), "{out}");
    assert!(out.contains("outcome X at position 3"), "{out}");
}

#[test]
fn brute_and_tree_oracles_agree_on_the_tree() {
    let (_, tree, _) = run_on(&["transfer", "--oracle", "tree"], "tree_xyz.json");
    let (code, brute, _) = run_on(&["transfer", "--oracle", "brute"], "tree_xyz.json");
    assert_eq!(code, 0);
    let last = |s: &str| s.lines().last().unwrap().to_string();
    assert_eq!(last(&tree), last(&brute));
}

#[test]
fn undetermined_structure_exits_one() {
    let (code, out, _) = run_on(&["solve"], "xy_yx.json");
    assert_eq!(code, 1);
    assert!(out.contains("no Nash equilibrium"));
    let (code, out, _) = run_on(&["check-determinacy"], "xy_yx.json");
    assert_eq!(code, 1);
    assert!(out.contains("not determined"));
    let (code, _, _) = run_on(&["transfer"], "xy_yx.json");
    assert_eq!(code, 1);
}

#[test]
fn solve_lists_both_equilibria() {
    let (code, out, _) = run_on(&["solve"], "two_equilibria.json");
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("equilibrium")).count(), 2, "{out}");
}

#[test]
fn verify_ne_distinguishes_profiles() {
    let (code, _, _) = run_on(&["verify-ne", "--profile", "0,1"], "two_equilibria.json");
    assert_eq!(code, 0);
    let (code, out, _) = run_on(&["verify-ne", "--profile", "0,0"], "two_equilibria.json");
    assert_eq!(code, 1);
    assert!(out.contains("not a Nash equilibrium"), "{out}");
}

#[test]
fn graph_commands_succeed() {
    for (args, name) in [
        (vec!["solve"], "priority_three.json"),
        (vec!["solve"], "muller_cycle.json"),
        (vec!["solve-parity"], "priority_three.json"),
        (vec!["solve-muller", "--win", "0"], "muller_cycle.json"),
        (vec!["transfer", "--oracle", "parity"], "priority_three.json"),
        (vec!["transfer", "--oracle", "muller"], "muller_cycle.json"),
    ] {
        let (code, out, err) = run_on(&args, name);
        assert_eq!(code, 0, "{args:?} {name}: {out}{err}");
    }
}

#[test]
fn json_output_parses() {
    let (code, out, _) = run_on(&["--json", "check-determinacy"], "tree_xyz.json");
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["determined"], true);
    let (_, out, _) = run_on(&["--json", "solve"], "priority_three.json");
    serde_json::from_str::<serde_json::Value>(&out).unwrap();
}

#[test]
fn input_errors_exit_two() {
    let dir = std::env::temp_dir().join(format!("eqtransfer-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"type\": \"game\",\n  oops\n}").unwrap();
    let out = run(&["solve", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = run(&["solve", dir.join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["corpus", "build", "no_such_entry"]);
    assert_eq!(out.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn runs_are_deterministic() {
    for args in [
        vec!["corpus", "verify", "prop_5_4"],
        vec!["--seed", "7", "corpus", "verify"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout);
    }
    let (_, a, _) = run_on(&["solve"], "muller_cycle.json");
    let (_, b, _) = run_on(&["solve"], "muller_cycle.json");
    assert_eq!(a, b);
}

#[test]
fn corpus_build_emits_loadable_game() {
    let out = run(&["corpus", "build", "prop_5_4:3"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = io::parse(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert!(doc.load().is_ok());
}

#[test]
fn fixtures_round_trip() {
    for entry in std::fs::read_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let doc = io::parse(&text).unwrap();
        let again = io::parse(&io::to_json(&doc)).unwrap();
        assert_eq!(doc, again, "{}", path.display());
        assert_eq!(doc.load().unwrap(), again.load().unwrap());
    }
}
