use std::fs;
use std::process::Command;

fn qaboa(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_qaboa"))
        .args(args)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn list_and_verify() {
    let list = qaboa(&["list-problems"]);
    assert_eq!(list.lines().count(), 10);
    assert!(list.contains("heh-plus"));
    assert!(qaboa(&["verify", "maxcut-k6"]).contains("optimum: 9\n"));
    assert!(qaboa(&["verify", "lattice-protein"]).contains("optimum: -6\n"));
    assert!(
        qaboa(&["verify", "welded-beam"]).contains("selector equivalence: PASS over 8 patterns")
    );
    let bad = Command::new(env!("CARGO_BIN_EXE_qaboa"))
        .args(["verify", "nope"])
        .output()
        .unwrap();
    assert!(!bad.status.success());
}

#[test]
fn run_then_aggregate() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("small.toml");
    fs::write(
        &config,
        "problem = \"wmaxcut-k5-1\"\nvariants = [\"gm\", \"utm\"]\niterations = 3\n\
         repetitions = 2\nshots = 128\n\n[annealer]\nsteps = 100\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let summary = qaboa(&[
        "run",
        "--config",
        config.to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
        "--seed",
        "4",
        "--jobs",
        "2",
    ]);
    assert!(summary.contains("GM-QABOA"));
    assert!(out.join("traces/gm_seed5.jsonl").exists());

    let combined = qaboa(&["aggregate", out.join("traces").to_str().unwrap()]);
    let gm = fs::read_to_string(out.join("aggregate_gm.csv")).unwrap();
    let utm = fs::read_to_string(out.join("aggregate_utm.csv")).unwrap();
    let expected = format!("{gm}{}", utm.split_once('\n').unwrap().1);
    assert_eq!(combined, expected);
    assert_eq!(gm.lines().count(), 1 + 3 + 3);
}
