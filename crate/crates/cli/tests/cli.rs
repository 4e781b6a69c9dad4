use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn multicut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multicut")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_path_kplanar() {
    let o = multicut(&["solve", "kplanar", path_str(&data("path3.mc"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("weight 1\n"));
}

#[test]
fn solve_k5_crossing() {
    let o = multicut(&["solve", "crossing", path_str(&data("k5.mc"))]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("weight 4\n"));
}

#[test]
fn kplanar_refuses_weights() {
    let o = multicut(&["solve", "kplanar", path_str(&data("weighted.mc"))]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("kplanar solver requires unit weights"));
}

#[test]
fn infeasible_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("inf.mc");
    std::fs::write(&f, "n 2\nt 0\nt 1\ne 0 1 inf\nd 0 1\n").unwrap();
    for solver in ["crossing", "oracle", "planar"] {
        assert_eq!(multicut(&["solve", solver, path_str(&f)]).status.code(), Some(2), "{solver}");
    }
}

#[test]
fn bad_input_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("bad.mc");
    std::fs::write(&f, "n 2\ne 0 5 1\n").unwrap();
    assert_eq!(multicut(&["solve", "oracle", path_str(&f)]).status.code(), Some(1));
    assert_eq!(multicut(&["solve", "oracle", "/nonexistent.mc"]).status.code(), Some(1));
    assert_eq!(multicut(&["gen", "--pi", "5"]).status.code(), Some(1));
}

#[test]
fn undrawn_weighted_needs_flag() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("k5w.mc");
    let mut text = String::from("n 5\nt 0\nt 1\n");
    for u in 0..5 {
        for v in u + 1..5 {
            text += &format!("e {u} {v} 2\n");
        }
    }
    text += "d 0 1\n";
    std::fs::write(&f, text).unwrap();
    assert_eq!(multicut(&["solve", "crossing", path_str(&f)]).status.code(), Some(1));
    let o = multicut(&["solve", "crossing", "--draw-tiny", path_str(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("weight 8\n"));
}

#[test]
fn gen_golden_and_deterministic() {
    let golden = std::fs::read_to_string(data("gen_seed1_n8_t3_pi0.mc")).unwrap();
    let a = multicut(&["gen", "--seed", "1", "--n", "8", "--t", "3", "--pi", "0"]);
    assert_eq!(stdout(&a), golden);
    let b = multicut(&["gen", "--seed", "1", "--n", "8", "--t", "3", "--pi", "0"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_round_trip_and_tampering() {
    let dir = tempfile::tempdir().unwrap();
    let inst = data("k5.mc");
    let sol = dir.path().join("k5.sol");
    let o = multicut(&["solve", "crossing", path_str(&inst), "--out", path_str(&sol)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(multicut(&["verify", path_str(&inst), path_str(&sol)]).status.code(), Some(0));

    let text = std::fs::read_to_string(&sol).unwrap();
    let tampered = dir.path().join("weight.sol");
    std::fs::write(&tampered, text.replace("weight 4", "weight 3")).unwrap();
    assert_ne!(multicut(&["verify", path_str(&inst), path_str(&tampered)]).status.code(), Some(0));

    let missing = dir.path().join("missing.sol");
    let mut lines: Vec<&str> = text.lines().collect();
    lines.pop();
    std::fs::write(&missing, lines.join("\n").replace("weight 4", "weight 3")).unwrap();
    assert_ne!(multicut(&["verify", path_str(&inst), path_str(&missing)]).status.code(), Some(0));
}

#[test]
fn bench_reports() {
    let dir = tempfile::tempdir().unwrap();
    let empty = multicut(&["bench", path_str(dir.path())]);
    assert_eq!(empty.status.code(), Some(0));
    assert_eq!(stdout(&empty), "summary instances=0 compared=0 agree=0 rate=- errors=0\n");

    for seed in 0..50u64 {
        let f = dir.path().join(format!("g{seed:02}.mc"));
        let crossings = (seed % 3).to_string();
        let weight = if seed % 3 == 0 { "1" } else { "4" };
        let s = seed.to_string();
        let o = multicut(&["gen", "--seed", &s, "--n", "7", "--crossings", &crossings, "--max-weight", weight, "--out", path_str(&f)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let big = dir.path().join("z_big.mc");
    let o = multicut(&["gen", "--seed", "9", "--n", "30", "--density", "0.6", "--t", "2", "--out", path_str(&big)]);
    assert_eq!(o.status.code(), Some(0));

    let out = dir.path().join("report.txt");
    let r = multicut(&["bench", path_str(dir.path()), "--oracle-max-edges", "20", "--out", path_str(&out)]);
    assert_eq!(r.status.code(), Some(0));
    let report = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = report.lines().collect();
    assert_eq!(lines.len(), 52);
    assert!(lines[50].starts_with("name=z_big.mc") && lines[50].contains("oracle=skipped"));
    assert_eq!(lines[51], "summary instances=51 compared=50 agree=50 rate=100.00% errors=0");

    let again = multicut(&["bench", path_str(dir.path()), "--oracle-max-edges", "20"]);
    assert_eq!(stdout(&again), report);
}

#[test]
fn dual_report_k5() {
    let o = multicut(&["dual-report", path_str(&data("k5.mc"))]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("f_star=1"));
    assert!(text.contains("claims=pass"));
}
