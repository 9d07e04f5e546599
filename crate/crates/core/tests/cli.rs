use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn trigrid(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trigrid")).current_dir(dir).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn gen(dir: &Path, args: &[&str]) {
    let o = trigrid(dir, args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn plan_then_verify_round_trip() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    gen(d, &["gen", "hexagon", "--out", "g.txt"]);
    gen(d, &["gen", "placement", "--graph", "g.txt", "--seed", "1", "--out", "p.txt"]);
    gen(d, &["gen", "placement", "--graph", "g.txt", "--seed", "2", "--out", "q.txt"]);
    for strategy in ["ear", "hamilton", "auto"] {
        let o = trigrid(d, &["plan", "g.txt", "p.txt", "q.txt", "--strategy", strategy, "--out", "plan.txt"]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        let o = trigrid(d, &["verify", "g.txt", "p.txt", "plan.txt", "--target", "q.txt"]);
        assert_eq!(code(&o), 0);
        assert!(String::from_utf8_lossy(&o.stdout).starts_with("ok "));
    }
}

#[test]
fn verify_against_wrong_target_fails() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    gen(d, &["gen", "pentagon", "--out", "g.txt"]);
    gen(d, &["gen", "placement", "--graph", "g.txt", "--seed", "3", "--out", "p.txt"]);
    fs::write(d.join("empty.txt"), "strategy ear\nslides 0\n").unwrap();
    let mut other = 4;
    while fs::read(d.join("p.txt")).unwrap() == fs::read(d.join("q.txt")).unwrap_or_default() || other == 4 {
        gen(d, &["gen", "placement", "--graph", "g.txt", "--seed", &other.to_string(), "--out", "q.txt"]);
        other += 1;
    }
    assert_eq!(code(&trigrid(d, &["verify", "g.txt", "p.txt", "empty.txt", "--target", "p.txt"])), 0);
    assert_eq!(code(&trigrid(d, &["verify", "g.txt", "p.txt", "empty.txt", "--target", "q.txt"])), 1);
}

#[test]
fn hexagram_is_a_precondition_failure() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    gen(d, &["gen", "star-of-david", "--out", "g.txt"]);
    gen(d, &["gen", "placement", "--graph", "g.txt", "--out", "p.txt"]);
    for strategy in ["ear", "hamilton"] {
        assert_eq!(code(&trigrid(d, &["plan", "g.txt", "p.txt", "p.txt", "--strategy", strategy])), 2);
    }
    let o = trigrid(d, &["check", "g.txt"]);
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("star_of_david: yes"), "{text}");
    assert!(text.contains("factor_critical: no"), "{text}");
}

#[test]
fn malformed_input_exits_with_three() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    fs::write(d.join("bad.txt"), "v 1 0 zero\n").unwrap();
    assert_eq!(code(&trigrid(d, &["check", "bad.txt"])), 3);
    fs::write(d.join("even.txt"), "v 1 0 0\nv 2 1 0\n").unwrap();
    assert_eq!(code(&trigrid(d, &["check", "even.txt"])), 3);
    assert_eq!(code(&trigrid(d, &["gen", "chord-cycle", "--n", "3"])), 3);
    assert_eq!(code(&trigrid(d, &["frobnicate"])), 3);
    assert_eq!(code(&trigrid(d, &["check", "missing.txt"])), 1);
}

#[test]
fn oracle_reports_components() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    gen(d, &["gen", "chord-cycle", "--n", "5", "--m", "3", "--out", "g.txt"]);
    let o = trigrid(d, &["oracle", "g.txt", "--out", "dist.csv"]);
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(d.join("dist.csv")).unwrap();
    assert!(csv.starts_with("state_key,distance\n"));
    let summary = csv.lines().last().unwrap();
    assert!(summary.starts_with("# components=2 "), "{summary}");
    assert_eq!(code(&trigrid(d, &["oracle", "g.txt", "--budget-states", "10"])), 2);
}

#[test]
fn render_writes_frames() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    gen(d, &["gen", "pentagon", "--out", "g.txt"]);
    gen(d, &["gen", "placement", "--graph", "g.txt", "--seed", "1", "--out", "p.txt"]);
    gen(d, &["gen", "placement", "--graph", "g.txt", "--seed", "9", "--out", "q.txt"]);
    assert_eq!(code(&trigrid(d, &["plan", "g.txt", "p.txt", "q.txt", "--out", "plan.txt"])), 0);
    assert_eq!(code(&trigrid(d, &["render", "g.txt", "--placement", "p.txt", "--out", "p.svg"])), 0);
    assert!(fs::read_to_string(d.join("p.svg")).unwrap().starts_with("<svg"));
    let o = trigrid(d, &["render", "g.txt", "--placement", "p.txt", "--plan", "plan.txt", "--out", "frames"]);
    assert_eq!(code(&o), 0);
    let slides: usize = fs::read_to_string(d.join("plan.txt"))
        .unwrap()
        .lines()
        .find_map(|l| l.strip_prefix("slides "))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(fs::read_dir(d.join("frames")).unwrap().count(), slides + 1);
}

#[test]
fn stdin_graph() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let mut child = Command::new(env!("CARGO_BIN_EXE_trigrid"))
        .args(["check", "-"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .current_dir(d)
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"v 1 0 0\nv 2 0 1\nv 3 1 0\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("vertices: 3"));
}
