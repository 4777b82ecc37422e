use graphnim::verify::load_report;
use graphnim_cli::{run_cli_with, EXIT_DISAGREEMENT, EXIT_OK, EXIT_USAGE};

fn run(args: &[&str]) -> (i32, String, String) {
    run_with_input(args, "")
}

fn run_with_input(args: &[&str], input: &str) -> (i32, String, String) {
    let mut argv = vec!["graphnim"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_cli_with(argv, &mut input.as_bytes(), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn classify_reports_unknown_for_the_open_position() {
    let (code, out, _) = run(&["classify", "--graph", "H1", "--weights", "AB=5,BC=1,CD=6,EF=11"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Unknown"), "{out}");
}

#[test]
fn classify_trace_and_custom_graphs() {
    let (code, out, _) = run(&["classify", "--graph", "G4", "--weights", "2,2,3,1", "--trace"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Losing (G4-A1)"), "{out}");
    assert!(out.contains("\"kind\": \"special\""), "{out}");
    let (code, _, err) = run(&["classify", "--graph", "custom:AB,BC,CA", "--weights", "1,1,1"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
}

#[test]
fn solve_prints_outcome_and_move() {
    let (code, out, _) = run(&["solve", "--graph", "H1", "--weights", "AB=2,BC=3,CD=9,EF=4"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Winning") && out.contains("winning move"), "{out}");
    let (code, out, _) = run(&["solve", "--graph", "custom:AB,BC,CA", "--weights", "3,3,3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Losing"), "{out}");
    let (code, out, _) = run(&["solve", "--graph", "F2", "--weights", "1,1,2,1", "--json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["oracle"], "Losing");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["solve", "--graph", "Z9", "--weights", "1,1,1,1"]).0, EXIT_USAGE);
    assert_eq!(run(&["solve", "--graph", "H1", "--weights", "AB=1"]).0, EXIT_USAGE);
    assert_eq!(run(&["solve", "--graph", "H1"]).0, EXIT_USAGE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(run(&["verify", "--graph", "G4", "--max-weight", "99"]).0, EXIT_USAGE);
    assert_eq!(run(&["--help"]).0, EXIT_OK);
}

#[test]
fn verify_g4_is_clean_and_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g4.jsonl");
    let (code, out, _) = run(&["verify", "--graph", "G4", "--max-weight", "8", "--report", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let report = load_report(&path).unwrap();
    assert_eq!(report.summary.total, 4096);
    assert_eq!(report.summary.disagreements, 0);
    assert_eq!(report.summary.unknown, 0);
}

#[test]
fn verify_h1_leaves_unknowns_but_no_disagreements() {
    let (code, out, _) = run(&["verify", "--graph", "H1", "--max-weight", "10", "--jobs", "2"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains(" 0 disagreements"), "{out}");
    assert!(!out.contains(" 0 unknown"), "{out}");
    assert_ne!(EXIT_DISAGREEMENT, code);
}

#[test]
fn catalog_lists_every_graph() {
    let (code, out, _) = run(&["catalog"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 11);
    assert!(out.contains("G4  edges AB,BC,CA,DE  automorphisms 6"), "{out}");
}

#[test]
fn play_a_short_game() {
    // G1 is a star: taking everything at the centre wins at once
    let (code, out, _) = run_with_input(
        &["play", "--graph", "G1", "--weights", "1,1,1,1", "--human-first"],
        "hint\nA\n1\n1\n1\n1\n",
    );
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("Winning: try A"), "{out}");
    assert!(out.contains("game over: you win"), "{out}");

    // the engine opens and wins from a winning start
    let (code, out, _) = run_with_input(&["play", "--graph", "G1", "--weights", "1,1,1,1"], "");
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("engine plays A: AB-1 AC-1 AD-1 AE-1"), "{out}");
    assert!(out.contains("game over: the engine wins"), "{out}");
}
