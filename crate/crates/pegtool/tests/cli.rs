use std::path::PathBuf;
use std::process::Command;

use pegtool::cli::{run, EXIT_OK, EXIT_UNKNOWN, EXIT_USAGE};
use serde_json::Value;

fn pegtool(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(std::iter::once("pegtool").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn temp_path(name: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("pegtool-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_file(&p);
    p
}

#[test]
fn header_records_version_seed_and_budget() {
    let (code, out, _) = pegtool(&["gen", "path:4", "--json", "--seed", "7", "--budget-states", "99"]);
    assert_eq!(code, EXIT_OK);
    let lines = json_lines(&out);
    assert_eq!(lines[0]["tool_version"], peg_core::VERSION);
    assert_eq!(lines[0]["seed"], 7);
    assert_eq!(lines[0]["budget"]["max_states"], 99);
    assert_eq!(lines[1]["diameter"], 3);
    let (_, text, _) = pegtool(&["gen", "path:4"]);
    assert!(text.starts_with("# pegtool "));
    assert!(text.contains("budget_states="));
}

#[test]
fn solve_is_deterministic() {
    let a = pegtool(&["solve", "cat:1,0,2,1", "--quantity", "p", "--json"]);
    let b = pegtool(&["solve", "cat:1,0,2,1", "--quantity", "p", "--json"]);
    assert_eq!(a, b);
    let report = &json_lines(&a.1)[1];
    assert_eq!(report["value"], 3);
    assert_eq!(report["millis"], 0);
}

#[test]
fn pegging_number_of_a_star() {
    let (code, out, _) = pegtool(&["solve", "star:5", "--quantity", "P", "--json"]);
    assert_eq!(code, EXIT_OK);
    let r = &json_lines(&out)[1];
    assert_eq!(r["value"], 5);
    assert_eq!(r["counterexample"], serde_json::json!([1, 2, 3, 4]));
}

#[test]
fn reach_reports_witnesses_and_certificates() {
    let (code, out, _) = pegtool(&["reach", "path:5", "--pegs", "1,2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let r = &json_lines(&out)[1];
    assert_eq!(r["reachable"], serde_json::json!([0, 1, 2, 3]));
    assert_eq!(r["verdicts"][4]["status"], "unreachable");
    let (_, out, _) = pegtool(&["reach", "star:5", "--pegs", "1,2,3,4", "--target", "0", "--mode", "stacking", "--json"]);
    assert_eq!(json_lines(&out)[1]["verdicts"][0]["status"], "unreachable");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = pegtool(&["gen", "cat:"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains(":1:5:"), "{err}");
    assert_eq!(pegtool(&["verify", "empty"]).0, EXIT_USAGE);
    assert_eq!(pegtool(&["reach", "path:3", "--pegs", "0,7"]).0, EXIT_USAGE);
    assert_eq!(pegtool(&["construct", "path:5", "--kind", "fib"]).0, EXIT_USAGE);
    assert_eq!(pegtool(&["solve", "path:3"]).0, EXIT_USAGE);
}

#[test]
fn exhausted_budget_exits_three() {
    let (code, _, _) = pegtool(&["reach", "path:9", "--pegs", "0,1,3,4,6,7", "--budget-states", "1"]);
    assert_eq!(code, EXIT_UNKNOWN);
}

#[test]
fn cache_serves_repeat_queries() {
    let path = temp_path("cache.jsonl");
    let p = path.to_str().unwrap();
    let first = pegtool(&["prob", "star:5", "-k", "4", "--cache", p, "--json"]);
    let second = pegtool(&["prob", "star:5", "-k", "4", "--cache", p, "--json"]);
    assert_eq!(first.0, EXIT_OK);
    assert_eq!(first.1, second.1);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 1);
    assert_eq!(json_lines(&first.1)[1]["estimate"], 0.8);

    // A different seed is a different query.
    pegtool(&["prob", "star:5", "-k", "4", "--cache", p, "--seed", "1"]);
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);

    let mut text = std::fs::read_to_string(&path).unwrap();
    text.insert_str(0, "not json\n");
    std::fs::write(&path, text).unwrap();
    let third = pegtool(&["prob", "star:5", "-k", "4", "--cache", p, "--json"]);
    assert_eq!(third.1, first.1);
    assert!(third.2.contains("warning"), "{}", third.2);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn edge_list_files_are_accepted() {
    let path = temp_path("c5.txt");
    std::fs::write(&path, "# five-cycle\n0 1\n1 2\n2 3\n3 4\n4 0\n").unwrap();
    let (code, out, _) = pegtool(&["solve", path.to_str().unwrap(), "--quantity", "p", "--json"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(json_lines(&out)[1]["value"], 3);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn constructions_from_the_command_line() {
    let (_, out, _) = pegtool(&["construct", "ary:6,3", "--kind", "fib", "--json"]);
    let r = &json_lines(&out)[1];
    assert_eq!(r["size"], 7);
    assert_eq!(r["verdict"], "pegs");
    assert_eq!(pegtool(&["construct", "ary:3,3", "--kind", "fib"]).0, EXIT_USAGE);
    let (_, out, _) = pegtool(&["construct", "lobster:(0),(1),(0),(0)", "--kind", "lobster", "--json"]);
    assert_eq!(json_lines(&out)[1]["size"], 4);
    let (_, out, _) = pegtool(&["construct", "ary:2,14", "--kind", "adversarial", "--json"]);
    let r = &json_lines(&out)[1];
    assert!(r["refined_weight_hint"].as_f64().unwrap() < 1.0);
    assert_eq!(r["claimed_empty_vertices"], 172);
}

#[test]
fn verify_suite_writes_one_line_per_check() {
    let (code, out, _) = pegtool(&["verify", "paths", "--json"]);
    assert_eq!(code, EXIT_OK);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[1]["criterion"], 1);
    assert_eq!(lines[1]["passed"], true);
    assert!(lines[1].get("millis").is_none());
    assert_eq!(lines[2]["failed"], 0);
}

#[test]
fn scan_leaf_lists_every_leaf() {
    let (code, out, _) = pegtool(&["scan-leaf", "cat:1,0,2", "--json"]);
    assert_eq!(code, EXIT_OK);
    let rows = json_lines(&out);
    assert_eq!(rows.len(), 4);
    assert!(rows[1..].iter().all(|r| r["p_before"] == 3));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_pegtool");
    let ok = Command::new(bin).args(["gen", "star:4"]).env_remove("PEGTOOL_CACHE").output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_OK));
    let bad = Command::new(bin).args(["gen", "tree:4"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
    let missing = Command::new(bin).output().unwrap();
    assert_eq!(missing.status.code(), Some(EXIT_USAGE));
}
