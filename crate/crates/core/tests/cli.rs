use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn lcsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lcsc")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = lcsc(args);
    let v =
        serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn validate_exit_codes() {
    let (code, v) = json(&["validate", "--json", &data("fork.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["ok"], true);
    assert_eq!(v["provenance"]["exact"], true);

    let (code, v) = json(&["validate", "--json", &data("broken_table.json")]);
    assert_eq!(code, 1);
    assert!(!v["category"]["violations"].as_array().unwrap().is_empty());

    let (code, v) = json(&["validate", "--json", &data("planted_non_cancellative.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["left_cancellation_witness"][0], "a");

    let (code, v) = json(&["validate", "--json", &data("cyclic.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["stage"], "parse");
    assert!(v["error"]["error"].as_str().unwrap().contains("cycle"));

    let (code, v) = json(&["validate", "--json", "--truncate", "3", &data("cyclic.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["provenance"]["exact"], false);
    assert_eq!(v["category"]["exact"], false);
}

#[test]
fn analyze_examples() {
    let (code, v) = json(&["analyze", "--json", &data("identity.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["simple"], true);
    assert_eq!(v["groupoid_elements"], 1);

    let (_, v) = json(&["analyze", "--json", &data("two_objects.json")]);
    assert_eq!(v["minimal"], false);
    assert_eq!(v["simple"], false);

    let (_, v) = json(&["analyze", "--json", &data("fork.json")]);
    assert_eq!(v["filters"]["ultrafilters"], 4);
    assert_eq!(v["filters"]["tight"], 4);
    assert_eq!(v["groupoid"]["units"], 4);
    assert_eq!(v["groupoid"]["arrows"], 8);
    assert_eq!(v["groupoid"]["triples_to_germs"]["arrows"], 8);

    let (code, v) = json(&["analyze", "--json", "--truncate", "2", &data("cyclic.json")]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["stage"], "category");

    let (code, v) = json(&["analyze", "--json", "--cap", "2", &data("fork.json")]);
    assert_eq!(code, 3);
    assert_eq!(v["error"]["stage"], "semigroup");
}

#[test]
fn evaluator_selection_is_recorded() {
    let (code, v) = json(&["analyze", "--json", "--evaluators", "etight,closure", &data("fork.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["provenance"]["evaluators"], serde_json::json!(["closure", "etight"]));
    assert_eq!(v["filters"]["evaluators"].as_array().unwrap().len(), 2);
    let (code, _) = json(&["analyze", "--json", "--evaluators", "guess", &data("fork.json")]);
    assert_eq!(code, 2);
}

#[test]
fn filters_and_groupoid() {
    let (_, v) = json(&["filters", "--json", "--tight", "--check-equivalences", &data("fork.json")]);
    assert_eq!(v["filters"].as_array().unwrap().len(), 4);
    assert!(v["equivalences"]["equivariance_pairs"].as_u64().unwrap() > 0);
    let (_, v) = json(&["filters", "--json", "--ultra", &data("fork.json")]);
    assert!(v["filters"].as_array().unwrap().iter().all(|f| f["ultra"] == true));

    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let (code, v) = json(&["groupoid", "--json", "--dot", dot.to_str().unwrap(), &data("fork.json")]);
    assert_eq!(code, 0);
    for key in ["hausdorff", "effective", "minimal", "simple", "gate"] {
        assert!(v["verdict"].get(key).is_some(), "{key}");
    }
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("[shape=box]").count() + text.matches(" [label=\"[").count(), 1 + 4 + 4);
}

#[test]
fn zs_examples() {
    let (code, v) = json(&["zs", "--json", &data("swap_system.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["pseudo_free"], true);
    assert_eq!(v["product"]["morphisms"], 8);
    assert_eq!(v["checklist"]["all_hold"], true);
    assert_eq!(v["checklist"]["g_amenable"]["provenance"], "finite group of order 2");

    let (code, v) = json(&["zs", "--json", &data("trivial_group_system.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["product"]["morphisms"], 5);
    assert_eq!(v["checklist"]["all_hold"], true);

    let (code, v) = json(&["zs", "--json", &data("broken_cocycle_system.json")]);
    assert_eq!(code, 1);
    assert_eq!(v["system"]["valid"], false);

    let (code, v) = json(&["zs", "--json", &data("square.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["base_grading"]["action_groupoid"]["certificate"]["units"], 4);
}

#[test]
fn corpus_is_reproducible() {
    let a = lcsc(&["corpus", "--seed", "7", "--n", "50"]);
    let b = lcsc(&["corpus", "--seed", "7", "--n", "50"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = lcsc(&["corpus", "--seed", "8", "--n", "50"]);
    assert_ne!(a.stdout, c.stdout);

    let dir = tempfile::tempdir().unwrap();
    let out = lcsc(&["corpus", "--seed", "7", "--n", "6", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let mut names: Vec<String> =
        std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    assert_eq!(names.len(), 6);
    for n in names {
        let path = dir.path().join(&n);
        let cmd = if n.contains("system") { "zs" } else { "analyze" };
        let out = lcsc(&[cmd, "--json", path.to_str().unwrap()]);
        assert!(out.status.success(), "{n}: {}", String::from_utf8_lossy(&out.stdout));
    }
}

#[test]
fn text_output_and_unknown_flags() {
    let out = lcsc(&["analyze", &data("identity.json")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("analyze\n"));
    assert!(text.contains("simple: true"));
    assert_eq!(lcsc(&["analyze", "--colour", &data("identity.json")]).status.code(), Some(2));
}
