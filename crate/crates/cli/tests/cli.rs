use std::path::Path;
use std::process::{Command, Output};

use floerdim::bypass::certify;
use floerdim::diagram::{build, OneOneParams};
use floerdim::triangle::{dimension_lemma, Direction};
use serde_json::Value;

fn floerdim(args: &[&str]) -> Output {
    floerdim_in(args, None, None)
}

fn floerdim_in(args: &[&str], dir: Option<&Path>, config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_floerdim"));
    cmd.args(args).env_remove("FLOERDIM_CONFIG");
    if let Some(d) = dir {
        cmd.current_dir(d);
    }
    if let Some(c) = config {
        cmd.env("FLOERDIM_CONFIG", c);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn khi_table_json() {
    let o = floerdim(&["khi", "torus", "2", "3", "--json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"gradings\":{\"-1\":1,\"0\":1,\"1\":1},\"total\":3}\n");
}

#[test]
fn documented_examples() {
    let o = floerdim(&["certify", "W(1,0,0,0)", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["bound"], 1);

    let o = floerdim(&["slope", "children", "1/0", "--json"]);
    assert_eq!(json(&o)["children"], serde_json::json!(["0/1", "1/-1"]));

    let o = floerdim(&["certify", "W(6,2,1,3)", "--json"]);
    let v = json(&o);
    assert_eq!(
        (v["params"].as_str(), v["rule"].as_str(), v["bound"].as_i64()),
        (Some("W(6,2,1,3)"), Some("AntiWaveSplit"), Some(6))
    );
    assert_eq!(json(&floerdim(&["certify", "W(10,3,1,5)", "--json"]))["bound"], 10);

    let v = json(&floerdim(&["surgery", "certify", "--knot", "K(5,2,1)", "--slope", "17/3", "--json"]));
    assert_eq!(v["slope"], "17/3");
    for step in v["steps"].as_array().unwrap() {
        for key in ["claim", "justification_tag", "lhs", "rhs"] {
            assert!(step.get(key).is_some(), "{key} missing in {step}");
        }
    }

    let v = json(&floerdim(&["ledger", "window", "--y", "6", "--g", "1", "--json"]));
    assert_eq!((v["i_min"].as_i64(), v["i_max"].as_i64()), (Some(-3), Some(4)));
    let v =
        json(&floerdim(&["ledger", "surgery-model", "--d", "1", "--g", "1", "--middle", "1", "--n", "7", "--json"]));
    assert_eq!(v["known_total"], 7);

    let v = json(&floerdim(&["slope", "gamma-hat", "--surgery", "-5/1", "--index", "2", "--json"]));
    assert_eq!(v["gamma"], serde_json::json!([-2, 9]));
    let v = json(&floerdim(&["slope", "cf", "-7/5", "--json"]));
    assert_eq!(v["terms"], serde_json::json!([-2, -2, -3]));
    assert_eq!(stdout(&floerdim(&["alexander", "torus", "2", "3"])), "t^-1 - 1 + t\n");
    let v = json(&floerdim(&["realize", "--target", "t^-1 - 1 + t", "--pmax", "6", "--json"]));
    assert!(!v["hits"].as_array().unwrap().is_empty());
    assert_eq!(json(&floerdim(&["hfk", "W(3,1,1,1)", "--json"]))["rank"], 3);
    assert_eq!(json(&floerdim(&["diagram", "mirror", "W(6,2,1,3)", "--json"]))["mirror"], "W(6,2,1,1)");
    assert_eq!(json(&floerdim(&["diagram", "info", "W(6,2,1,3)", "--json"]))["components"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(floerdim(&["bogus"]).status.code(), Some(1));
    assert_eq!(floerdim(&["certify"]).status.code(), Some(1));
    assert_eq!(floerdim(&["certify", "W(6,2,1"]).status.code(), Some(1));
    assert_eq!(floerdim(&["khi", "torus", "2", "4"]).status.code(), Some(1));
    let o = floerdim(&["surgery", "certify", "--knot", "K(5,2,1)", "--slope", "1/1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty() && !o.stderr.is_empty());
    assert_eq!(floerdim(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_output_is_stable() {
    let args = ["certify", "W(10,3,1,5)", "--json"];
    assert_eq!(floerdim(&args).stdout, floerdim(&args).stdout);
    let args = ["diagram", "build", "W(7,2,1,4)", "--json"];
    let (a, b) = (floerdim(&args), floerdim(&args));
    assert_eq!(a.stdout, b.stdout);
    let model: floerdim::diagram::StrandModel = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(model, build("W(7,2,1,4)".parse().unwrap()));
}

#[test]
fn svg_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let diagram = dir.path().join("d.svg");
    let tree = dir.path().join("t.svg");
    let o = floerdim(&["diagram", "render", "W(6,2,1,3)", "--sutures", "--out", diagram.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert!(std::fs::read_to_string(&diagram).unwrap().starts_with("<svg"));
    let o = floerdim(&["certify", "W(6,2,1,3)", "--svg-tree", tree.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&tree).unwrap().contains("W(3,1,1,1)"));
}

#[test]
fn ledger_solve() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("facts.json");
    let facts = dimension_lemma(2, 1, 4, Direction::Plus).unwrap();
    std::fs::write(&path, serde_json::to_string_pretty(&facts).unwrap()).unwrap();
    let v = json(&floerdim(&["ledger", "solve", path.to_str().unwrap(), "--json"]));
    assert!(v["contradiction"].is_null());
    assert!(v["goals"].as_array().unwrap().iter().all(|g| g["status"] == "derived"));

    let bad = r#"{"objects":[{"name":"A","min":0,"max":0},{"name":"B","min":0,"max":0}],
        "known":[{"object":"A","grading":0,"value":1},{"object":"B","grading":0,"value":2}],
        "triangles":[{"label":"t","slots":[{"object":"A"},{"object":"B"},{"object":"A"}],
        "maps":[{"map":0,"kind":"iso"}]}],"goals":[]}"#;
    std::fs::write(&path, bad).unwrap();
    let o = floerdim(&["ledger", "solve", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("contradiction"));
}

#[test]
fn batch_exhaustive_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("all.txt");
    let corpus: Vec<OneOneParams> = OneOneParams::all(8).filter(|w| build(*w).is_connected()).collect();
    let text: String = corpus.iter().map(|w| format!("{w}\n")).collect();
    std::fs::write(&path, text).unwrap();
    let o = floerdim(&["batch", path.to_str().unwrap(), "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!((rows.len(), v["failed"].as_u64()), (corpus.len(), Some(0)));
    for (row, w) in rows.iter().zip(&corpus) {
        assert_eq!(row["input"], w.to_string());
        assert_eq!(row["detail"], format!("bound {}", certify(*w).unwrap().bound));
        assert_eq!(row["detail"], format!("bound {}", w.p));
    }
}

#[test]
fn batch_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let o = floerdim(&["batch", empty.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["rows"], serde_json::json!([]));

    let mixed = dir.path().join("mixed.txt");
    std::fs::write(&mixed, "W(6,2,1,3)\nW(6,2,1\nkhi torus 2 3\n\"W(10,3,1,5)\"\n").unwrap();
    let o = floerdim(&["batch", mixed.to_str().unwrap(), "--json"]);
    assert_ne!(o.status.code(), Some(0));
    let v = json(&o);
    let status: Vec<_> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["line"].as_u64().unwrap(), r["ok"].as_bool().unwrap()))
        .collect();
    assert_eq!(status, vec![(1, true), (2, false), (3, true), (4, true)]);
    assert!(v["rows"][1]["detail"].as_str().unwrap().starts_with("line 2:"));

    assert_eq!(floerdim(&["batch", dir.path().join("missing").to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn config_lookup() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("floerdim.conf"), "output = json\n").unwrap();
    let o = floerdim_in(&["khi", "torus", "2", "3"], Some(dir.path()), None);
    assert!(stdout(&o).starts_with('{'));

    let other = dir.path().join("human.conf");
    std::fs::write(&other, "output = human\npmax = 5\n").unwrap();
    let o = floerdim_in(&["khi", "torus", "2", "3"], Some(dir.path()), Some(&other));
    assert!(stdout(&o).starts_with("grading"));

    let flag = dir.path().join("flag.conf");
    std::fs::write(&flag, "output = json\n").unwrap();
    let o =
        floerdim_in(&["khi", "torus", "2", "3", "--config", flag.to_str().unwrap()], Some(dir.path()), Some(&other));
    assert!(stdout(&o).starts_with('{'));

    std::fs::write(&flag, "colour = red\n").unwrap();
    let o = floerdim_in(&["khi", "torus", "2", "3", "--config", flag.to_str().unwrap()], None, None);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn seeded_check_is_reproducible() {
    let args = ["check", "--samples", "40", "--seed", "11", "--pmax", "9", "--json"];
    let a = floerdim(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, floerdim(&args).stdout);
    assert_eq!(json(&a)["failures"], serde_json::json!([]));
}
