//! Replays the fuzz seed corpora and random near-grammar strings through the
//! properties the fuzz targets assert, so they run on stable in every test pass.

use std::fs;
use std::path::PathBuf;

use floerdim::diagram::{build, OneOneParams};
use floerdim::parse::laurent;
use floerdim::slope::{additive, bypass_children, lattice_triangle_ok, Slope};
use floerdim::triangle::{brute_force, triangle_solve, Facts, GoalStatus, System};
use proptest::prelude::*;

fn seeds(target: &str) -> Vec<String> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> =
        fs::read_dir(&dir).unwrap_or_else(|e| panic!("{}: {e}", dir.display())).map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty(), "no seeds in {}", dir.display());
    files.iter().map(|f| String::from_utf8_lossy(&fs::read(f).unwrap()).into_owned()).collect()
}

fn params_property(data: &str) {
    let Ok(w) = data.parse::<OneOneParams>() else { return };
    assert_eq!(w.to_string().parse::<OneOneParams>(), Ok(w));
    assert_eq!(w.mirror().mirror(), w);
    if w.p <= 64 {
        let model = build(w);
        model.validate().unwrap();
        assert_eq!(model.strands.len() as i64, w.p);
        let _ = floerdim::bypass::certify(w);
    }
}

fn laurent_property(data: &str) {
    let Ok(poly) = laurent(data) else { return };
    let text = poly.to_string();
    assert_eq!(laurent(&text).as_ref(), Ok(&poly), "{text}");
}

fn slope_property(data: &str) {
    let Ok(s) = data.parse::<Slope>() else { return };
    assert_eq!(s.to_string().parse::<Slope>(), Ok(s));
    if s.x.abs() <= 1 << 20 && s.y.abs() <= 1 << 20 && s != (Slope { x: 1, y: 0 }) {
        let (a, b) = bypass_children(s);
        assert!(additive(a, b, s) && lattice_triangle_ok(a, b, s), "{s} -> {a}, {b}");
    }
}

fn facts_property(data: &str) -> bool {
    let Ok(facts) = Facts::from_json(data) else { return false };
    let Ok(report) = triangle_solve(&facts) else { return false };
    assert_eq!(report.goals.len(), facts.goals.len());
    if report.contradiction.is_some() {
        return true;
    }
    let small = System::compile(&facts).is_ok_and(|s| s.var_count() <= 8);
    if let Some(e) = small.then(|| brute_force(&facts, 2).ok()).flatten() {
        for (g, &holds) in report.goals.iter().zip(&e.goal_holds) {
            assert!(g.status != GoalStatus::Derived || holds, "{}", g.label);
        }
    }
    true
}

#[test]
fn seed_corpora() {
    seeds("parse_params").iter().for_each(|s| params_property(s));
    seeds("parse_laurent").iter().for_each(|s| laurent_property(s));
    seeds("parse_slope").iter().for_each(|s| slope_property(s));
    let solved = seeds("facts_json").iter().filter(|s| facts_property(s)).count();
    assert!(solved >= 5, "only {solved} facts seeds solved");
}

#[test]
fn extreme_inputs() {
    for s in [
        "W(65536,0,0,0)",
        "W(65537,0,0,0)",
        "W(-1,0,0,0)",
        "K(9223372036854775807,1,1)",
        "W(3,1,1,-9223372036854775808)",
    ] {
        params_property(s);
    }
    for s in [
        "9223372036854775807 + 9223372036854775807",
        "-9223372036854775807 - 1 - 1",
        "t^-9223372036854775808",
        "t^9223372036854775807",
    ] {
        laurent_property(s);
    }
    for s in ["-9223372036854775808/1", "1/-9223372036854775808", "9223372036854775807/1", "1/9223372036854775807"] {
        slope_property(s);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn params_strings(s in r"[WKwk ]?\( ?-?[0-9]{1,3}( ?, ?-?[0-9]{1,3}){1,4} ?\)?") {
        params_property(&s);
    }

    #[test]
    fn laurent_strings(s in r"(-|\+)?([0-9]{0,3}\*?t(\^(\{|\()?-?[0-9]{1,3}(\}|\))?)?|[0-9]{1,4})( ?(\+|-) ?([0-9]{0,3}t(\^-?[0-9]{1,2})?|[0-9]{1,3})){0,5}") {
        laurent_property(&s);
    }

    #[test]
    fn slope_strings(s in r" ?-?[0-9]{1,7} ?(/ ?-?[0-9]{1,7})?") {
        slope_property(&s);
    }

    #[test]
    fn facts_documents(
        n in 1usize..4,
        known in proptest::collection::vec((0usize..3, 0i64..3, 0u64..4), 0..3),
        kinds in proptest::collection::vec((0usize..3, 0usize..3), 0..3),
        rows in proptest::option::of(1usize..3),
    ) {
        let names = ["A", "B", "C"];
        let objects: Vec<String> = (0..n).map(|i| format!(r#"{{"name":"{}","min":0,"max":1}}"#, names[i])).collect();
        let known: Vec<String> = known.iter().filter(|k| k.0 < n).map(|(o, g, v)| format!(r#"{{"object":"{}","grading":{g},"value":{v}}}"#, names[*o])).collect();
        let maps: Vec<String> = kinds.iter().map(|(m, k)| format!(r#"{{"map":{m},"kind":"{}"}}"#, ["zero", "iso", "unknown"][*k])).collect();
        let slot = |i: usize| format!(r#"{{"object":"{}"}}"#, names[i % n]);
        let rows = rows.map(|r| format!(r#","rows":{r}"#)).unwrap_or_default();
        let doc = format!(
            r#"{{"objects":[{}],"known":[{}],"triangles":[{{"label":"t","slots":[{},{},{}],"maps":[{}]{rows}}}],"goals":[{{"label":"g","lhs":[{{"object":"A"}}],"rhs":[{{"object":"{}"}}]}}]}}"#,
            objects.join(","), known.join(","), slot(0), slot(1), slot(2), maps.join(","), names[n - 1]
        );
        prop_assert!(Facts::from_json(&doc).is_ok(), "{doc}");
        facts_property(&doc);
    }
}
