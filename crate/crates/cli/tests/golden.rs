mod common;
use common::{repo, run};

const KINDS: [&str; 8] = ["dgla", "artin", "tower", "nerve", "brauer", "bundle", "complex", "pairing"];

#[test]
fn every_kind_has_a_golden_check_report() {
    for k in KINDS {
        let input = repo(&format!("docs/golden/{k}.json"));
        let expected = std::fs::read_to_string(repo(&format!("docs/golden/{k}.check.json"))).unwrap();
        let out = run(&["check", &input, "--format", "json"]);
        assert_eq!(out.stdout, expected, "golden mismatch for {k}");
        assert_eq!(out.code, 0, "{k}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for (c, f) in [
        ("compare-theorem", "examples/circle_line_bundle.json"),
        ("lift", "examples/obstructed.json"),
        ("deform", "examples/circle_line_bundle.json"),
        ("tot", "docs/golden/tower.json"),
        ("check", "docs/golden/brauer.json"),
    ] {
        for format in ["json", "text"] {
            let a = run(&[c, &repo(f), "--format", format]);
            let b = run(&[c, &repo(f), "--format", format]);
            assert_eq!(a, b, "{c} {f}");
        }
    }
}

fn keys_sorted(v: &serde_json::Value) -> bool {
    match v {
        serde_json::Value::Object(m) => {
            let keys: Vec<&String> = m.keys().collect();
            keys.windows(2).all(|w| w[0] < w[1]) && m.values().all(keys_sorted)
        }
        serde_json::Value::Array(a) => a.iter().all(keys_sorted),
        _ => true,
    }
}

#[test]
fn json_reports_have_sorted_keys_and_string_rationals() {
    let out = run(&["deform", &repo("examples/circle_line_bundle.json"), "--format", "json"]);
    let text = &out.stdout;
    let v: serde_json::Value = serde_json::from_str(text).unwrap();
    assert!(keys_sorted(&v));
    let mut order = Vec::new();
    for k in ["\"command\"", "\"findings\"", "\"status\"", "\"witnesses\""] {
        order.push(text.find(k).unwrap());
    }
    assert!(order.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(v["findings"]["basis"][0]["m"]["{a,b}"][0][0], "1");
}
