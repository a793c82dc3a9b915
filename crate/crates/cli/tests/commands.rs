mod common;
use common::{json, repo, run};

#[test]
fn abelian_example_checks() {
    let out = run(&["check", &repo("examples/abelian.json")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.starts_with("OK:"));
}

#[test]
fn circle_line_bundle_compares() {
    let out = run(&["compare-theorem", &repo("examples/circle_line_bundle.json"), "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v = json(&out);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["findings"]["oracle_dim"], 1);
    assert_eq!(v["findings"]["h1_dim"], 1);
}

#[test]
fn obstructed_example_fails_to_lift() {
    let out = run(&["lift", &repo("examples/obstructed.json"), "--xi", "e", "--order", "3", "--format", "json"]);
    assert_eq!(out.code, 1);
    let v = json(&out);
    assert_eq!(v["status"], "violation");
    assert_eq!(v["findings"]["obstruction"], "-1/2 f");
    assert!(!v["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn lift_to_order_two_succeeds() {
    let out = run(&["lift", &repo("examples/obstructed.json"), "--xi", "e", "--order", "2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}

#[test]
fn obstruct_reports_the_class() {
    let v = json(&run(&["obstruct", &repo("examples/obstructed.json"), "--format", "json"]));
    assert_eq!(v["witnesses"][0]["obstruction"], "-1/2 f");
}

#[test]
fn xi_must_be_a_cocycle_label() {
    let out = run(&["lift", &repo("examples/abelian.json"), "--xi", "f"]);
    assert_eq!(out.code, 2);
    let out = run(&["lift", &repo("examples/abelian.json"), "--xi", "nope"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("nope"));
}

#[test]
fn bundle_commands_succeed() {
    let f = repo("examples/circle_line_bundle.json");
    for c in ["check", "cohomology", "tangent", "obstruct", "h1sc-check", "tot", "whitney-roundtrip", "deform"] {
        let out = run(&[c, &f]);
        assert_eq!(out.code, 0, "{c}: {}", out.stdout);
    }
    let v = json(&run(&["deform", &f, "--format", "json"]));
    assert_eq!(v["findings"]["dimension"], 1);
}

#[test]
fn tower_commands_succeed() {
    let f = repo("docs/golden/tower.json");
    for c in ["check", "cohomology", "tangent", "h1sc-check", "h1sc-equiv", "tot", "whitney-roundtrip"] {
        let out = run(&[c, &f]);
        assert_eq!(out.code, 0, "{c}: {}", out.stdout);
    }
}

#[test]
fn wrong_kind_is_an_error() {
    let out = run(&["deform", &repo("examples/abelian.json")]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.starts_with("ERROR:"));
}

#[test]
fn seed_changes_only_the_samples() {
    let f = repo("examples/circle_line_bundle.json");
    let a = json(&run(&["compare-theorem", &f, "--format", "json"]));
    let b = json(&run(&["compare-theorem", &f, "--format", "json", "--seed", "7"]));
    assert_eq!(a["findings"]["oracle_dim"], b["findings"]["oracle_dim"]);
    assert_eq!(b["findings"]["seed"], 7);
}

#[test]
fn pairing_check_accepts_the_trace_form() {
    let out = run(&["pairing-check", &repo("docs/golden/pairing.json")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
}
