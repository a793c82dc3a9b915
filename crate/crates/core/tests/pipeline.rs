//! End-to-end use of the public API.
use std::collections::BTreeMap;

use twistdef::defart::{lift_order, primary_obstruction, quadraticity_probe, default_samples, tangent_space};
use twistdef::dgla::{BracketEntry, RawDgla};
use twistdef::homalg::scalar::{format_scalar, frac, int, parse_scalar};
use twistdef::scosim::{cech_complex, ThomWhitney};
use twistdef::twisted::{
    compare_first_order, end_tower, examples, obstruction_second_order, validate_brauer, BracketKind, FirstOrderOracle,
    Gluing, SignSearch,
};
use twistdef::{ArtinAlgebra, Dgla, GradedSpace, Scalar};

fn obstructed() -> Dgla {
    let space = GradedSpace::new(BTreeMap::from([(1, vec!["e".to_string()]), (2, vec!["f".to_string()])])).unwrap();
    let brackets = vec![BracketEntry { x: "e".into(), y: "e".into(), value: vec![("f".into(), int(1))] }];
    Dgla::new(&RawDgla { space, differential: BTreeMap::new(), brackets }).unwrap()
}

#[test]
fn scalars_round_trip() {
    for s in ["0", "3", "-1/2", "7/9"] {
        assert_eq!(format_scalar(&parse_scalar(s).unwrap()), s);
    }
    assert_eq!(parse_scalar("4/6").unwrap(), frac(2, 3));
    assert!(parse_scalar("1/0").is_err());
}

#[test]
fn obstructed_dgla_lifts_once() {
    let l = obstructed();
    assert_eq!(tangent_space(&l).dimension, 1);
    assert_eq!(primary_obstruction(&l, &[int(1)]).unwrap(), vec![frac(-1, 2)]);
    let s = lift_order(&l, &[int(1)], 3).unwrap();
    assert_eq!(s.reached, 2);
    assert_eq!(s.obstruction, Some((2, vec![frac(-1, 2)])));
    assert!(lift_order(&l, &[int(1)], 2).unwrap().succeeded());
}

#[test]
fn quadraticity_holds_for_the_obstructed_example() {
    let l = obstructed();
    let r = quadraticity_probe(&l, &default_samples(&l, &[]), 6).unwrap();
    assert!(r.passed());
    assert!(r.all_obstructions_primary);
}

#[test]
fn artin_presentations() {
    let a = ArtinAlgebra::parse("k[t]/(t^4)").unwrap();
    assert_eq!((a.dim(), a.nil_index()), (3, 4));
    let b = ArtinAlgebra::parse("k[x,y]/(x,y)^3").unwrap();
    assert_eq!(b.dim(), 5);
    assert!(ArtinAlgebra::parse("k[t]/(s^2)").is_err());
}

#[test]
fn circle_line_bundle_end_to_end() {
    let ex = examples::circle_line_bundle();
    let gl = Gluing::new(&ex.nerve, &ex.alpha, &ex.complex).unwrap();
    let g = end_tower(&gl, 2, BracketKind::Commutator).unwrap();
    let cech = cech_complex(&g).unwrap();
    assert_eq!((cech.complex.betti(0), cech.complex.betti(1)), (1, 1));
    let tw = ThomWhitney::new(&g, 2, 2).unwrap();
    assert_eq!(tw.complex().betti(1), 1);
    let o = FirstOrderOracle::new(&gl).unwrap();
    let c = compare_first_order(&o).unwrap();
    assert!(c.agree());
    assert_eq!((c.oracle_dim, c.h1_dim), (1, 1));
    let x = &o.basis()[0];
    let r = obstruction_second_order(&o, x, BracketKind::Commutator).unwrap();
    assert!(r.oracle_extends && r.model_extends);
}

#[test]
fn tetrahedron_twist_is_not_a_coboundary() {
    let n = examples::tetrahedron();
    let alpha = examples::tetrahedron_twist(&n);
    let r = validate_brauer(&n, &alpha);
    assert!(r.check.is_valid());
    assert!(matches!(r.search, SignSearch::NotCoboundary { assignments: 64 }));
}

#[test]
fn torus_bundle_comparison() {
    let ex = examples::torus_bundle();
    let gl = Gluing::new(&ex.nerve, &ex.alpha, &ex.complex).unwrap();
    let o = FirstOrderOracle::new(&gl).unwrap();
    let c = compare_first_order(&o).unwrap();
    assert_eq!((c.oracle_dim, c.h1_dim), (2, 2));
    let sum: Vec<Scalar> = vec![int(1), int(1)];
    let r = obstruction_second_order(&o, &o.combination(&sum), BracketKind::Commutator).unwrap();
    assert!(r.agree());
}
