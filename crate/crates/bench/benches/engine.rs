use std::collections::BTreeMap;

use criterion::{criterion_group, criterion_main, Criterion};
use twistdef::defart::{lift_order, tangent_space};
use twistdef::dgla::{bch, BracketEntry, MatrixLie, RawDgla};
use twistdef::homalg::scalar::int;
use twistdef::scosim::{cech_complex, ThomWhitney};
use twistdef::twisted::{compare_first_order, end_tower, examples, BracketKind, FirstOrderOracle, Gluing};
use twistdef::{Dgla, GradedSpace, Matrix};

fn obstructed() -> Dgla {
    let space = GradedSpace::new(BTreeMap::from([(1, vec!["e".to_string()]), (2, vec!["f".to_string()])])).unwrap();
    let brackets = vec![BracketEntry { x: "e".into(), y: "e".into(), value: vec![("f".into(), int(1))] }];
    Dgla::new(&RawDgla { space, differential: BTreeMap::new(), brackets }).unwrap()
}

fn strictly_upper(n: usize, seed: i64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = int((seed * (i as i64 + 1) + j as i64) % 5 - 2);
        }
    }
    m
}

fn bench_bch(c: &mut Criterion) {
    let (x, y) = (strictly_upper(6, 3), strictly_upper(6, 7));
    c.bench_function("bch nilpotent 6x6", |b| b.iter(|| bch(&MatrixLie, &x, &y, 6).unwrap()));
}

fn bench_lifting(c: &mut Criterion) {
    let l = obstructed();
    let xi = tangent_space(&l).representatives[0].clone();
    c.bench_function("lift to t^8", |b| b.iter(|| lift_order(&l, &xi, 8).unwrap()));
}

fn bench_twisted(c: &mut Criterion) {
    let ex = examples::circle_line_bundle();
    let gl = Gluing::new(&ex.nerve, &ex.alpha, &ex.complex).unwrap();
    c.bench_function("oracle circle line bundle", |b| {
        b.iter(|| compare_first_order(&FirstOrderOracle::new(&gl).unwrap()).unwrap())
    });
    let tp = examples::projective_plane_bundle();
    let gl = Gluing::new(&tp.nerve, &tp.alpha, &tp.complex).unwrap();
    c.bench_function("cech complex projective plane rank 2", |b| {
        b.iter(|| cech_complex(&end_tower(&gl, 2, BracketKind::Commutator).unwrap()).unwrap().complex.betti(1))
    });
}

fn bench_thom_whitney(c: &mut Criterion) {
    let ex = examples::circle_line_bundle();
    let gl = Gluing::new(&ex.nerve, &ex.alpha, &ex.complex).unwrap();
    let g = end_tower(&gl, 2, BracketKind::Commutator).unwrap();
    c.bench_function("thom-whitney circle levels 2", |b| b.iter(|| ThomWhitney::new(&g, 2, 2).unwrap().complex().betti(1)));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench_bch, bench_lifting, bench_twisted, bench_thom_whitney
}
criterion_main!(benches);
