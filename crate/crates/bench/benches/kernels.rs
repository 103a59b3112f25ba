use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use covers::algebra::{identify_in_a, series_z, LaurentPolyX};
use covers::cayley::distance_histogram;
use covers::gravity::painleve_solve;
use covers::hurwitz::{hurwitz_connected, CoveringSpec, Partition};

fn series(c: &mut Criterion) {
    let z = series_z(60);
    c.bench_function("series Z^3 to order 60", |b| b.iter(|| black_box(&z).pow(3)));
    let target = LaurentPolyX::z().pow(3).unwrap().to_series(40);
    c.bench_function("identify Z^3 in X^-6..X^3", |b| {
        b.iter(|| identify_in_a(black_box(&target), -6, 3, 5).unwrap())
    });
}

fn oracle(c: &mut Criterion) {
    let genus_one = CoveringSpec::new(1, 8, vec![Partition::new(vec![2, 1])]).unwrap();
    c.bench_function("hurwitz g=1 n=8 (2,1)", |b| b.iter(|| hurwitz_connected(black_box(&genus_one)).unwrap()));
    let genus_zero = CoveringSpec::new(0, 9, vec![Partition::new(vec![3, 1, 1])]).unwrap();
    c.bench_function("hurwitz g=0 n=9 (3,1,1)", |b| b.iter(|| hurwitz_connected(black_box(&genus_zero)).unwrap()));
}

fn trees(c: &mut Criterion) {
    c.bench_function("tree distance histogram n=7", |b| b.iter(|| distance_histogram(black_box(7)).unwrap()));
}

fn painleve(c: &mut Criterion) {
    c.bench_function("painleve through g=10", |b| b.iter(|| painleve_solve(black_box(10)).unwrap()));
}

criterion_group!(benches, series, oracle, trees, painleve);
criterion_main!(benches);
