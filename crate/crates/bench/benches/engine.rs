use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use emlindex_core::exact::{b_series_coefficients, int, Cyclotomic};
use emlindex_core::geometry::{build_p1, build_pushed_symbol};
use emlindex_core::qtheta::expand_twisted_pair;
use emlindex_core::{em_pairing, Sign};

fn exact(c: &mut Criterion) {
    c.bench_function("b_series/16", |b| b.iter(|| b_series_coefficients(black_box(16)).unwrap()));
    let z = Cyclotomic::root(12, 5) + Cyclotomic::root(12, 1).scale(&int(3));
    c.bench_function("cyclotomic/inverse_z12", |b| b.iter(|| black_box(&z).inverse().unwrap()));
    c.bench_function("expand_twisted_pair/z3_q8", |b| {
        let zeta = Cyclotomic::root(3, 1);
        b.iter(|| expand_twisted_pair(black_box(&zeta), 2, 8).unwrap())
    });
}

fn p1(c: &mut Criterion) {
    let mut group = c.benchmark_group("p1");
    for a in [3u32, 10] {
        let d = build_p1(a);
        group.bench_with_input(BenchmarkId::new("families_q8", a), &d, |b, d| b.iter(|| d.identity_family(8).unwrap()));
        group.bench_with_input(BenchmarkId::new("multiplicities", a), &d, |b, d| {
            b.iter(|| d.multiplicities(8, -5, a as i64 + 5, Sign::Plus).unwrap())
        });
        let fam = d.identity_family(8).unwrap();
        let f = vec![int(0), int(0), int(0), int(0), int(0), int(0), int(1)];
        group.bench_with_input(BenchmarkId::new("em_xi6", a), &fam, |b, fam| b.iter(|| em_pairing(fam, &f).unwrap()));
    }
    group.finish();
}

fn pushed(c: &mut Criterion) {
    let mut group = c.benchmark_group("pushed");
    group.sample_size(20);
    for w in [vec![1i64, 2], vec![2, 3], vec![1, 2, 3]] {
        let name = w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let d = build_pushed_symbol(&w).unwrap();
        group.bench_with_input(BenchmarkId::new("window_0_50", &name), &d, |b, d| {
            b.iter(|| d.multiplicities(8, 0, 50, Sign::Plus).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, exact, p1, pushed);
criterion_main!(benches);
