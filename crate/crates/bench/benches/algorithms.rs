use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use greenseq::stability::candidates;
use greenseq::{
    dn_charge, enumerate_max_sets, mgs, parse_quiver, reineke_charge, stable_set, valid_pairs, verify_equivalence,
    witness_linear, witness_spliced, CentralCharge, ChargeView, Criterion as Test, Quiver, Stability, StringModule,
};

fn stable_sets(c: &mut Criterion) {
    let mut g = c.benchmark_group("stable_set");
    for n in [4usize, 8, 12] {
        let q = parse_quiver(&format!("Dcyc:{n}")).unwrap();
        let z = dn_charge(&q, 1).unwrap();
        g.bench_with_input(BenchmarkId::new("cycle", n), &n, |b, _| b.iter(|| stable_set(&q, black_box(&z)).unwrap()));
    }
    for spec in ["At:++--", "At:+++---", "At:++++----"] {
        let q = parse_quiver(spec).unwrap();
        let (k, l) = valid_pairs(&q)[0];
        let z = witness_linear(&q, k, l).unwrap();
        g.bench_function(BenchmarkId::new("affine", spec), |b| b.iter(|| stable_set(&q, black_box(&z)).unwrap()));
    }
    g.finish();
}

fn criteria(c: &mut Criterion) {
    let q = parse_quiver("A:+-+-+-+").unwrap();
    let z = reineke_charge(&q).unwrap();
    let view = ChargeView::new(&q, &z).unwrap();
    let ms: Vec<StringModule> = candidates(&q);
    let mut g = c.benchmark_group("classify");
    for (name, t) in [("oracle", Test::Oracle), ("chord", Test::Chord), ("wire", Test::Wire)] {
        g.bench_function(name, |b| b.iter(|| ms.iter().filter(|m| view.classify(**m, t) == Stability::Stable).count()));
    }
    g.finish();
}

/// First charge from a fixed pseudo-random stream that admits a maximal green sequence.
fn generic_charge(q: &Quiver, n: usize) -> CentralCharge {
    let mut x: i64 = 12_345;
    let mut next = move || {
        x = (x * 1_103_515_245 + 12_345).rem_euclid(1 << 31);
        x % 997
    };
    loop {
        let a: Vec<i64> = (0..n).map(|_| next() - 498).collect();
        let b: Vec<i64> = (0..n).map(|_| next() + 1).collect();
        let z = CentralCharge::from_ints(&a, &b).unwrap();
        if mgs(q, &z).is_ok() {
            return z;
        }
    }
}

fn sequences(c: &mut Criterion) {
    let mut g = c.benchmark_group("mgs");
    for n in [4usize, 8, 12] {
        let q = parse_quiver(&format!("A:{}", "+-".repeat(n).chars().take(n - 1).collect::<String>())).unwrap();
        let z = generic_charge(&q, n);
        g.bench_with_input(BenchmarkId::new("a_n", n), &n, |b, _| b.iter(|| mgs(&q, black_box(&z)).unwrap()));
    }
    g.finish();
}

fn witnesses(c: &mut Criterion) {
    let q = parse_quiver("At:+++---").unwrap();
    c.bench_function("witness/linear", |b| b.iter(|| witness_linear(&q, 1, 4).unwrap()));
    c.bench_function("witness/spliced", |b| b.iter(|| witness_spliced(&q, 2, 5).unwrap()));
    c.bench_function("maxsets/+++---", |b| b.iter(|| enumerate_max_sets(&q).unwrap()));
}

fn homs(c: &mut Criterion) {
    let q = parse_quiver("At:++--").unwrap();
    let ms: Vec<StringModule> = candidates(&q);
    c.bench_function("hom_dim/all_pairs", |b| {
        b.iter(|| ms.iter().flat_map(|x| ms.iter().map(move |y| (x, y))).map(|(x, y)| q.hom_dim(*x, *y)).sum::<usize>())
    });
}

fn fuzz(c: &mut Criterion) {
    let qs = vec![parse_quiver("At:+-+").unwrap(), parse_quiver("Dcyc:4").unwrap()];
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    g.bench_function("50_trials", |b| b.iter(|| verify_equivalence(&qs, 50, 7, 64, 1).unwrap()));
    g.finish();
}

criterion_group!(benches, stable_sets, criteria, sequences, witnesses, homs, fuzz);
criterion_main!(benches);
