use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coboson::{oracle, ChiTable};
use coboson_bench::dirichlet;

fn chi_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("chi_table");
    for modes in [100, 1000, 4000] {
        let spectrum = dirichlet(modes);
        group.bench_with_input(BenchmarkId::from_parameter(modes), &spectrum, |b, s| {
            b.iter(|| ChiTable::new(s, s.mode_count()).unwrap())
        });
    }
    group.finish();
}

fn oracles(c: &mut Criterion) {
    let spectrum = dirichlet(6);
    c.bench_function("enumeration_m6", |b| {
        b.iter(|| (0..=6).map(|n| oracle::chi_by_enumeration(&spectrum, n).unwrap()).sum::<f64>())
    });
    c.bench_function("fock_m6", |b| {
        b.iter(|| {
            let space = oracle::PairFockSpace::new(&spectrum).unwrap();
            (1..=6).map(|n| space.epsilon_norm(n).unwrap()).sum::<f64>()
        })
    });
}

criterion_group!(benches, chi_table, oracles);
criterion_main!(benches);
