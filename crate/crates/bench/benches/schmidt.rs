use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use coboson::wavefunction::{schmidt_from_grid, HydrogenTrapModel};
use coboson::DEFAULT_ZERO_THRESHOLD;
use coboson_bench::double_gaussian;

fn grid_svd(c: &mut Criterion) {
    let mut group = c.benchmark_group("schmidt_from_grid");
    group.sample_size(10);
    for points in [64, 128, 256] {
        let wf = double_gaussian(points);
        group.bench_with_input(BenchmarkId::from_parameter(points), &wf, |b, wf| {
            b.iter(|| schmidt_from_grid(wf, DEFAULT_ZERO_THRESHOLD).unwrap())
        });
    }
    group.finish();
}

fn hydrogen(c: &mut Criterion) {
    let model = HydrogenTrapModel::from_ratio(10.0).unwrap();
    c.bench_function("hydrogen_purity_quadrature", |b| b.iter(|| model.purity_quadrature().unwrap()));
}

criterion_group!(benches, grid_svd, hydrogen);
criterion_main!(benches);
