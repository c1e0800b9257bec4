//! Parallel against sequential kernels. `Matrix::mul` runs rows on rayon when
//! the `parallel` feature is on; `mul_sequential` is the plain loop. The
//! module-level benches use whichever path the build selected, so compare a
//! default run against `cargo bench --no-default-features`.

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use superchar::operator::{char_matrix, CharKind};
use superchar::tower::power_supertrace;
use superchar::*;

fn kac(even: &[i64], odd: &[i64]) -> GModule {
    build_kac_module(&Weight::from_ints(even, odd)).expect("typical weight")
}

fn matrix_products(c: &mut Criterion) {
    let mut group = c.benchmark_group("generator_product");
    for (label, m) in [("gl12_dim8", kac(&[4], &[0, -1])), ("gl22_dim96", kac(&[2, 0], &[4, 3]))] {
        let a = m.gen(1, 3).add(m.gen(2, 1));
        let b = m.gen(3, 1).add(m.gen(1, 2));
        let ab = a.mul(&b);
        group.bench_with_input(BenchmarkId::new(format!("parallel_{}", parallel::enabled()), label), &(), |bench, _| {
            bench.iter(|| black_box(ab.mul(&a)))
        });
        group.bench_with_input(BenchmarkId::new("sequential", label), &(), |bench, _| {
            bench.iter(|| black_box(ab.mul_sequential(&a)))
        });
    }
    group.finish();
}

fn module_kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("module");
    group.sample_size(10);
    let m = kac(&[5], &[1, -2]);
    group.bench_function("kac_build_gl12", |b| b.iter(|| black_box(kac(&[5], &[1, -2]))));
    group.bench_function("char_matrix_gl12", |b| b.iter(|| black_box(char_matrix(&m, CharKind::Vector))));
    let x = char_matrix(&m, CharKind::Vector);
    group.bench_function("power_supertrace_k4_gl12", |b| b.iter(|| black_box(power_supertrace(&x, &m, 4))));
    group.finish();
}

criterion_group!(benches, matrix_products, module_kernels);
criterion_main!(benches);
