//! Sequential-versus-parallel timings for the two data-parallel kernels:
//! exhaustive enumeration (work split over first-column permutation ranks)
//! and Kauffman-bracket state sums (split over resolution blocks).

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use gridatlas::{enumerate, kauffman_bracket, Exec, GridDiagram};
use std::hint::black_box;

fn modes() -> [(&'static str, Exec); 2] {
    [
        ("sequential", Exec::Sequential),
        ("parallel", Exec::Parallel),
    ]
}

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for n in [5usize, 6] {
        for (label, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(label, n), &n, |b, &n| {
                b.iter(|| enumerate(black_box(n), true, exec).len());
            });
        }
    }
    group.finish();
}

fn bench_bracket(c: &mut Criterion) {
    // A dense 8×8 knot diagram (19 crossings), so the 2^19-state sum
    // dominates the runtime.
    let g = GridDiagram::new(vec![2, 3, 1, 5, 7, 0, 6, 4], vec![4, 5, 6, 0, 1, 7, 2, 3]).unwrap();
    let crossings = g.crossings().len();

    let mut group = c.benchmark_group("kauffman_bracket");
    group.sample_size(10);
    for (label, exec) in modes() {
        group.bench_function(BenchmarkId::new(label, crossings), |b| {
            b.iter(|| kauffman_bracket(black_box(&g), 24, exec).unwrap());
        });
    }
    group.finish();
}

criterion_group!(kernels, bench_enumerate, bench_bracket);
criterion_main!(kernels);
