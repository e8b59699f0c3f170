//! Benchmarks for the hot paths: symmetry decisions on random books, the
//! branched-cover search, and grid positivity sweeps.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use spinal_core::covers::{exists_cover, CoverSpec, SearchBounds};
use spinal_core::forms::{contact_check, models, Tolerances};
use spinal_core::obstructions::is_symmetric;
use spinal_core::random::{random_closed_book, BookGenConfig};
use spinal_core::surfaces::Surface;

fn bench_symmetry(c: &mut Criterion) {
    let cfg = BookGenConfig::default();
    let books: Vec<_> = (0..64).map(|seed| random_closed_book(seed, &cfg)).collect();
    c.bench_function("is_symmetric/64 random books", |b| {
        b.iter(|| {
            let mut hits = 0usize;
            for sob in &books {
                if is_symmetric(sob).unwrap().holds() {
                    hits += 1;
                }
            }
            hits
        })
    });
}

fn bench_covers(c: &mut Criterion) {
    let bounds = SearchBounds::default();
    c.bench_function("exists_cover/k=4 annulus", |b| {
        let spec = CoverSpec::unbranched(Surface::annulus(), 4, vec![vec![2, 2], vec![4]]);
        b.iter_batched(
            || spec.clone(),
            |spec| exists_cover(&spec, &bounds).unwrap().exists,
            BatchSize::SmallInput,
        )
    });
    c.bench_function("exists_cover/k=4 genus-1 base", |b| {
        let spec = CoverSpec::unbranched(Surface::orientable(1, 1), 4, vec![vec![2, 1, 1]]);
        b.iter_batched(
            || spec.clone(),
            |spec| exists_cover(&spec, &bounds).unwrap().exists,
            BatchSize::SmallInput,
        )
    });
}

fn bench_grid_checks(c: &mut Criterion) {
    let tol = Tolerances::default();
    let chart = models::collar_chart_3d(32);
    let alpha = models::collar_contact_form(1.0);
    c.bench_function("contact_check/32^3", |b| {
        b.iter(|| contact_check(&chart, &alpha, &tol).unwrap().pass)
    });
}

criterion_group!(benches, bench_symmetry, bench_covers, bench_grid_checks);
criterion_main!(benches);
