//! Benchmark the bounded search: all available workers against a single
//! worker, on a reduced restart count so a run stays in the seconds range.

use criterion::{criterion_group, criterion_main, Criterion};
use geog4::search::{run_search, SearchSpec};

fn bench_spec() -> SearchSpec {
    SearchSpec { restarts: 8, ..SearchSpec::default() }
}

fn search_parallel(c: &mut Criterion) {
    let spec = bench_spec();
    c.bench_function("search/default-workers", |b| {
        b.iter(|| run_search(&spec, None).expect("search"))
    });
}

#[cfg(feature = "parallel")]
fn search_single_worker(c: &mut Criterion) {
    let spec = bench_spec();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool");
    c.bench_function("search/one-worker", |b| {
        b.iter(|| pool.install(|| run_search(&spec, None).expect("search")))
    });
}

#[cfg(not(feature = "parallel"))]
fn search_single_worker(_c: &mut Criterion) {}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = search_parallel, search_single_worker
}
criterion_main!(benches);
