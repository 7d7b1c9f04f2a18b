//! Filtered nerve chains and their homology on the default rayon pool against
//! a single-thread pool.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use jmx_core::actions::{tensor_product, MonoidKind};
use jmx_core::homology::{filtered_bm_chains, homology_groups, FilteredNerveJob};
use jmx_core::presentations::FinMonoid;
use jmx_core::simplicial::simplicial_circle;

fn jobs() -> Vec<(&'static str, FilteredNerveJob)> {
    let circle = |t| simplicial_circle(t).expect("circle");
    vec![
        ("milnor_k3", FilteredNerveJob::new(tensor_product(&circle(4), &MonoidKind::Z, 4).expect("family"), 3, 3)),
        (
            "wu_k4",
            FilteredNerveJob::new(
                tensor_product(&circle(5), &MonoidKind::Finite(FinMonoid::cyclic(2)), 5).expect("family"),
                4,
                4,
            ),
        ),
    ]
}

fn bench(c: &mut Criterion) {
    let pools = [
        ("default", rayon::ThreadPoolBuilder::new().build().expect("pool")),
        ("one_thread", rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("pool")),
    ];
    let mut chains = c.benchmark_group("filtered_chains");
    chains.sample_size(10);
    for (name, job) in jobs() {
        for (pool_name, pool) in &pools {
            chains.bench_with_input(BenchmarkId::new(name, pool_name), &job, |b, job| {
                b.iter(|| pool.install(|| filtered_bm_chains(black_box(job)).expect("within budget")))
            });
        }
    }
    chains.finish();
    let mut homology = c.benchmark_group("homology");
    homology.sample_size(10);
    for (name, job) in jobs() {
        let complex = filtered_bm_chains(&job).expect("within budget");
        for (pool_name, pool) in &pools {
            homology.bench_with_input(BenchmarkId::new(name, pool_name), &complex, |b, c| {
                b.iter(|| pool.install(|| homology_groups(black_box(c))))
            });
        }
    }
    homology.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
