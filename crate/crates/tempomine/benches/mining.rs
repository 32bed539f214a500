//! Benchmarks comparing the data-parallel mining path against the
//! single-worker fallback on a synthetic corpus. Build with
//! `--no-default-features` to measure the fully sequential build.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tempomine::cig::construct_cig;
use tempomine::miner::{self, IsoKind, IsoMode, MinerConfig, Support};
use tempomine::temporal::{DataSet, TemporalEdge, TemporalNetwork};
use tempomine::vocab::Vocab;

fn synthetic_dataset(networks: usize, edges: usize) -> DataSet {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut vocab = Vocab::new();
    let mut ds = DataSet::default();
    for n in 0..networks {
        let mut es = Vec::new();
        while es.len() < edges {
            let u = rng.gen_range(0..8u32);
            let v = rng.gen_range(0..8u32);
            if u == v {
                continue;
            }
            let a = vocab.attr(&format!("a{}", rng.gen_range(0..2)));
            let e = TemporalEdge::new(
                vocab.vertex(&format!("p{u}")),
                a,
                vocab.vertex(&format!("p{v}")),
                a,
                a,
                rng.gen_range(0..20) as f64,
                rng.gen_range(1..5) as f64,
            )
            .unwrap();
            es.push(e);
        }
        ds.push(TemporalNetwork::from_edges(format!("n{n}"), es))
            .unwrap();
    }
    ds
}

fn config(workers: usize) -> MinerConfig {
    MinerConfig {
        min_supp: Support::Absolute(3),
        iso: IsoMode {
            kind: IsoKind::Exact,
            duration_bin: None,
        },
        delay_bin: None,
        max_pattern_edges: Some(5),
        time_eps: 0.0,
        workers,
    }
}

fn bench_cig_construction(c: &mut Criterion) {
    let ds = synthetic_dataset(64, 40);
    let mut group = c.benchmark_group("construct_cig_batch");
    for workers in [1usize, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &w| {
            b.iter(|| tempomine::par::map(&ds.networks, construct_cig, w));
        });
    }
    group.finish();
}

fn bench_mining(c: &mut Criterion) {
    let ds = synthetic_dataset(24, 10);
    let mut group = c.benchmark_group("mine");
    group.sample_size(10);
    for workers in [1usize, 4] {
        group.bench_with_input(BenchmarkId::from_parameter(workers), &workers, |b, &w| {
            b.iter(|| miner::mine(&ds, &config(w)).unwrap());
        });
    }
    group.finish();
}

criterion_group!(benches, bench_cig_construction, bench_mining);
criterion_main!(benches);
