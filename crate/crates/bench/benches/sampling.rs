use std::sync::Arc;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use truncvote::experiments::{run_success_rate, ExperimentConfig, ProfileSource};
use truncvote::mallows::{sample, MallowsModel};
use truncvote::preflib::{resample, Sampling};
use truncvote::rng::rng_from_seed;
use truncvote::TieBreak;
use truncvote_bench::partial_ballot_dataset;

fn mallows(c: &mut Criterion) {
    let mut group = c.benchmark_group("mallows draw");
    for m in [7, 20] {
        for phi in [0.7, 1.0] {
            let model = MallowsModel::with_identity(m, phi).unwrap();
            let mut rng = rng_from_seed(1);
            group.bench_function(BenchmarkId::new(format!("phi={phi}"), m), |b| {
                b.iter(|| sample(black_box(&model), &mut rng))
            });
        }
    }
    group.finish();
}

fn resampling(c: &mut Criterion) {
    let ds = partial_ballot_dataset(12, 3662, 2);
    let mut rng = rng_from_seed(3);
    for n_star in [50, 2000] {
        c.bench_function(&format!("resample n*={n_star}"), |b| {
            b.iter(|| resample(black_box(&ds), n_star, Sampling::WithoutReplacement, &mut rng).unwrap())
        });
    }
    let dataset = Arc::new(ds);
    let cfg = ExperimentConfig {
        source: ProfileSource::PreflibResample {
            dataset,
            n_star: 50,
            sampling: Sampling::WithoutReplacement,
        },
        rules: ["harmonic", "stv"].map(|r| r.parse().unwrap()).to_vec(),
        k_values: vec![1, 2, 3],
        trials: 100,
        base_seed: 4,
        tiebreak: TieBreak::ascending(12),
        workers: 1,
    };
    c.bench_function("success rate 100 trials real-data", |b| {
        b.iter(|| run_success_rate(black_box(&cfg)).unwrap())
    });
}

fn experiment(c: &mut Criterion) {
    let cfg = ExperimentConfig {
        source: ProfileSource::Mallows {
            m: 7,
            phi: 0.8,
            n: 100,
        },
        rules: ["borda", "copeland", "stv"].map(|r| r.parse().unwrap()).to_vec(),
        k_values: vec![1, 2],
        trials: 100,
        base_seed: 5,
        tiebreak: TieBreak::ascending(7),
        workers: 1,
    };
    c.bench_function("success rate 100 trials mallows", |b| {
        b.iter(|| run_success_rate(black_box(&cfg)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(20);
    targets = mallows, resampling, experiment
}
criterion_main!(benches);
