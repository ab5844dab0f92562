use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use truncvote::ballots::{dominance_tally, truncate};
use truncvote::rules::apply_rule;
use truncvote::{RuleId, TieBreak};
use truncvote_bench::{mallows_profile, partial_ballot_dataset};

fn winners(c: &mut Criterion) {
    let mut group = c.benchmark_group("winner");
    for m in [7, 12, 20] {
        let profile = mallows_profile(m, 0.9, 2000, 11);
        let tb = TieBreak::ascending(m);
        for name in [
            "borda",
            "harmonic@k=3:zero",
            "copeland@k=3",
            "maximin@k=3",
            "rp@k=3",
            "stv@k=3",
        ] {
            let rule: RuleId = name.parse().unwrap();
            group.bench_with_input(BenchmarkId::new(name, m), &profile, |b, p| {
                b.iter(|| apply_rule(black_box(&rule), p, &tb).unwrap())
            });
        }
    }
    group.finish();
}

fn tallies(c: &mut Criterion) {
    let profile = mallows_profile(12, 0.9, 2000, 12);
    c.bench_function("truncate m=12 k=3", |b| {
        b.iter(|| truncate(black_box(&profile), 3).unwrap())
    });
    let topk = truncate(&profile, 3).unwrap();
    c.bench_function("dominance tally m=12 k=3", |b| {
        b.iter(|| dominance_tally(black_box(&topk)))
    });
    let partial = partial_ballot_dataset(12, 3000, 13).to_topk_profile().unwrap();
    let stv: RuleId = "stv".parse().unwrap();
    c.bench_function("stv on partial ballots m=12", |b| {
        b.iter(|| apply_rule(&stv, black_box(&partial), &TieBreak::ascending(12)).unwrap())
    });
}

criterion_group!(benches, winners, tallies);
criterion_main!(benches);
