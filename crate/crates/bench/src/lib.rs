//! Deterministic inputs shared by the benches.

use truncvote::mallows::{sample_profile, MallowsModel};
use truncvote::preflib::ElectionDataset;
use truncvote::rng::rng_from_seed;
use truncvote::Profile;

/// A Mallows profile around `0 ≻ 1 ≻ … ≻ m−1`.
pub fn mallows_profile(m: usize, phi: f64, n: u64, seed: u64) -> Profile {
    let model = MallowsModel::with_identity(m, phi).expect("valid model");
    sample_profile(&model, n, &mut rng_from_seed(seed)).expect("n > 0")
}

/// A real-election stand-in: Mallows ballots cut to varying lengths, the
/// way voters in ranked-choice elections often stop early.
pub fn partial_ballot_dataset(m: usize, n: u64, seed: u64) -> ElectionDataset {
    let profile = mallows_profile(m, 0.9, n, seed);
    let ballots = profile
        .entries()
        .iter()
        .enumerate()
        .map(|(i, (r, c))| {
            let len = 1 + (i * 7 + 3) % (m - 1);
            (r.as_slice()[..len].to_vec(), *c)
        })
        .collect();
    let names = (1..=m).map(|i| format!("candidate {i}")).collect();
    ElectionDataset::new(names, ballots).expect("valid dataset")
}
