use truncvote_bench::{mallows_profile, partial_ballot_dataset};

#[test]
fn fixtures_are_deterministic() {
    assert_eq!(mallows_profile(7, 0.8, 300, 1), mallows_profile(7, 0.8, 300, 1));
    assert_eq!(
        partial_ballot_dataset(12, 500, 2),
        partial_ballot_dataset(12, 500, 2)
    );
}

#[test]
fn partial_dataset_shape() {
    let ds = partial_ballot_dataset(12, 500, 2);
    assert_eq!((ds.m(), ds.n()), (12, 500));
    assert!(ds.ballots().iter().all(|(b, _)| (1..12).contains(&b.len())));
    assert!(ds.ballots().iter().any(|(b, _)| b.len() == 1));
}
