//! Single-winner STV (instant runoff) with ballot exhaustion.

use crate::ballots::{CandidateId, TieBreak, TopKProfile};

/// Runs elimination rounds until one candidate remains.
///
/// Each round, every ballot counts for its highest-listed remaining candidate;
/// a ballot whose listed candidates are all eliminated is exhausted and counts
/// for nobody. The candidate with the fewest votes is eliminated, and among
/// equal counts the one ranked last by `tb` goes first.
pub(crate) fn stv_count<'a>(
    m: usize,
    ballots: impl Iterator<Item = (&'a [CandidateId], u64)> + Clone,
    tb: &TieBreak,
) -> CandidateId {
    let mut eliminated = vec![false; m];
    let mut tallies = vec![0u64; m];
    for _ in 1..m {
        tallies.iter_mut().for_each(|t| *t = 0);
        for (order, count) in ballots.clone() {
            if let Some(top) = order.iter().find(|c| !eliminated[c.index()]) {
                tallies[top.index()] += count;
            }
        }
        let loser = (0..m)
            .filter(|&c| !eliminated[c])
            .min_by(|&a, &b| {
                tallies[a]
                    .cmp(&tallies[b])
                    .then(tb.rank(CandidateId(b)).cmp(&tb.rank(CandidateId(a))))
            })
            .expect("at least two candidates remain");
        eliminated[loser] = true;
    }
    CandidateId(eliminated.iter().position(|e| !e).expect("one candidate remains"))
}

pub fn stv_winner(topk: &TopKProfile, tb: &TieBreak) -> CandidateId {
    stv_count(
        topk.m(),
        topk.entries().iter().map(|(b, c)| (b.as_slice(), *c)),
        tb,
    )
}
