//! Rules driven by pairwise comparisons: Copeland, Maximin and Ranked Pairs.

use num_traits::Zero;

use super::ScoreTable;
use crate::ballots::{CandidateId, MajorityGraph, PairwiseTally, TieBreak};
use crate::Rational;

/// Outgoing edges plus half a point for every candidate with no edge either way.
pub fn copeland_scores(graph: &MajorityGraph) -> ScoreTable {
    let m = graph.m();
    let half = Rational::new(1, 2);
    let scores = (0..m)
        .map(|a| {
            let a = CandidateId(a);
            (0..m)
                .filter(|&b| b != a.index())
                .fold(Rational::zero(), |acc, b| {
                    let b = CandidateId(b);
                    if graph.has_edge(a, b) {
                        acc + Rational::from_integer(1)
                    } else if graph.has_edge(b, a) {
                        acc
                    } else {
                        acc + half
                    }
                })
        })
        .collect();
    ScoreTable::new(scores)
}

/// Worst pairwise count of each candidate against any opponent.
pub fn maximin_scores(tally: &PairwiseTally) -> ScoreTable {
    let m = tally.m();
    let scores = (0..m)
        .map(|a| {
            let worst = (0..m)
                .filter(|&x| x != a)
                .map(|x| tally.get(CandidateId(a), CandidateId(x)))
                .min()
                .unwrap_or(0);
            Rational::from_integer(worst as i128)
        })
        .collect();
    ScoreTable::new(scores)
}

/// Full Ranked Pairs order, winner first.
///
/// Every ordered pair `(x, y)` is considered by decreasing `N(x, y)`; equal
/// counts go by tie-break rank of `x`, then of `y`. A pair is locked unless it
/// closes a cycle, which leaves a transitive tournament.
pub fn ranked_pairs_order(tally: &PairwiseTally, tb: &TieBreak) -> Vec<CandidateId> {
    let m = tally.m();
    let mut pairs: Vec<(CandidateId, CandidateId)> = (0..m)
        .flat_map(|x| {
            (0..m)
                .filter(move |&y| y != x)
                .map(move |y| (CandidateId(x), CandidateId(y)))
        })
        .collect();
    pairs.sort_by(|&(a, b), &(c, d)| {
        tally
            .get(c, d)
            .cmp(&tally.get(a, b))
            .then(tb.rank(a).cmp(&tb.rank(c)))
            .then(tb.rank(b).cmp(&tb.rank(d)))
    });

    // reach[x][y]: y is reachable from x through locked edges.
    let mut reach = vec![vec![false; m]; m];
    for (x, y) in pairs {
        let (x, y) = (x.index(), y.index());
        if reach[y][x] || reach[x][y] {
            continue;
        }
        // Lock x → y and close transitively.
        let sources: Vec<usize> = (0..m).filter(|&s| s == x || reach[s][x]).collect();
        let targets: Vec<usize> = (0..m).filter(|&t| t == y || reach[y][t]).collect();
        for &s in &sources {
            for &t in &targets {
                reach[s][t] = true;
            }
        }
    }

    let mut order: Vec<CandidateId> = (0..m).map(CandidateId).collect();
    // Beats-count is m−1−position in a transitive tournament.
    order.sort_by_key(|c| std::cmp::Reverse(reach[c.index()].iter().filter(|&&r| r).count()));
    order
}

pub fn ranked_pairs_winner(tally: &PairwiseTally, tb: &TieBreak) -> CandidateId {
    ranked_pairs_order(tally, tb)[0]
}
