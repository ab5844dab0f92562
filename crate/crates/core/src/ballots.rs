//! Candidates, ballots, weighted profiles and pairwise tallies.
//!
//! Profiles are weighted multisets: every entry is a ballot together with the
//! number of voters who cast it. Candidates are dense indices `0..m`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{domain, Result};

/// A candidate, identified by its dense index in `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CandidateId(pub usize);

impl CandidateId {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_distinct(m: usize, order: &[CandidateId]) -> Result<()> {
    let mut seen = vec![false; m];
    for &c in order {
        if c.0 >= m {
            return Err(domain(format!("candidate {} out of range for m = {m}", c.0)));
        }
        if std::mem::replace(&mut seen[c.0], true) {
            return Err(domain(format!("candidate {} listed twice", c.0)));
        }
    }
    Ok(())
}

/// A complete linear order over all `m` candidates, best first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ranking {
    order: Vec<CandidateId>,
}

impl Ranking {
    /// Builds a ranking, checking that `order` is a permutation of `0..len`.
    pub fn new(order: Vec<CandidateId>) -> Result<Self> {
        check_distinct(order.len(), &order)?;
        if order.is_empty() {
            return Err(domain("a ranking needs at least one candidate"));
        }
        Ok(Ranking { order })
    }

    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        Self::new(indices.iter().copied().map(CandidateId).collect())
    }

    /// The ranking `0 ≻ 1 ≻ … ≻ m−1`.
    pub fn identity(m: usize) -> Self {
        Ranking {
            order: (0..m).map(CandidateId).collect(),
        }
    }

    pub(crate) fn from_vec_unchecked(order: Vec<CandidateId>) -> Self {
        debug_assert!(check_distinct(order.len(), &order).is_ok());
        Ranking { order }
    }

    pub fn m(&self) -> usize {
        self.order.len()
    }

    pub fn as_slice(&self) -> &[CandidateId] {
        &self.order
    }

    /// 0-based positions indexed by candidate.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.order.len()];
        for (i, c) in self.order.iter().enumerate() {
            pos[c.0] = i;
        }
        pos
    }

    pub fn into_vec(self) -> Vec<CandidateId> {
        self.order
    }
}

/// The first `ℓ` entries of a ranking, collected under a nominal depth `k`.
///
/// `ℓ < k` only happens for ballots that were already incomplete when they
/// were ingested.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopKBallot {
    order: Vec<CandidateId>,
    nominal_k: usize,
}

impl TopKBallot {
    pub fn new(m: usize, order: Vec<CandidateId>, nominal_k: usize) -> Result<Self> {
        if nominal_k == 0 || nominal_k >= m {
            return Err(domain(format!(
                "k = {nominal_k} outside 1..={}",
                m.saturating_sub(1)
            )));
        }
        if order.is_empty() || order.len() > nominal_k {
            return Err(domain(format!(
                "top-{nominal_k} ballot has length {}",
                order.len()
            )));
        }
        check_distinct(m, &order)?;
        Ok(TopKBallot { order, nominal_k })
    }

    pub fn as_slice(&self) -> &[CandidateId] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn nominal_k(&self) -> usize {
        self.nominal_k
    }
}

/// Merges identical keys, keeping first-appearance order.
fn merge_counts<K: Clone + Eq + std::hash::Hash>(items: impl IntoIterator<Item = (K, u64)>) -> Vec<(K, u64)> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut out: Vec<(K, u64)> = Vec::new();
    for (key, count) in items {
        match index.get(&key) {
            Some(&i) => out[i].1 += count,
            None => {
                index.insert(key.clone(), out.len());
                out.push((key, count));
            }
        }
    }
    out
}

/// A weighted multiset of complete rankings over `m` candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    m: usize,
    entries: Vec<(Ranking, u64)>,
    n: u64,
}

impl Profile {
    pub fn new(m: usize, entries: Vec<(Ranking, u64)>) -> Result<Self> {
        let mut n = 0u64;
        for (r, c) in &entries {
            if r.m() != m {
                return Err(domain(format!("ranking over {} candidates, expected {m}", r.m())));
            }
            if *c == 0 {
                return Err(domain("ballot counts must be positive"));
            }
            n += c;
        }
        if n == 0 {
            return Err(domain("a profile needs at least one voter"));
        }
        Ok(Profile { m, entries, n })
    }

    /// Builds a profile from `(ranking-as-indices, count)` rows.
    pub fn from_index_rows(m: usize, rows: &[(&[usize], u64)]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|&(r, c)| Ok((Ranking::from_indices(r)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, entries)
    }

    /// Aggregates individual rankings; equal rankings are merged.
    pub fn from_rankings(m: usize, rankings: impl IntoIterator<Item = Ranking>) -> Result<Self> {
        Self::new(m, merge_counts(rankings.into_iter().map(|r| (r, 1))))
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn entries(&self) -> &[(Ranking, u64)] {
        &self.entries
    }

    /// Number of voters placing each candidate at each position:
    /// `counts[candidate][position]`.
    pub fn position_counts(&self) -> Vec<Vec<u64>> {
        let mut counts = vec![vec![0u64; self.m]; self.m];
        for (r, c) in &self.entries {
            for (pos, x) in r.as_slice().iter().enumerate() {
                counts[x.0][pos] += c;
            }
        }
        counts
    }
}

/// A weighted multiset of top-k ballots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopKProfile {
    m: usize,
    k: usize,
    entries: Vec<(TopKBallot, u64)>,
    n: u64,
}

impl TopKProfile {
    pub fn new(m: usize, k: usize, entries: Vec<(TopKBallot, u64)>) -> Result<Self> {
        if k == 0 || k >= m {
            return Err(domain(format!("k = {k} outside 1..={}", m.saturating_sub(1))));
        }
        let mut n = 0u64;
        for (b, c) in &entries {
            if b.nominal_k != k {
                return Err(domain(format!(
                    "ballot collected at depth {}, profile depth is {k}",
                    b.nominal_k
                )));
            }
            if let Some(x) = b.order.iter().find(|x| x.0 >= m) {
                return Err(domain(format!("candidate {} out of range for m = {m}", x.0)));
            }
            if *c == 0 {
                return Err(domain("ballot counts must be positive"));
            }
            n += c;
        }
        if n == 0 {
            return Err(domain("a profile needs at least one voter"));
        }
        Ok(TopKProfile { m, k, entries, n })
    }

    /// Builds a top-k profile from `(prefix-as-indices, count)` rows.
    pub fn from_index_rows(m: usize, k: usize, rows: &[(&[usize], u64)]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|&(r, c)| {
                let b = TopKBallot::new(m, r.iter().copied().map(CandidateId).collect(), k)?;
                Ok((b, c))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, k, entries)
    }

    /// Builds a profile of possibly short ballots, cutting each to at most `k`
    /// entries and merging equal results.
    pub(crate) fn from_prefixes<'a>(
        m: usize,
        k: usize,
        ballots: impl IntoIterator<Item = (&'a [CandidateId], u64)>,
    ) -> Result<Self> {
        if k == 0 || k >= m {
            return Err(domain(format!("k = {k} outside 1..={}", m.saturating_sub(1))));
        }
        let merged = merge_counts(
            ballots
                .into_iter()
                .map(|(b, c)| (b[..b.len().min(k)].to_vec(), c)),
        );
        let entries = merged
            .into_iter()
            .map(|(order, c)| Ok((TopKBallot::new(m, order, k)?, c)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(m, k, entries)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn entries(&self) -> &[(TopKBallot, u64)] {
        &self.entries
    }

    /// Cuts every ballot to at most `k` entries (`k ≤ self.k()`).
    pub fn retruncate(&self, k: usize) -> Result<TopKProfile> {
        if k > self.k {
            return Err(domain(format!(
                "cannot extend top-{} ballots to depth {k}",
                self.k
            )));
        }
        if k == self.k {
            return Ok(self.clone());
        }
        Self::from_prefixes(self.m, k, self.entries.iter().map(|(b, c)| (b.as_slice(), *c)))
    }
}

/// Top-k truncation of a complete profile; equal prefixes are merged.
pub fn truncate(profile: &Profile, k: usize) -> Result<TopKProfile> {
    TopKProfile::from_prefixes(
        profile.m,
        k,
        profile.entries.iter().map(|(r, c)| (r.as_slice(), *c)),
    )
}

/// `m × m` matrix of pairwise preference (or dominance) counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairwiseTally {
    m: usize,
    n: u64,
    counts: Vec<u64>,
}

impl PairwiseTally {
    /// Builds a tally from a row-major matrix, validating the diagonal and
    /// `counts[a][b] + counts[b][a] ≤ n`.
    pub fn from_matrix(m: usize, n: u64, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != m * m {
            return Err(domain(format!(
                "expected {} entries, got {}",
                m * m,
                counts.len()
            )));
        }
        for a in 0..m {
            if counts[a * m + a] != 0 {
                return Err(domain("non-zero diagonal"));
            }
            for b in a + 1..m {
                if counts[a * m + b] + counts[b * m + a] > n {
                    return Err(domain(format!("pair ({a}, {b}) exceeds n = {n}")));
                }
            }
        }
        Ok(PairwiseTally { m, n, counts })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, a: CandidateId, b: CandidateId) -> u64 {
        self.counts[a.0 * self.m + b.0]
    }
}

/// `N(a, b)`: number of voters ranking `a` above `b`.
pub fn pairwise_tally(profile: &Profile) -> PairwiseTally {
    let m = profile.m;
    let mut counts = vec![0u64; m * m];
    for (r, c) in &profile.entries {
        let order = r.as_slice();
        for (i, a) in order.iter().enumerate() {
            for b in &order[i + 1..] {
                counts[a.0 * m + b.0] += c;
            }
        }
    }
    PairwiseTally {
        m,
        n: profile.n,
        counts,
    }
}

/// `N_R(a, b)`: number of ballots in which `a` dominates `b`, i.e. `a` is
/// listed above `b`, or `a` is listed and `b` is not.
pub fn dominance_tally(topk: &TopKProfile) -> PairwiseTally {
    let m = topk.m;
    let mut counts = vec![0u64; m * m];
    let mut listed = vec![false; m];
    for (b, c) in &topk.entries {
        let order = b.as_slice();
        for x in order {
            listed[x.0] = true;
        }
        for (i, a) in order.iter().enumerate() {
            let row = &mut counts[a.0 * m..(a.0 + 1) * m];
            for other in &order[i + 1..] {
                row[other.0] += c;
            }
            for (y, slot) in row.iter_mut().enumerate() {
                if !listed[y] {
                    *slot += c;
                }
            }
        }
        for x in order {
            listed[x.0] = false;
        }
    }
    PairwiseTally { m, n: topk.n, counts }
}

/// How a tally is turned into majority edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphMode {
    /// `a → b` iff `N(a, b) > n/2`. Only meaningful for complete profiles.
    Complete,
    /// `a → b` iff `N(a, b) > N(b, a)`.
    TopK,
}

/// Directed graph of strict pairwise majorities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorityGraph {
    m: usize,
    adjacency: Vec<bool>,
}

impl MajorityGraph {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, a: CandidateId, b: CandidateId) -> bool {
        self.adjacency[a.0 * self.m + b.0]
    }

    pub fn edges(&self) -> impl Iterator<Item = (CandidateId, CandidateId)> + '_ {
        (0..self.m * self.m)
            .filter(|&i| self.adjacency[i])
            .map(|i| (CandidateId(i / self.m), CandidateId(i % self.m)))
    }

    pub fn out_degree(&self, a: CandidateId) -> usize {
        self.adjacency[a.0 * self.m..(a.0 + 1) * self.m]
            .iter()
            .filter(|&&e| e)
            .count()
    }
}

pub fn majority_graph(tally: &PairwiseTally, mode: GraphMode) -> MajorityGraph {
    let m = tally.m;
    let mut adjacency = vec![false; m * m];
    for a in 0..m {
        for b in 0..m {
            if a == b {
                continue;
            }
            let ab = tally.counts[a * m + b];
            adjacency[a * m + b] = match mode {
                GraphMode::Complete => 2 * ab > tally.n,
                GraphMode::TopK => ab > tally.counts[b * m + a],
            };
        }
    }
    MajorityGraph { m, adjacency }
}

/// Priority order used to break every tie; earlier means preferred.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieBreak {
    priority: Vec<CandidateId>,
    rank: Vec<usize>,
}

impl TieBreak {
    pub fn new(priority: Vec<CandidateId>) -> Result<Self> {
        check_distinct(priority.len(), &priority)?;
        let mut rank = vec![0; priority.len()];
        for (i, c) in priority.iter().enumerate() {
            rank[c.0] = i;
        }
        Ok(TieBreak { priority, rank })
    }

    /// Candidate 0 first, then 1, and so on.
    pub fn ascending(m: usize) -> Self {
        TieBreak {
            priority: (0..m).map(CandidateId).collect(),
            rank: (0..m).collect(),
        }
    }

    pub fn m(&self) -> usize {
        self.priority.len()
    }

    pub fn priority(&self) -> &[CandidateId] {
        &self.priority
    }

    /// Position of `c` in the priority order (0 = most preferred).
    pub fn rank(&self, c: CandidateId) -> usize {
        self.rank[c.0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(i: usize) -> CandidateId {
        CandidateId(i)
    }

    // a=0, b=1, c=2, d=3
    fn example1() -> Profile {
        Profile::from_index_rows(
            4,
            &[
                (&[0, 3, 2, 1], 20),
                (&[1, 2, 3, 0], 10),
                (&[2, 3, 1, 0], 15),
                (&[3, 2, 0, 1], 17),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ranking_rejects_non_permutations() {
        assert!(Ranking::from_indices(&[0, 1, 1]).is_err());
        assert!(Ranking::from_indices(&[0, 2]).is_err());
        assert!(Ranking::from_indices(&[]).is_err());
        assert_eq!(
            Ranking::from_indices(&[2, 0, 1]).unwrap().positions(),
            vec![1, 2, 0]
        );
    }

    #[test]
    fn truncate_example1() {
        let t = truncate(&example1(), 2).unwrap();
        let got: Vec<_> = t
            .entries()
            .iter()
            .map(|(b, c)| (b.as_slice().iter().map(|x| x.0).collect::<Vec<_>>(), *c))
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![0, 3], 20),
                (vec![1, 2], 10),
                (vec![2, 3], 15),
                (vec![3, 2], 17)
            ]
        );
        assert_eq!(t.n(), 62);
    }

    #[test]
    fn truncate_merges_equal_prefixes() {
        let p = Profile::from_index_rows(3, &[(&[0, 1, 2], 2), (&[0, 2, 1], 1)]).unwrap();
        let t = truncate(&p, 1).unwrap();
        assert_eq!(t.entries().len(), 1);
        assert_eq!(t.entries()[0].0.as_slice(), &[c(0)]);
        assert_eq!(t.entries()[0].1, 3);
    }

    #[test]
    fn truncate_k_range() {
        let p = example1();
        assert!(truncate(&p, 0).is_err());
        assert!(truncate(&p, 4).is_err());
        let t = truncate(&p, 3).unwrap();
        assert!(t.entries().iter().all(|(b, _)| b.len() == 3));
    }

    #[test]
    fn pairwise_example1() {
        let t = pairwise_tally(&example1());
        assert_eq!(t.get(c(0), c(1)), 37);
        assert_eq!(t.get(c(2), c(0)), 42);
        assert_eq!(t.get(c(3), c(2)), 37);
    }

    #[test]
    fn pairwise_single_ballot_and_reversal() {
        let p = Profile::from_index_rows(3, &[(&[0, 1, 2], 1)]).unwrap();
        let t = pairwise_tally(&p);
        assert_eq!(t.get(c(0), c(1)), 1);
        assert_eq!(t.get(c(0), c(2)), 1);
        assert_eq!(t.get(c(1), c(2)), 1);
        assert_eq!(t.get(c(1), c(0)), 0);

        let p = Profile::from_index_rows(3, &[(&[0, 1, 2], 4), (&[2, 1, 0], 4)]).unwrap();
        let t = pairwise_tally(&p);
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(t.get(c(a), c(b)), t.get(c(b), c(a)));
            }
        }
    }

    #[test]
    fn dominance_example1() {
        let t = dominance_tally(&truncate(&example1(), 2).unwrap());
        let expect = [
            ((0, 1), 20),
            ((1, 0), 10),
            ((2, 0), 42),
            ((0, 3), 20),
            ((3, 0), 32),
            ((3, 2), 37),
            ((2, 3), 25),
            ((3, 1), 52),
        ];
        for ((a, b), v) in expect {
            assert_eq!(t.get(c(a), c(b)), v, "N({a},{b})");
        }
    }

    #[test]
    fn dominance_leaves_unlisted_pairs_incomparable() {
        let r = TopKProfile::from_index_rows(4, 2, &[(&[0, 1], 1)]).unwrap();
        let t = dominance_tally(&r);
        assert_eq!(t.get(c(0), c(1)), 1);
        for x in [0, 1] {
            for y in [2, 3] {
                assert_eq!(t.get(c(x), c(y)), 1);
                assert_eq!(t.get(c(y), c(x)), 0);
            }
        }
        assert_eq!(t.get(c(2), c(3)), 0);
        assert_eq!(t.get(c(3), c(2)), 0);
    }

    #[test]
    fn dominance_at_m_minus_1_is_pairwise() {
        let p = example1();
        assert_eq!(dominance_tally(&truncate(&p, 3).unwrap()), pairwise_tally(&p));
    }

    #[test]
    fn majority_graph_example1_topk() {
        let t = dominance_tally(&truncate(&example1(), 2).unwrap());
        let g = majority_graph(&t, GraphMode::TopK);
        let mut edges: Vec<_> = g.edges().map(|(a, b)| (a.0, b.0)).collect();
        edges.sort();
        assert_eq!(edges, vec![(0, 1), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)]);
    }

    #[test]
    fn majority_graph_complete_condorcet_winner() {
        let t = pairwise_tally(&example1());
        let g = majority_graph(&t, GraphMode::Complete);
        for other in 0..3 {
            assert!(g.has_edge(c(3), c(other)));
        }
        assert_eq!(g, majority_graph(&t, GraphMode::TopK));
    }

    #[test]
    fn tied_pair_has_no_edge() {
        let t = PairwiseTally::from_matrix(2, 4, vec![0, 2, 2, 0]).unwrap();
        for mode in [GraphMode::Complete, GraphMode::TopK] {
            assert_eq!(majority_graph(&t, mode).edges().count(), 0);
        }
    }

    #[test]
    fn tally_validation() {
        assert!(PairwiseTally::from_matrix(2, 1, vec![0, 1, 1, 0]).is_err());
        assert!(PairwiseTally::from_matrix(2, 1, vec![1, 0, 0, 0]).is_err());
    }

    #[test]
    fn topk_ballot_validation() {
        assert!(TopKBallot::new(4, vec![c(0), c(1), c(2)], 2).is_err());
        assert!(TopKBallot::new(4, vec![c(0)], 4).is_err());
        assert!(TopKBallot::new(4, vec![c(0), c(0)], 3).is_err());
        assert!(TopKBallot::new(4, vec![], 2).is_err());
        assert_eq!(TopKBallot::new(4, vec![c(1)], 3).unwrap().len(), 1);
    }

    #[test]
    fn tiebreak_ranks() {
        let tb = TieBreak::new(vec![c(2), c(0), c(1)]).unwrap();
        assert_eq!(tb.rank(c(2)), 0);
        assert_eq!(tb.rank(c(1)), 2);
        assert!(TieBreak::new(vec![c(0), c(0)]).is_err());
    }
}
