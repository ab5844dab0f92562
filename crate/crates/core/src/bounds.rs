//! Worst-case score ratios between a rule and its top-k approximation.
//!
//! For a score-maximizing rule `f` with top-k version `f_k`, the price of
//! truncation is the largest value of `S(f(P)) / S(f_k(P_k))` over complete
//! profiles `P`, where `S` is always the original rule's score on `P`. This
//! module evaluates the closed-form bounds for positional scoring rules and
//! Maximin, and builds explicit profiles that attain or witness them.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::ballots::{CandidateId, Profile, Ranking, TieBreak};
use crate::error::{domain, Error, Result};
use crate::rules::{
    apply_rule, maximin_scores, psr_scores, score_table, winner_from_scores, Ballots, CompletionPolicy,
    RuleId, ScoringFamily, ScoringVector,
};
use crate::Rational;

/// A score ratio, possibly unbounded when the denominator score is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScoreRatio {
    Finite(Rational),
    Infinite,
}

impl ScoreRatio {
    /// `numerator / denominator`, infinite when the denominator is zero.
    pub fn of(numerator: Rational, denominator: Rational) -> Self {
        if denominator.is_zero() {
            ScoreRatio::Infinite
        } else {
            ScoreRatio::Finite(numerator / denominator)
        }
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            ScoreRatio::Finite(r) => Some(r),
            ScoreRatio::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == ScoreRatio::Infinite
    }

    pub fn to_f64(self) -> f64 {
        match self {
            ScoreRatio::Finite(r) => *r.numer() as f64 / *r.denom() as f64,
            ScoreRatio::Infinite => f64::INFINITY,
        }
    }
}

impl From<Rational> for ScoreRatio {
    fn from(r: Rational) -> Self {
        ScoreRatio::Finite(r)
    }
}

impl Ord for ScoreRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ScoreRatio::Finite(a), ScoreRatio::Finite(b)) => a.cmp(b),
            (ScoreRatio::Finite(_), ScoreRatio::Infinite) => Ordering::Less,
            (ScoreRatio::Infinite, ScoreRatio::Finite(_)) => Ordering::Greater,
            (ScoreRatio::Infinite, ScoreRatio::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ScoreRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ScoreRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScoreRatio::Finite(r) => write!(f, "{r}"),
            ScoreRatio::Infinite => f.write_str("inf"),
        }
    }
}

/// Lower and upper bounds on the price of truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatioBound {
    pub lower: Rational,
    pub upper: ScoreRatio,
}

impl RatioBound {
    pub fn contains(&self, ratio: ScoreRatio) -> bool {
        ScoreRatio::Finite(self.lower) <= ratio && ratio <= self.upper
    }

    pub fn is_tight(&self) -> bool {
        self.upper == ScoreRatio::Finite(self.lower)
    }
}

/// A complete profile on which the top-k rule elects `x1` while the original
/// rule elects `x2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdversarialInstance {
    pub profile: Profile,
    pub k: usize,
    pub x1: CandidateId,
    pub x2: CandidateId,
    /// `S(x2) / S(x1)` under the original rule on the complete profile.
    pub claimed_ratio: ScoreRatio,
}

fn int(v: usize) -> Rational {
    Rational::from_integer(v as i128)
}

/// `s'_i = s_i − s*` for `i = 1..=k`.
fn shifted_head(s: &ScoringVector, k: usize, s_star: Rational) -> Result<Vec<Rational>> {
    let head: Vec<Rational> = s.values()[..k].iter().map(|v| *v - s_star).collect();
    if head[0] <= Rational::zero() {
        return Err(domain("s_1 − s* must be positive"));
    }
    if head[k - 1] < Rational::zero() {
        return Err(domain("s* exceeds s_k"));
    }
    Ok(head)
}

/// Bounds on the price of truncation of the PSR `s` approximated by the
/// top-k PSR `(s_1, …, s_k, s*)`. They coincide when `s* = 0`.
pub fn psr_bounds(s: &ScoringVector, k: usize, s_star: Rational) -> Result<RatioBound> {
    let m = s.m();
    if k == 0 || k + 2 > m {
        return Err(domain(format!("k = {k} outside 1..={}", m.saturating_sub(2))));
    }
    let shifted = shifted_head(s, k, s_star)?;
    let sum: Rational = shifted.iter().sum();
    let (s1, next) = (s.at(1), s.at(k + 1));
    let s1_shift = shifted[0];
    let m = int(m);
    let one = Rational::one();
    let lower = one - next / s1 + (next / s1) * (m * s1_shift) / sum;
    let upper = one - next / s1_shift + (one + s_star / s1_shift) * (m * next) / sum;
    Ok(RatioBound {
        lower,
        upper: ScoreRatio::Finite(upper),
    })
}

/// [`psr_bounds`] for a named family and completion policy.
pub fn psr_bounds_for(
    family: &ScoringFamily,
    m: usize,
    k: usize,
    policy: CompletionPolicy,
) -> Result<RatioBound> {
    let s = family.vector(m)?;
    let s_star = crate::rules::completion_score(&s, k, policy)?;
    psr_bounds(&s, k, s_star)
}

/// Ordered selections of `len` distinct items, in lexicographic order.
fn arrangements(items: &[usize], len: usize) -> Vec<Vec<usize>> {
    fn extend(
        items: &[usize],
        used: &mut [bool],
        cur: &mut Vec<usize>,
        len: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for (i, &x) in items.iter().enumerate() {
            if !used[i] {
                used[i] = true;
                cur.push(x);
                extend(items, used, cur, len, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(
        items,
        &mut vec![false; items.len()],
        &mut Vec::with_capacity(len),
        len,
        &mut out,
    );
    out
}

/// Ranking that starts with `head`, continues with `middle` candidates in the
/// given order, then the remaining candidates ascending, and ends with `tail`.
fn complete(m: usize, head: &[usize], middle: &[usize], tail: &[usize]) -> Ranking {
    let placed = |c: &usize| head.contains(c) || middle.contains(c) || tail.contains(c);
    let order: Vec<CandidateId> = head
        .iter()
        .chain(middle)
        .copied()
        .chain((0..m).filter(|c| !placed(c)))
        .chain(tail.iter().copied())
        .map(CandidateId)
        .collect();
    Ranking::from_vec_unchecked(order)
}

/// Profile on which `(s_1, …, s_k, s*)` elects `x1` by tie-break while `s`
/// elects `x2`.
///
/// For every ordered list `L` of `k−1` candidates among `x3..xm` there are
/// `α` ballots `x1 L x2 …` and `α` ballots `x2 L … x1`; for every ordered list
/// `L'` of `k` such candidates there are `β` ballots `L' x2 … x1`. The ratio
/// `β/α` makes every candidate's top-k score equal, and the weights are scaled
/// to the smallest integers with that ratio.
pub fn psr_adversarial(s: &ScoringVector, k: usize, s_star: Rational) -> Result<AdversarialInstance> {
    let m = s.m();
    if k < 2 || k + 2 > m {
        return Err(domain(format!(
            "construction needs 2 ≤ k ≤ m−2, got k = {k}, m = {m}"
        )));
    }
    let shifted = shifted_head(s, k, s_star)?;
    let sum: Rational = shifted.iter().sum();
    let rest: Rational = shifted[1..].iter().sum();
    let alpha = int(m - k - 1) * sum;
    let beta = int(m - 2) * shifted[0] - Rational::from_integer(2) * rest;
    if beta < Rational::zero() {
        return Err(Error::ConstructionInapplicable(format!(
            "β/α would be {} < 0",
            beta / alpha
        )));
    }
    let scale = alpha.denom().lcm(beta.denom());
    let (mut a, mut b) = ((alpha * scale).to_integer(), (beta * scale).to_integer());
    let g = a.gcd(&b);
    a /= g;
    b /= g;
    let (a, b) = (a as u64, b as u64);

    let others: Vec<usize> = (2..m).collect();
    let mut entries = Vec::new();
    for list in arrangements(&others, k - 1) {
        let head: Vec<usize> = std::iter::once(0).chain(list.iter().copied()).collect();
        entries.push((complete(m, &head, &[1], &[]), a));
        let head: Vec<usize> = std::iter::once(1).chain(list.iter().copied()).collect();
        entries.push((complete(m, &head, &[], &[0]), a));
    }
    if b > 0 {
        for list in arrangements(&others, k) {
            entries.push((complete(m, &list, &[1], &[0]), b));
        }
    }
    let profile = Profile::new(m, entries)?;
    let scores = psr_scores(&profile, s)?;
    let claimed_ratio = ScoreRatio::of(scores.get(CandidateId(1)), scores.get(CandidateId(0)));
    Ok(AdversarialInstance {
        profile,
        k,
        x1: CandidateId(0),
        x2: CandidateId(1),
        claimed_ratio,
    })
}

/// `(m−k, m−k+1)`.
pub fn maximin_bounds(m: usize, k: usize) -> Result<RatioBound> {
    if k == 0 || k >= m {
        return Err(domain(format!("k = {k} outside 1..={}", m.saturating_sub(1))));
    }
    Ok(RatioBound {
        lower: int(m - k),
        upper: ScoreRatio::Finite(int(m - k + 1)),
    })
}

fn check_construction_range(m: usize, k: usize) -> Result<()> {
    if k < 2 || k + 2 > m {
        return Err(domain(format!(
            "construction needs 2 ≤ k ≤ m−2, got k = {k}, m = {m}"
        )));
    }
    Ok(())
}

/// Moves `x1` to the bottom and `x2` to position `k+1` of every ballot in
/// which they are not among the first `k`.
fn demote_pair(order: &mut Vec<usize>, k: usize) {
    if let Some(p) = order.iter().position(|&c| c == 0).filter(|&p| p >= k) {
        order.remove(p);
        order.push(0);
    }
    if let Some(p) = order.iter().position(|&c| c == 1).filter(|&p| p >= k) {
        order.remove(p);
        order.insert(k, 1);
    }
}

/// The cyclic profile with `x1` demoted to last and `x2` to position `k+1`
/// wherever they fall outside the top `k`.
pub fn maximin_adversarial(m: usize, k: usize) -> Result<AdversarialInstance> {
    check_construction_range(m, k)?;
    let rankings = (0..m).map(|shift| {
        let mut order: Vec<usize> = (0..m).map(|j| (shift + j) % m).collect();
        demote_pair(&mut order, k);
        Ranking::from_vec_unchecked(order.into_iter().map(CandidateId).collect())
    });
    let profile = Profile::new(m, rankings.map(|r| (r, 1)).collect())?;
    let scores = maximin_scores(&crate::ballots::pairwise_tally(&profile));
    let claimed_ratio = ScoreRatio::of(scores.get(CandidateId(1)), scores.get(CandidateId(0)));
    Ok(AdversarialInstance {
        profile,
        k,
        x1: CandidateId(0),
        x2: CandidateId(1),
        claimed_ratio,
    })
}

/// Two ballots starting `x1 x2 … xk` plus one ballot per ordered list of `k`
/// candidates, completed with `x2` at position `k+1` and `x1` last wherever
/// they are unlisted. `x1` ends up a Condorcet loser, so its Copeland score
/// and the ratio's denominator are zero.
pub fn copeland_adversarial(m: usize, k: usize) -> Result<AdversarialInstance> {
    check_construction_range(m, k)?;
    let all: Vec<usize> = (0..m).collect();
    let prefix: Vec<usize> = (0..k).collect();
    let lists = std::iter::repeat_n(prefix, 2).chain(arrangements(&all, k));
    let rankings = lists.map(|list| {
        let mut order: Vec<usize> = complete(m, &list, &[], &[])
            .as_slice()
            .iter()
            .map(|c| c.index())
            .collect();
        demote_pair(&mut order, k);
        Ranking::from_vec_unchecked(order.into_iter().map(CandidateId).collect())
    });
    let profile = Profile::from_rankings(m, rankings)?;
    let rule: RuleId = RuleId::new(
        crate::rules::RuleKind::Copeland,
        None,
        CompletionPolicy::default(),
    );
    let scores = score_table(&rule, &profile)?;
    let claimed_ratio = ScoreRatio::of(scores.get(CandidateId(1)), scores.get(CandidateId(0)));
    Ok(AdversarialInstance {
        profile,
        k,
        x1: CandidateId(0),
        x2: CandidateId(1),
        claimed_ratio,
    })
}

/// Winners of a rule and of its top-k version on one electorate, and the
/// original-score ratio between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncationOutcome {
    pub true_winner: CandidateId,
    pub topk_winner: CandidateId,
    pub ratio: ScoreRatio,
}

/// Evaluates `S(f(P)) / S(f_k(P_k))` with both scores taken under the
/// untruncated rule on `ballots`.
///
/// `rule` must be score-based; its own depth, if any, is replaced by `k`.
pub fn truncation_outcome<'a>(
    ballots: impl Into<Ballots<'a>>,
    rule: &RuleId,
    k: usize,
    tb: &TieBreak,
) -> Result<TruncationOutcome> {
    let ballots = ballots.into();
    if !rule.is_score_based() {
        return Err(Error::UnsupportedRule(rule.to_string()));
    }
    let base = rule.without_k();
    let scores = score_table(&base, ballots)?;
    if tb.m() != scores.m() {
        return Err(domain("tie-break and profile sizes differ"));
    }
    let true_winner = winner_from_scores(&scores, tb);
    let topk_winner = apply_rule(&rule.with_k(k), ballots, tb)?;
    Ok(TruncationOutcome {
        true_winner,
        topk_winner,
        ratio: ScoreRatio::of(scores.get(true_winner), scores.get(topk_winner)),
    })
}

/// Per-profile ratio `S(f(P)) / S(f_k(P_k))`; see [`truncation_outcome`].
pub fn price_of_truncation(profile: &Profile, rule: &RuleId, k: usize, tb: &TieBreak) -> Result<ScoreRatio> {
    Ok(truncation_outcome(profile, rule, k, tb)?.ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{approval_vector, borda_vector, harmonic_vector};

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    fn rows(p: &Profile) -> Vec<(Vec<usize>, u64)> {
        p.entries()
            .iter()
            .map(|(r, c)| (r.as_slice().iter().map(|x| x.index()).collect(), *c))
            .collect()
    }

    #[test]
    fn borda_zero_bound() {
        let b = psr_bounds(&borda_vector(4), 2, r(0, 1)).unwrap();
        assert_eq!(b.lower, r(22, 15));
        assert!(b.is_tight());
    }

    #[test]
    fn harmonic_zero_bound() {
        let b = psr_bounds(&harmonic_vector(4), 2, r(0, 1)).unwrap();
        assert_eq!(b.lower, r(14, 9));
        assert!(b.is_tight());
    }

    #[test]
    fn approval_bound_is_m_over_k() {
        for m in 4..9 {
            for k in 1..m - 1 {
                for approved in k + 1..=m {
                    let b = psr_bounds(&approval_vector(m, approved).unwrap(), k, r(0, 1)).unwrap();
                    assert_eq!(b.lower, r(m as i128, k as i128));
                    assert!(b.is_tight());
                }
            }
        }
    }

    #[test]
    fn psr_bound_errors() {
        assert!(psr_bounds(&borda_vector(4), 3, r(0, 1)).is_err());
        assert!(psr_bounds(&borda_vector(4), 0, r(0, 1)).is_err());
        assert!(psr_bounds(&borda_vector(4), 2, r(3, 1)).is_err());
    }

    #[test]
    fn borda_m5_k3_matches_displayed_profile() {
        let inst = psr_adversarial(&borda_vector(5), 3, r(0, 1)).unwrap();
        let got = rows(&inst.profile);
        assert_eq!(got.len(), 18);
        // s' = (4,3,2): α ∝ 1·9 = 9, β ∝ 3·4 − 2·5 = 2.
        let (a, b) = (9, 2);
        let expected: Vec<(Vec<usize>, u64)> = vec![
            (vec![0, 2, 3, 1, 4], a),
            (vec![1, 2, 3, 4, 0], a),
            (vec![0, 2, 4, 1, 3], a),
            (vec![1, 2, 4, 3, 0], a),
            (vec![0, 3, 2, 1, 4], a),
            (vec![1, 3, 2, 4, 0], a),
            (vec![0, 3, 4, 1, 2], a),
            (vec![1, 3, 4, 2, 0], a),
            (vec![0, 4, 2, 1, 3], a),
            (vec![1, 4, 2, 3, 0], a),
            (vec![0, 4, 3, 1, 2], a),
            (vec![1, 4, 3, 2, 0], a),
            (vec![2, 3, 4, 1, 0], b),
            (vec![2, 4, 3, 1, 0], b),
            (vec![3, 2, 4, 1, 0], b),
            (vec![3, 4, 2, 1, 0], b),
            (vec![4, 2, 3, 1, 0], b),
            (vec![4, 3, 2, 1, 0], b),
        ];
        assert_eq!(got, expected);
    }

    #[test]
    fn borda_m4_k2_attains_bound() {
        let inst = psr_adversarial(&borda_vector(4), 2, r(0, 1)).unwrap();
        assert_eq!(inst.claimed_ratio, ScoreRatio::Finite(r(22, 15)));
        let rule: RuleId = "borda:zero".parse().unwrap();
        let ratio = price_of_truncation(&inst.profile, &rule, 2, &TieBreak::ascending(4)).unwrap();
        assert_eq!(ratio, ScoreRatio::Finite(r(22, 15)));
    }

    #[test]
    fn negative_beta_is_refused() {
        // 5-approval, m = 6, k = 4: β ∝ (m−2)·1 − 2·3 < 0.
        let s = approval_vector(6, 5).unwrap();
        assert!(matches!(
            psr_adversarial(&s, 4, r(0, 1)),
            Err(Error::ConstructionInapplicable(_))
        ));
    }

    #[test]
    fn maximin_m5_k2_matches_displayed_profile() {
        let inst = maximin_adversarial(5, 2).unwrap();
        let expected: Vec<(Vec<usize>, u64)> = vec![
            (vec![0, 1, 2, 3, 4], 1),
            (vec![1, 2, 3, 4, 0], 1),
            (vec![2, 3, 1, 4, 0], 1),
            (vec![3, 4, 1, 2, 0], 1),
            (vec![4, 0, 1, 2, 3], 1),
        ];
        assert_eq!(rows(&inst.profile), expected);
        assert_eq!(inst.claimed_ratio, ScoreRatio::Finite(r(3, 1)));
        let rule: RuleId = "maximin".parse().unwrap();
        let ratio = price_of_truncation(&inst.profile, &rule, 2, &TieBreak::ascending(5)).unwrap();
        assert_eq!(ratio, ScoreRatio::Finite(r(3, 1)));
    }

    #[test]
    fn maximin_bound_values() {
        assert_eq!(
            maximin_bounds(5, 2).unwrap(),
            RatioBound {
                lower: r(3, 1),
                upper: r(4, 1).into()
            }
        );
        assert_eq!(maximin_bounds(5, 4).unwrap().lower, r(1, 1));
        assert_eq!(maximin_bounds(12, 3).unwrap().upper, r(10, 1).into());
        assert!(maximin_bounds(5, 5).is_err());
    }

    #[test]
    fn copeland_ratio_is_infinite() {
        let inst = copeland_adversarial(5, 2).unwrap();
        assert_eq!(inst.profile.n(), 22);
        assert_eq!(inst.claimed_ratio, ScoreRatio::Infinite);
        assert_eq!(inst.claimed_ratio.to_string(), "inf");
    }

    #[test]
    fn copeland_smallest_instance_ties() {
        // m = 4, k = 2: x1 ties every pairwise contest instead of losing it.
        let inst = copeland_adversarial(4, 2).unwrap();
        assert_eq!(inst.profile.n(), 14);
        assert_eq!(inst.claimed_ratio, ScoreRatio::Finite(r(5, 3)));
    }

    #[test]
    fn construction_ranges() {
        assert!(maximin_adversarial(4, 1).is_err());
        assert!(maximin_adversarial(4, 3).is_err());
        assert!(copeland_adversarial(3, 2).is_err());
        assert!(psr_adversarial(&borda_vector(4), 3, r(0, 1)).is_err());
    }

    #[test]
    fn unsupported_rules() {
        let p = maximin_adversarial(5, 2).unwrap().profile;
        let tb = TieBreak::ascending(5);
        for s in ["rp", "stv"] {
            let rule: RuleId = s.parse().unwrap();
            assert!(matches!(
                price_of_truncation(&p, &rule, 2, &tb),
                Err(Error::UnsupportedRule(_))
            ));
        }
    }

    #[test]
    fn ratio_ordering() {
        assert!(ScoreRatio::Infinite > ScoreRatio::Finite(r(1_000_000, 1)));
        assert!(ScoreRatio::Finite(r(3, 2)) < ScoreRatio::Finite(r(2, 1)));
        assert_eq!(ScoreRatio::of(r(1, 1), r(0, 1)), ScoreRatio::Infinite);
    }
}
