//! Voting rules in complete and top-k form.
//!
//! A [`RuleId`] names a rule family, an optional truncation depth `k` and, for
//! scoring rules, how unlisted candidates are scored. [`apply_rule`] evaluates
//! it on either a complete [`Profile`] or a [`TopKProfile`].

mod pairwise;
mod rule_id;
mod scoring;
mod stv;

use std::borrow::Cow;

pub use pairwise::{copeland_scores, maximin_scores, ranked_pairs_order, ranked_pairs_winner};
pub use rule_id::{RuleId, RuleKind, ScoringFamily};
pub use scoring::{
    approval_vector, borda_vector, completion_score, harmonic_vector, psr_scores, topk_psr_scores,
    CompletionPolicy, ScoringVector, TopKScoringVector,
};
pub use stv::stv_winner;

use crate::ballots::{
    dominance_tally, majority_graph, pairwise_tally, truncate, CandidateId, GraphMode, Profile, TieBreak,
    TopKProfile,
};
use crate::error::{domain, Error, Result};
use crate::Rational;

/// Per-candidate scores, indexed by candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoreTable {
    scores: Vec<Rational>,
}

impl ScoreTable {
    pub fn new(scores: Vec<Rational>) -> Self {
        ScoreTable { scores }
    }

    pub fn m(&self) -> usize {
        self.scores.len()
    }

    pub fn scores(&self) -> &[Rational] {
        &self.scores
    }

    pub fn get(&self, c: CandidateId) -> Rational {
        self.scores[c.index()]
    }
}

/// Highest score, ties going to the candidate `tb` ranks first.
pub fn winner_from_scores(table: &ScoreTable, tb: &TieBreak) -> CandidateId {
    assert!(table.m() > 0, "empty score table");
    let mut best = tb.priority()[0];
    for &c in &tb.priority()[1..] {
        if table.get(c) > table.get(best) {
            best = c;
        }
    }
    best
}

/// Ballots a rule can be applied to.
#[derive(Debug, Clone, Copy)]
pub enum Ballots<'a> {
    Complete(&'a Profile),
    TopK(&'a TopKProfile),
}

impl Ballots<'_> {
    pub fn m(&self) -> usize {
        match self {
            Ballots::Complete(p) => p.m(),
            Ballots::TopK(p) => p.m(),
        }
    }
}

impl<'a> From<&'a Profile> for Ballots<'a> {
    fn from(p: &'a Profile) -> Self {
        Ballots::Complete(p)
    }
}

impl<'a> From<&'a TopKProfile> for Ballots<'a> {
    fn from(p: &'a TopKProfile) -> Self {
        Ballots::TopK(p)
    }
}

/// Ballots after applying the rule's truncation depth.
enum Resolved<'a> {
    Complete(&'a Profile),
    TopK(Cow<'a, TopKProfile>),
}

/// A complete profile is truncated at the rule's `k`; a top-k profile is cut
/// further if the rule asks for less depth, or used at its own depth when the
/// rule has none.
fn resolve<'a>(rule: &RuleId, ballots: Ballots<'a>) -> Result<Resolved<'a>> {
    Ok(match (ballots, rule.k()) {
        (Ballots::Complete(p), None) => Resolved::Complete(p),
        (Ballots::Complete(p), Some(k)) => Resolved::TopK(Cow::Owned(truncate(p, k)?)),
        (Ballots::TopK(p), None) => Resolved::TopK(Cow::Borrowed(p)),
        (Ballots::TopK(p), Some(k)) if k == p.k() => Resolved::TopK(Cow::Borrowed(p)),
        (Ballots::TopK(p), Some(k)) => Resolved::TopK(Cow::Owned(p.retruncate(k)?)),
    })
}

fn check_m(rule: &RuleId, m: usize, tb: Option<&TieBreak>) -> Result<()> {
    if let Some(tb) = tb {
        if tb.m() != m {
            return Err(domain(format!(
                "tie-break covers {} candidates, profile has {m}",
                tb.m()
            )));
        }
    }
    if let Some(k) = rule.k() {
        if k == 0 || k >= m {
            return Err(domain(format!("{rule}: k outside 1..={}", m.saturating_sub(1))));
        }
    }
    Ok(())
}

/// The scores the rule maximizes on `ballots`.
///
/// Ranked Pairs and STV have no score and yield [`Error::UnsupportedRule`].
pub fn score_table<'a>(rule: &RuleId, ballots: impl Into<Ballots<'a>>) -> Result<ScoreTable> {
    let ballots = ballots.into();
    let m = ballots.m();
    check_m(rule, m, None)?;
    if m == 1 {
        return Ok(ScoreTable::new(vec![Rational::from_integer(1)]));
    }
    let resolved = resolve(rule, ballots)?;
    match (rule.kind(), resolved) {
        (RuleKind::Scoring(family), Resolved::Complete(p)) => psr_scores(p, &family.vector(m)?),
        (RuleKind::Scoring(family), Resolved::TopK(p)) => {
            let tv = TopKScoringVector::from_vector(&family.vector(m)?, p.k(), rule.policy())?;
            topk_psr_scores(&p, &tv)
        }
        (RuleKind::Copeland, Resolved::Complete(p)) => Ok(copeland_scores(&majority_graph(
            &pairwise_tally(p),
            GraphMode::Complete,
        ))),
        (RuleKind::Copeland, Resolved::TopK(p)) => Ok(copeland_scores(&majority_graph(
            &dominance_tally(&p),
            GraphMode::TopK,
        ))),
        (RuleKind::Maximin, Resolved::Complete(p)) => Ok(maximin_scores(&pairwise_tally(p))),
        (RuleKind::Maximin, Resolved::TopK(p)) => Ok(maximin_scores(&dominance_tally(&p))),
        (RuleKind::RankedPairs | RuleKind::Stv, _) => Err(Error::UnsupportedRule(rule.to_string())),
    }
}

/// Winner of `rule` on `ballots`, with every tie settled by `tb`.
pub fn apply_rule<'a>(rule: &RuleId, ballots: impl Into<Ballots<'a>>, tb: &TieBreak) -> Result<CandidateId> {
    let ballots = ballots.into();
    let m = ballots.m();
    check_m(rule, m, Some(tb))?;
    if m == 1 {
        return Ok(CandidateId(0));
    }
    match rule.kind() {
        RuleKind::RankedPairs => {
            let tally = match resolve(rule, ballots)? {
                Resolved::Complete(p) => pairwise_tally(p),
                Resolved::TopK(p) => dominance_tally(&p),
            };
            Ok(ranked_pairs_winner(&tally, tb))
        }
        RuleKind::Stv => Ok(match resolve(rule, ballots)? {
            Resolved::Complete(p) => {
                stv::stv_count(m, p.entries().iter().map(|(r, c)| (r.as_slice(), *c)), tb)
            }
            Resolved::TopK(p) => stv_winner(&p, tb),
        }),
        _ => Ok(winner_from_scores(&score_table(rule, ballots)?, tb)),
    }
}
