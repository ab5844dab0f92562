//! Positional scoring rules over complete and truncated ballots.

use num_traits::{One, Zero};

use super::ScoreTable;
use crate::ballots::{Profile, TopKProfile};
use crate::error::{domain, Result};
use crate::Rational;

/// Points awarded per position, best position first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScoringVector {
    values: Vec<Rational>,
}

impl ScoringVector {
    /// Checks non-negativity, monotonicity and `s_1 > 0`.
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(domain("empty scoring vector"));
        }
        if values[0] <= Rational::zero() {
            return Err(domain("the first score must be positive"));
        }
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(domain("scores must be non-increasing"));
        }
        if values.last().is_some_and(|s| *s < Rational::zero()) {
            return Err(domain("scores must be non-negative"));
        }
        Ok(ScoringVector { values })
    }

    pub fn from_integers(values: &[i64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| Rational::from_integer(v as i128))
                .collect(),
        )
    }

    pub fn m(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `s_i`, 1-based as in the usual notation.
    pub fn at(&self, position: usize) -> Rational {
        self.values[position - 1]
    }
}

/// `(m−1, m−2, …, 0)`.
pub fn borda_vector(m: usize) -> ScoringVector {
    assert!(m >= 2, "Borda needs at least two candidates");
    ScoringVector {
        values: (0..m).rev().map(|v| Rational::from_integer(v as i128)).collect(),
    }
}

/// `(1, 1/2, …, 1/m)`.
pub fn harmonic_vector(m: usize) -> ScoringVector {
    assert!(m >= 1);
    ScoringVector {
        values: (1..=m).map(|j| Rational::new(1, j as i128)).collect(),
    }
}

/// One point for each of the first `approved` positions.
pub fn approval_vector(m: usize, approved: usize) -> Result<ScoringVector> {
    if approved == 0 || approved > m {
        return Err(domain(format!("{approved}-approval needs 1 ≤ k' ≤ m = {m}")));
    }
    Ok(ScoringVector {
        values: (0..m)
            .map(|j| {
                if j < approved {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    })
}

/// Points given to candidates a truncated ballot does not list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CompletionPolicy {
    /// `s* = 0`.
    Zero,
    /// `s*` is the mean of `s_{k+1}, …, s_m`.
    #[default]
    Average,
}

impl CompletionPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            CompletionPolicy::Zero => "zero",
            CompletionPolicy::Average => "avg",
        }
    }
}

pub fn completion_score(vector: &ScoringVector, k: usize, policy: CompletionPolicy) -> Result<Rational> {
    let m = vector.m();
    if k == 0 || k >= m {
        return Err(domain(format!("k = {k} outside 1..={}", m.saturating_sub(1))));
    }
    Ok(match policy {
        CompletionPolicy::Zero => Rational::zero(),
        CompletionPolicy::Average => {
            let tail: Rational = vector.values[k..].iter().sum();
            tail / Rational::from_integer((m - k) as i128)
        }
    })
}

/// Scores for the first `k` positions plus the score `s*` of unlisted
/// candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopKScoringVector {
    head: Vec<Rational>,
    s_star: Rational,
}

impl TopKScoringVector {
    pub fn new(head: Vec<Rational>, s_star: Rational) -> Result<Self> {
        if head.is_empty() {
            return Err(domain("empty top-k scoring vector"));
        }
        if s_star < Rational::zero() {
            return Err(domain("s* must be non-negative"));
        }
        if head.windows(2).any(|w| w[0] < w[1]) || *head.last().unwrap() < s_star {
            return Err(domain("top-k scores must be non-increasing down to s*"));
        }
        if head[0] <= s_star {
            return Err(domain("s_1 must exceed s*"));
        }
        Ok(TopKScoringVector { head, s_star })
    }

    /// `(s_1, …, s_k, s*)` for a complete vector and a completion policy.
    pub fn from_vector(vector: &ScoringVector, k: usize, policy: CompletionPolicy) -> Result<Self> {
        let s_star = completion_score(vector, k, policy)?;
        Self::new(vector.values[..k].to_vec(), s_star)
    }

    pub fn k(&self) -> usize {
        self.head.len()
    }

    pub fn head(&self) -> &[Rational] {
        &self.head
    }

    pub fn s_star(&self) -> Rational {
        self.s_star
    }
}

pub fn psr_scores(profile: &Profile, vector: &ScoringVector) -> Result<ScoreTable> {
    let m = profile.m();
    if vector.m() != m {
        return Err(domain(format!(
            "scoring vector has length {}, profile has {m} candidates",
            vector.m()
        )));
    }
    let positions = profile.position_counts();
    let scores = positions
        .iter()
        .map(|row| {
            row.iter()
                .zip(&vector.values)
                .map(|(&count, s)| *s * Rational::from_integer(count as i128))
                .sum()
        })
        .collect();
    Ok(ScoreTable::new(scores))
}

pub fn topk_psr_scores(topk: &TopKProfile, tv: &TopKScoringVector) -> Result<ScoreTable> {
    let (m, k) = (topk.m(), topk.k());
    if tv.k() != k {
        return Err(domain(format!(
            "top-{} scoring vector applied to a top-{k} profile",
            tv.k()
        )));
    }
    // listed[x][j]: voters listing x at position j; the rest receive s*.
    let mut listed = vec![vec![0u64; k]; m];
    let mut listed_total = vec![0u64; m];
    for (b, c) in topk.entries() {
        for (j, x) in b.as_slice().iter().enumerate() {
            listed[x.index()][j] += c;
            listed_total[x.index()] += c;
        }
    }
    let n = topk.n();
    let scores = (0..m)
        .map(|x| {
            let head: Rational = listed[x]
                .iter()
                .zip(&tv.head)
                .map(|(&count, s)| *s * Rational::from_integer(count as i128))
                .sum();
            head + tv.s_star * Rational::from_integer((n - listed_total[x]) as i128)
        })
        .collect();
    Ok(ScoreTable::new(scores))
}
