//! Rule identifiers and their string syntax.
//!
//! ```text
//! rule    := family [ "@k=" depth ] [ ":" policy ]
//! family  := "borda" | "harmonic" | "plurality" | "approval" N
//!          | "vector[" s_1 " " s_2 " " … "]"
//!          | "copeland" | "maximin" | "rp" | "stv"
//! policy  := "zero" | "avg"          (scoring families only; default avg)
//! ```
//!
//! Examples: `borda`, `borda@k=2:avg`, `harmonic@k=1:zero`, `copeland@k=2`,
//! `rp@k=3`, `stv@k=2`, `approval3:zero`, `vector[4 2 1 0]@k=2:zero`.

use std::fmt;
use std::str::FromStr;

use super::scoring::{approval_vector, borda_vector, harmonic_vector, CompletionPolicy, ScoringVector};
use crate::error::{domain, Error, Result};
use crate::Rational;

/// Scoring vector family; the concrete vector depends on `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScoringFamily {
    Borda,
    Harmonic,
    Plurality,
    /// k'-approval.
    Approval(usize),
    /// A fixed vector; only valid for its own `m`.
    Custom(ScoringVector),
}

impl ScoringFamily {
    pub fn vector(&self, m: usize) -> Result<ScoringVector> {
        match self {
            ScoringFamily::Borda => Ok(borda_vector(m)),
            ScoringFamily::Harmonic => Ok(harmonic_vector(m)),
            ScoringFamily::Plurality => approval_vector(m, 1),
            ScoringFamily::Approval(a) => approval_vector(m, *a),
            ScoringFamily::Custom(v) if v.m() == m => Ok(v.clone()),
            ScoringFamily::Custom(v) => Err(domain(format!(
                "scoring vector of length {} used with m = {m}",
                v.m()
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Scoring(ScoringFamily),
    Copeland,
    Maximin,
    RankedPairs,
    Stv,
}

/// A voting rule, optionally restricted to top-k ballots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleId {
    kind: RuleKind,
    k: Option<usize>,
    policy: CompletionPolicy,
}

impl RuleId {
    pub fn new(kind: RuleKind, k: Option<usize>, policy: CompletionPolicy) -> Self {
        RuleId { kind, k, policy }
    }

    pub fn kind(&self) -> &RuleKind {
        &self.kind
    }

    pub fn k(&self) -> Option<usize> {
        self.k
    }

    /// Completion policy; ignored by non-scoring rules.
    pub fn policy(&self) -> CompletionPolicy {
        self.policy
    }

    pub fn with_k(&self, k: usize) -> Self {
        RuleId {
            k: Some(k),
            ..self.clone()
        }
    }

    /// The same rule on untruncated ballots.
    pub fn without_k(&self) -> Self {
        RuleId {
            k: None,
            ..self.clone()
        }
    }

    pub fn is_score_based(&self) -> bool {
        matches!(
            self.kind,
            RuleKind::Scoring(_) | RuleKind::Copeland | RuleKind::Maximin
        )
    }

    fn family_name(&self) -> String {
        match &self.kind {
            RuleKind::Scoring(ScoringFamily::Borda) => "borda".into(),
            RuleKind::Scoring(ScoringFamily::Harmonic) => "harmonic".into(),
            RuleKind::Scoring(ScoringFamily::Plurality) => "plurality".into(),
            RuleKind::Scoring(ScoringFamily::Approval(a)) => format!("approval{a}"),
            RuleKind::Scoring(ScoringFamily::Custom(v)) => {
                let parts: Vec<String> = v.values().iter().map(|s| s.to_string()).collect();
                format!("vector[{}]", parts.join(" "))
            }
            RuleKind::Copeland => "copeland".into(),
            RuleKind::Maximin => "maximin".into(),
            RuleKind::RankedPairs => "rp".into(),
            RuleKind::Stv => "stv".into(),
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.family_name())?;
        if let Some(k) = self.k {
            write!(f, "@k={k}")?;
        }
        if matches!(self.kind, RuleKind::Scoring(_)) {
            write!(f, ":{}", self.policy.as_str())?;
        }
        Ok(())
    }
}

fn parse_family(name: &str) -> std::result::Result<RuleKind, String> {
    Ok(match name {
        "borda" => RuleKind::Scoring(ScoringFamily::Borda),
        "harmonic" => RuleKind::Scoring(ScoringFamily::Harmonic),
        "plurality" => RuleKind::Scoring(ScoringFamily::Plurality),
        "copeland" => RuleKind::Copeland,
        "maximin" => RuleKind::Maximin,
        "rp" | "ranked-pairs" | "rankedpairs" => RuleKind::RankedPairs,
        "stv" => RuleKind::Stv,
        _ => {
            if let Some(a) = name.strip_prefix("approval") {
                let a: usize = a.parse().map_err(|_| format!("bad approval count `{a}`"))?;
                if a == 0 {
                    return Err("approval count must be positive".into());
                }
                RuleKind::Scoring(ScoringFamily::Approval(a))
            } else if let Some(body) = name
                .strip_prefix("vector[")
                .and_then(|rest| rest.strip_suffix(']'))
            {
                let values = body
                    .split_whitespace()
                    .map(|t| Rational::from_str(t).map_err(|_| format!("bad score `{t}`")))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                let v = ScoringVector::new(values).map_err(|e| e.to_string())?;
                RuleKind::Scoring(ScoringFamily::Custom(v))
            } else {
                return Err(format!("unknown rule family `{name}`"));
            }
        }
    })
}

impl FromStr for RuleId {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let invalid = |reason: String| Error::InvalidRule {
            input: input.to_string(),
            reason,
        };
        let text = input.trim().to_ascii_lowercase();
        let (head, policy) = match text.rsplit_once(':') {
            Some((head, p)) => (head, Some(p)),
            None => (text.as_str(), None),
        };
        let (name, depth) = match head.split_once('@') {
            Some((name, d)) => (name, Some(d)),
            None => (head, None),
        };
        let kind = parse_family(name).map_err(invalid)?;
        let k = match depth {
            None => None,
            Some(d) => {
                let value = d
                    .strip_prefix("k=")
                    .ok_or_else(|| invalid(format!("expected `k=<depth>`, found `{d}`")))?;
                let k: usize = value
                    .parse()
                    .map_err(|_| invalid(format!("bad depth `{value}`")))?;
                if k == 0 {
                    return Err(invalid("depth must be at least 1".into()));
                }
                Some(k)
            }
        };
        let policy = match (policy, &kind) {
            (None, _) => CompletionPolicy::default(),
            (Some(p), RuleKind::Scoring(_)) => match p {
                "zero" | "0" => CompletionPolicy::Zero,
                "avg" | "av" | "average" => CompletionPolicy::Average,
                other => return Err(invalid(format!("unknown completion policy `{other}`"))),
            },
            (Some(_), _) => return Err(invalid("completion policies only apply to scoring rules".into())),
        };
        Ok(RuleId { kind, k, policy })
    }
}
