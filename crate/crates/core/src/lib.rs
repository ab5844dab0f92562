//! Voting rules over complete and top-k truncated ballots.
//!
//! The crate covers four areas:
//!
//! * [`ballots`]: candidates, rankings, truncated ballots, weighted profiles,
//!   pairwise and dominance tallies, majority graphs.
//! * [`rules`]: positional scoring rules (Borda, Harmonic, k-approval),
//!   Copeland, Maximin, Ranked Pairs and STV, each in a complete and a
//!   top-k form, plus the rule-string grammar used by the CLI.
//! * [`bounds`]: closed-form worst-case score ratios between a rule and its
//!   top-k approximation, and explicit profiles that attain them.
//! * [`mallows`], [`preflib`] and [`experiments`]: profile generation, real
//!   election data ingestion, and the seeded Monte-Carlo harness.
//!
//! All scores are exact rationals ([`Rational`]); only the Mallows
//! probabilities and aggregated experiment statistics use `f64`.
//!
//! ```
//! use truncvote::ballots::{Profile, TieBreak};
//! use truncvote::rules::{apply_rule, RuleId};
//!
//! let profile = Profile::from_index_rows(
//!     4,
//!     &[(&[0, 3, 2, 1], 20), (&[1, 2, 3, 0], 10), (&[2, 3, 1, 0], 15), (&[3, 2, 0, 1], 17)],
//! )
//! .unwrap();
//! let rule: RuleId = "copeland@k=2".parse().unwrap();
//! let winner = apply_rule(&rule, &profile, &TieBreak::ascending(4)).unwrap();
//! assert_eq!(winner.index(), 3);
//! ```

pub mod ballots;
pub mod bounds;
mod error;
pub mod experiments;
pub mod mallows;
pub mod preflib;
pub mod rng;
pub mod rules;

pub use ballots::{
    CandidateId, MajorityGraph, PairwiseTally, Profile, Ranking, TieBreak, TopKBallot, TopKProfile,
};
pub use bounds::{AdversarialInstance, RatioBound, ScoreRatio};
pub use error::{Error, Result};
pub use rules::{RuleId, ScoreTable, ScoringVector, TopKScoringVector};

/// Exact rational used for every score, scoring vector and bound.
pub type Rational = num_rational::Ratio<i128>;
