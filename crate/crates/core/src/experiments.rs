//! Seeded Monte-Carlo experiments comparing rules with their top-k versions.
//!
//! Every trial draws one electorate from a [`ProfileSource`] with its own
//! random stream, seeded by [`trial_seed`]`(base_seed, trial)`, and evaluates
//! every configured rule at every configured depth on it. Trials may run on
//! any number of worker threads; results are merged by trial index, so the
//! output does not depend on the worker count.

use std::io;
use std::sync::Arc;

use rayon::prelude::*;

use crate::ballots::{CandidateId, Profile, TieBreak, TopKProfile};
use crate::bounds::ScoreRatio;
use crate::error::{domain, Error, Result};
use crate::mallows::{sample_profile, MallowsModel};
use crate::preflib::{effective_truncate, resample, ElectionDataset, Sampling};
use crate::rng::{rng_from_seed, trial_seed, TrialRng};
use crate::rules::{apply_rule, score_table, winner_from_scores, Ballots, RuleId};
use crate::Rational;

/// The ballots of one trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Electorate {
    Complete(Profile),
    /// Real-world ballots that may stop before the last candidate, held at
    /// nominal depth `m−1`.
    Partial(TopKProfile),
}

impl Electorate {
    pub fn m(&self) -> usize {
        self.ballots().m()
    }

    pub fn ballots(&self) -> Ballots<'_> {
        match self {
            Electorate::Complete(p) => Ballots::Complete(p),
            Electorate::Partial(p) => Ballots::TopK(p),
        }
    }
}

/// Where trial electorates come from.
#[derive(Debug, Clone)]
pub enum ProfileSource {
    /// `n` voters drawn from a Mallows model centred on `0 ≻ 1 ≻ … ≻ m−1`.
    Mallows { m: usize, phi: f64, n: u64 },
    /// `n_star` voters drawn from a real election.
    PreflibResample {
        dataset: Arc<ElectionDataset>,
        n_star: u64,
        sampling: Sampling,
    },
    /// The same electorate in every trial.
    Fixed(Electorate),
}

impl ProfileSource {
    pub fn m(&self) -> usize {
        match self {
            ProfileSource::Mallows { m, .. } => *m,
            ProfileSource::PreflibResample { dataset, .. } => dataset.m(),
            ProfileSource::Fixed(e) => e.m(),
        }
    }

    pub fn phi(&self) -> Option<f64> {
        match self {
            ProfileSource::Mallows { phi, .. } => Some(*phi),
            _ => None,
        }
    }

    /// Voters per electorate.
    pub fn n(&self) -> u64 {
        match self {
            ProfileSource::Mallows { n, .. } => *n,
            ProfileSource::PreflibResample { n_star, .. } => *n_star,
            ProfileSource::Fixed(Electorate::Complete(p)) => p.n(),
            ProfileSource::Fixed(Electorate::Partial(p)) => p.n(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            ProfileSource::Mallows { m, phi, n } => {
                MallowsModel::with_identity(*m, *phi)?;
                if *n == 0 {
                    return Err(domain("n must be at least 1"));
                }
            }
            ProfileSource::PreflibResample {
                dataset,
                n_star,
                sampling,
            } => {
                if *n_star == 0 || (*sampling == Sampling::WithoutReplacement && *n_star > dataset.n()) {
                    return Err(domain(format!("n* = {n_star} outside 1..={}", dataset.n())));
                }
            }
            ProfileSource::Fixed(_) => {}
        }
        Ok(())
    }

    pub fn draw(&self, rng: &mut TrialRng) -> Result<Electorate> {
        match self {
            ProfileSource::Mallows { m, phi, n } => {
                let model = MallowsModel::with_identity(*m, *phi)?;
                Ok(Electorate::Complete(sample_profile(&model, *n, rng)?))
            }
            ProfileSource::PreflibResample {
                dataset,
                n_star,
                sampling,
            } => {
                let sub = resample(dataset, *n_star, *sampling, rng)?;
                Ok(Electorate::Partial(effective_truncate(&sub, sub.m() - 1)?))
            }
            ProfileSource::Fixed(e) => Ok(e.clone()),
        }
    }
}

/// A Monte-Carlo run. `rules` are given without a depth; each is evaluated
/// at every entry of `k_values`.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: ProfileSource,
    pub rules: Vec<RuleId>,
    pub k_values: Vec<usize>,
    pub trials: usize,
    pub base_seed: u64,
    pub tiebreak: TieBreak,
    /// Worker threads; 0 uses rayon's global pool.
    pub workers: usize,
}

impl ExperimentConfig {
    fn validate(&self, scores_needed: bool) -> Result<()> {
        let m = self.source.m();
        self.source.validate()?;
        if self.trials == 0 {
            return Err(domain("trials must be at least 1"));
        }
        if self.rules.is_empty() {
            return Err(domain("no rules given"));
        }
        if self.k_values.is_empty() {
            return Err(domain("no k values given"));
        }
        if let Some(k) = self.k_values.iter().find(|&&k| k == 0 || k >= m) {
            return Err(domain(format!("k = {k} outside 1..={}", m - 1)));
        }
        if self.tiebreak.m() != m {
            return Err(domain(format!(
                "tie-break covers {} candidates, source has {m}",
                self.tiebreak.m()
            )));
        }
        for rule in &self.rules {
            if rule.k().is_some() {
                return Err(domain(format!(
                    "rule `{rule}` carries its own depth; pass depths as k values"
                )));
            }
            if scores_needed && !rule.is_score_based() {
                return Err(Error::UnsupportedRule(rule.to_string()));
            }
        }
        Ok(())
    }
}

/// Outcome of one rule at one depth in one trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialRecord {
    pub trial_index: usize,
    pub rule: RuleId,
    pub k: usize,
    pub true_winner: CandidateId,
    pub topk_winner: CandidateId,
    pub agree: bool,
    /// Original-score ratio of the two winners; only for score-based runs.
    pub ratio: Option<ScoreRatio>,
}

fn evaluate_trial(cfg: &ExperimentConfig, index: usize, with_ratio: bool) -> Result<Vec<TrialRecord>> {
    let mut rng = rng_from_seed(trial_seed(cfg.base_seed, index as u64));
    let electorate = cfg.source.draw(&mut rng)?;
    let ballots = electorate.ballots();
    let tb = &cfg.tiebreak;
    let mut out = Vec::with_capacity(cfg.rules.len() * cfg.k_values.len());
    for rule in &cfg.rules {
        let (true_winner, scores) = if with_ratio {
            let scores = score_table(rule, ballots)?;
            (winner_from_scores(&scores, tb), Some(scores))
        } else {
            (apply_rule(rule, ballots, tb)?, None)
        };
        for &k in &cfg.k_values {
            let topk_winner = apply_rule(&rule.with_k(k), ballots, tb)?;
            let ratio = scores
                .as_ref()
                .map(|s| ScoreRatio::of(s.get(true_winner), s.get(topk_winner)));
            out.push(TrialRecord {
                trial_index: index,
                rule: rule.clone(),
                k,
                true_winner,
                topk_winner,
                agree: true_winner == topk_winner,
                ratio,
            });
        }
    }
    Ok(out)
}

fn with_workers<T: Send>(workers: usize, job: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(job());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| domain(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(job))
}

/// Runs every trial; records are ordered by trial, then rule, then depth.
pub fn run_trials(cfg: &ExperimentConfig, with_ratio: bool) -> Result<Vec<TrialRecord>> {
    cfg.validate(with_ratio)?;
    let per_trial = with_workers(cfg.workers, || {
        (0..cfg.trials)
            .into_par_iter()
            .map(|t| evaluate_trial(cfg, t, with_ratio))
            .collect::<Result<Vec<_>>>()
    })??;
    Ok(per_trial.into_iter().flatten().collect())
}

/// Columns shared by every experiment table.
fn group_index(cfg: &ExperimentConfig, rule: usize, k: usize) -> usize {
    rule * cfg.k_values.len() + k
}

/// One line of a CSV table.
pub trait CsvRecord {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

fn fmt_phi(phi: Option<f64>) -> String {
    phi.map(|p| p.to_string()).unwrap_or_default()
}

/// `rule,k,phi,n,trials,seed,rate`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuccessRow {
    pub rule: RuleId,
    pub k: usize,
    pub phi: Option<f64>,
    pub n: u64,
    pub trials: usize,
    pub seed: u64,
    pub agreements: usize,
}

impl SuccessRow {
    pub fn rate(&self) -> f64 {
        self.agreements as f64 / self.trials as f64
    }
}

impl CsvRecord for SuccessRow {
    const HEADER: &'static [&'static str] = &["rule", "k", "phi", "n", "trials", "seed", "rate"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.rule.to_string(),
            self.k.to_string(),
            fmt_phi(self.phi),
            self.n.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
            format!("{:.4}", self.rate()),
        ]
    }
}

/// Fraction of trials in which `f_k` elects the same candidate as `f`, per
/// rule and depth.
pub fn run_success_rate(cfg: &ExperimentConfig) -> Result<Vec<SuccessRow>> {
    let records = run_trials(cfg, false)?;
    Ok(success_rows(cfg, &records))
}

fn success_rows(cfg: &ExperimentConfig, records: &[TrialRecord]) -> Vec<SuccessRow> {
    let groups = cfg.rules.len() * cfg.k_values.len();
    let mut agreements = vec![0usize; groups];
    for (i, rec) in records.iter().enumerate() {
        if rec.agree {
            agreements[i % groups] += 1;
        }
    }
    let mut rows = Vec::with_capacity(groups);
    for (r, rule) in cfg.rules.iter().enumerate() {
        for (ki, &k) in cfg.k_values.iter().enumerate() {
            rows.push(SuccessRow {
                rule: rule.clone(),
                k,
                phi: cfg.source.phi(),
                n: cfg.source.n(),
                trials: cfg.trials,
                seed: cfg.base_seed,
                agreements: agreements[group_index(cfg, r, ki)],
            });
        }
    }
    rows
}

/// `rule,k,phi,n,trials,seed,mean_ratio,max_ratio,inf_count`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioRow {
    pub rule: RuleId,
    pub k: usize,
    pub phi: Option<f64>,
    pub n: u64,
    pub trials: usize,
    pub seed: u64,
    /// Mean over finite ratios; `None` when every ratio was infinite.
    pub mean_ratio: Option<f64>,
    pub max_ratio: Option<Rational>,
    pub inf_count: usize,
}

impl CsvRecord for RatioRow {
    const HEADER: &'static [&'static str] = &[
        "rule",
        "k",
        "phi",
        "n",
        "trials",
        "seed",
        "mean_ratio",
        "max_ratio",
        "inf_count",
    ];

    fn fields(&self) -> Vec<String> {
        vec![
            self.rule.to_string(),
            self.k.to_string(),
            fmt_phi(self.phi),
            self.n.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
            self.mean_ratio.map(|m| format!("{m:.6}")).unwrap_or_default(),
            self.max_ratio
                .map(|m| format!("{:.6}", ScoreRatio::Finite(m).to_f64()))
                .unwrap_or_default(),
            self.inf_count.to_string(),
        ]
    }
}

/// Mean and maximum of the per-trial score ratio; infinite ratios are
/// counted separately and left out of both.
pub fn run_ratio(cfg: &ExperimentConfig) -> Result<Vec<RatioRow>> {
    let records = run_trials(cfg, true)?;
    let groups = cfg.rules.len() * cfg.k_values.len();
    let mut sums = vec![0.0f64; groups];
    let mut finite = vec![0usize; groups];
    let mut max: Vec<Option<Rational>> = vec![None; groups];
    let mut inf = vec![0usize; groups];
    for (i, rec) in records.iter().enumerate() {
        let g = i % groups;
        match rec.ratio.expect("ratio runs record ratios") {
            ScoreRatio::Infinite => inf[g] += 1,
            ScoreRatio::Finite(r) => {
                sums[g] += ScoreRatio::Finite(r).to_f64();
                finite[g] += 1;
                max[g] = Some(max[g].map_or(r, |cur| cur.max(r)));
            }
        }
    }
    let mut rows = Vec::with_capacity(groups);
    for (r, rule) in cfg.rules.iter().enumerate() {
        for (ki, &k) in cfg.k_values.iter().enumerate() {
            let g = group_index(cfg, r, ki);
            rows.push(RatioRow {
                rule: rule.clone(),
                k,
                phi: cfg.source.phi(),
                n: cfg.source.n(),
                trials: cfg.trials,
                seed: cfg.base_seed,
                mean_ratio: (finite[g] > 0).then(|| sums[g] / finite[g] as f64),
                max_ratio: max[g],
                inf_count: inf[g],
            });
        }
    }
    Ok(rows)
}

/// `rule,min_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinKRow {
    pub rule: RuleId,
    pub min_k: usize,
}

impl CsvRecord for MinKRow {
    const HEADER: &'static [&'static str] = &["rule", "min_k"];

    fn fields(&self) -> Vec<String> {
        vec![self.rule.to_string(), self.min_k.to_string()]
    }
}

/// Smallest depth at which `f_k` agreed with `f` in every trial, or `m−1`
/// when no smaller depth did.
pub fn min_k_search(cfg: &ExperimentConfig) -> Result<Vec<MinKRow>> {
    let rows = run_success_rate(cfg)?;
    let m = cfg.source.m();
    Ok(cfg
        .rules
        .iter()
        .map(|rule| {
            let min_k = rows
                .iter()
                .filter(|row| &row.rule == rule && row.agreements == row.trials)
                .map(|row| row.k)
                .min()
                .unwrap_or(m - 1)
                .min(m - 1);
            MinKRow {
                rule: rule.clone(),
                min_k,
            }
        })
        .collect())
}

/// A success-rate sweep over sub-election sizes drawn from one dataset.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub dataset: Arc<ElectionDataset>,
    pub n_star_grid: Vec<u64>,
    pub k_grid: Vec<usize>,
    pub rules: Vec<RuleId>,
    pub trials: usize,
    pub base_seed: u64,
    pub tiebreak: TieBreak,
    pub sampling: Sampling,
    pub workers: usize,
}

/// `rule,k,n_star,trials,seed,rate`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub rule: RuleId,
    pub k: usize,
    pub n_star: u64,
    pub trials: usize,
    pub seed: u64,
    pub agreements: usize,
}

impl SweepRow {
    pub fn rate(&self) -> f64 {
        self.agreements as f64 / self.trials as f64
    }
}

impl CsvRecord for SweepRow {
    const HEADER: &'static [&'static str] = &["rule", "k", "n_star", "trials", "seed", "rate"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.rule.to_string(),
            self.k.to_string(),
            self.n_star.to_string(),
            self.trials.to_string(),
            self.seed.to_string(),
            format!("{:.4}", self.rate()),
        ]
    }
}

/// For each `n*`, resamples `trials` sub-elections and compares each rule on
/// the sampled ballots as given with its top-k version.
pub fn sweep_real_data(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    if let Some(&bad) = cfg
        .n_star_grid
        .iter()
        .find(|&&n| n == 0 || (cfg.sampling == Sampling::WithoutReplacement && n > cfg.dataset.n()))
    {
        return Err(domain(format!("n* = {bad} outside 1..={}", cfg.dataset.n())));
    }
    let mut rows = Vec::new();
    for &n_star in &cfg.n_star_grid {
        let run = ExperimentConfig {
            source: ProfileSource::PreflibResample {
                dataset: Arc::clone(&cfg.dataset),
                n_star,
                sampling: cfg.sampling,
            },
            rules: cfg.rules.clone(),
            k_values: cfg.k_grid.clone(),
            trials: cfg.trials,
            base_seed: trial_seed(cfg.base_seed, n_star),
            tiebreak: cfg.tiebreak.clone(),
            workers: cfg.workers,
        };
        rows.extend(run_success_rate(&run)?.into_iter().map(|row| SweepRow {
            rule: row.rule,
            k: row.k,
            n_star,
            trials: row.trials,
            seed: cfg.base_seed,
            agreements: row.agreements,
        }));
    }
    Ok(rows)
}

/// Writes a header and one line per row: minimal quoting, UTF-8, `\n` line
/// endings.
pub fn write_csv<R: CsvRecord, W: io::Write>(rows: &[R], destination: W) -> Result<()> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(destination);
    writer.write_record(R::HEADER)?;
    for row in rows {
        writer.write_record(row.fields())?;
    }
    writer.flush()?;
    Ok(())
}

/// [`write_csv`] into a string.
pub fn csv_string<R: CsvRecord>(rows: &[R]) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| domain(e.to_string()))
}
