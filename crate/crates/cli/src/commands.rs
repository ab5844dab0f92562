use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use truncvote::bounds::{
    copeland_adversarial, maximin_adversarial, maximin_bounds, price_of_truncation, psr_adversarial,
    psr_bounds, AdversarialInstance,
};
use truncvote::experiments::{
    csv_string, min_k_search, run_ratio, run_success_rate, sweep_real_data, CsvRecord, Electorate,
    ExperimentConfig, ProfileSource, SweepConfig,
};
use truncvote::mallows::{sample_profile, MallowsModel};
use truncvote::preflib::{effective_truncate, parse_preflib, to_classic, ElectionDataset, Sampling};
use truncvote::rng::rng_from_seed;
use truncvote::rules::{apply_rule, completion_score, RuleKind};
use truncvote::{CandidateId, Error, Profile, Ranking, RatioBound, RuleId, ScoreRatio, TieBreak};

use crate::args::{
    Cli, Command, Experiment, ExperimentArgs, Model, OutArg, SamplingArg, SweepArgs, TiebreakArg,
};
use crate::Failure;

type Outcome<T = ()> = Result<T, Failure>;

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Winner {
            rule,
            profile,
            tiebreak,
        } => winner(&rule, &profile, &tiebreak),
        Command::Truncate { profile, k, out } => truncate(&profile, k, &out),
        Command::Sample { m, phi, n, seed, out } => sample(m, phi, n, seed, &out),
        Command::Bounds {
            rule,
            m,
            k,
            table,
            m_min,
            m_max,
            out,
        } => {
            let rule = parse_rule(&rule)?;
            if table {
                bounds_table(&rule, m_min, m_max, &out)
            } else {
                let (m, k) = (m.expect("required by clap"), k.expect("required by clap"));
                let (lower, upper) = bounds(&rule, m, k)?;
                emit(&out, format!("lower={lower} upper={upper}\n"))
            }
        }
        Command::Adversarial { rule, m, k, out } => adversarial(&parse_rule(&rule)?, m, k, &out),
        Command::Experiment(Experiment::Success(a)) => {
            let cfg = experiment_config(&a)?;
            emit(&a.out, csv_string(&run_success_rate(&cfg)?)?)
        }
        Command::Experiment(Experiment::Ratio(a)) => {
            let cfg = experiment_config(&a)?;
            emit(&a.out, csv_string(&run_ratio(&cfg)?)?)
        }
        Command::Experiment(Experiment::MinK(a)) => {
            let cfg = experiment_config(&a)?;
            emit(&a.out, csv_string(&min_k_search(&cfg)?)?)
        }
        Command::Experiment(Experiment::RealSweep(a)) => real_sweep(&a),
        Command::ParseCheck { profile } => parse_check(&profile),
    }
}

fn emit(out: &OutArg, text: String) -> Outcome {
    match &out.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn parse_rule(text: &str) -> Outcome<RuleId> {
    Ok(text.parse()?)
}

fn undepthed_rule(text: &str) -> Outcome<RuleId> {
    let rule = parse_rule(text)?;
    if rule.k().is_some() {
        return Err(Failure::Input(format!(
            "rule `{text}` must not carry a depth here; use --k"
        )));
    }
    Ok(rule)
}

fn load(path: &Path) -> Outcome<ElectionDataset> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    parse_preflib(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Complete rankings when every ballot lists at least m−1 candidates,
/// otherwise the ballots as given at depth m−1.
fn electorate(ds: &ElectionDataset) -> Outcome<Electorate> {
    let m = ds.m();
    if ds.ballots().iter().all(|(b, _)| b.len() + 1 >= m) {
        let entries = ds
            .ballots()
            .iter()
            .map(|(b, c)| {
                let mut order = b.clone();
                order.extend((0..m).map(CandidateId).filter(|x| !b.contains(x)));
                Ok((Ranking::new(order)?, *c))
            })
            .collect::<Result<Vec<_>, Error>>()?;
        Ok(Electorate::Complete(Profile::new(m, entries)?))
    } else {
        Ok(Electorate::Partial(ds.to_topk_profile()?))
    }
}

fn tiebreak(arg: &TiebreakArg, m: usize) -> Outcome<TieBreak> {
    match &arg.priority {
        None => Ok(TieBreak::ascending(m)),
        Some(ids) => {
            if ids.len() != m {
                return Err(Failure::Input(format!(
                    "--tiebreak lists {} candidates, expected {m}",
                    ids.len()
                )));
            }
            TieBreak::new(ids.iter().map(|&i| CandidateId(i)).collect())
                .map_err(|e| Failure::Input(format!("--tiebreak: {e}")))
        }
    }
}

fn winner(rule: &str, path: &Path, tb: &TiebreakArg) -> Outcome {
    let rule = parse_rule(rule)?;
    let ds = load(path)?;
    let e = electorate(&ds)?;
    let w = apply_rule(&rule, e.ballots(), &tiebreak(tb, ds.m())?)?;
    println!("{}", ds.name(w));
    Ok(())
}

fn truncate(path: &Path, k: usize, out: &OutArg) -> Outcome {
    let ds = load(path)?;
    let tp = effective_truncate(&ds, k)?;
    let ballots = tp
        .entries()
        .iter()
        .map(|(b, c)| (b.as_slice().to_vec(), *c))
        .collect();
    emit(
        out,
        to_classic(&ElectionDataset::new(ds.names().to_vec(), ballots)?),
    )
}

fn numbered(prefix: &str, m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("{prefix}{i}")).collect()
}

fn profile_file(names: Vec<String>, p: &Profile) -> Outcome<String> {
    let ballots = p
        .entries()
        .iter()
        .map(|(r, c)| (r.as_slice().to_vec(), *c))
        .collect();
    Ok(to_classic(&ElectionDataset::new(names, ballots)?))
}

fn sample(m: usize, phi: f64, n: u64, seed: u64, out: &OutArg) -> Outcome {
    let model = MallowsModel::with_identity(m, phi)?;
    let p = sample_profile(&model, n, &mut rng_from_seed(seed))?;
    emit(out, profile_file(numbered("c", m), &p)?)
}

/// Lower and upper worst-case ratio.
fn bounds(rule: &RuleId, m: usize, k: usize) -> Outcome<(ScoreRatio, ScoreRatio)> {
    let finite = |b: RatioBound| (ScoreRatio::Finite(b.lower), b.upper);
    if rule.k().is_some() {
        return Err(Failure::Input(
            "give the depth with --k, not in the rule string".into(),
        ));
    }
    match rule.kind() {
        RuleKind::Scoring(family) => {
            let s = family.vector(m)?;
            let s_star = completion_score(&s, k, rule.policy())?;
            Ok(finite(psr_bounds(&s, k, s_star)?))
        }
        RuleKind::Maximin => Ok(finite(maximin_bounds(m, k)?)),
        RuleKind::Copeland if m >= 2 && (1..m).contains(&k) => {
            Ok((ScoreRatio::Infinite, ScoreRatio::Infinite))
        }
        RuleKind::Copeland => {
            Err(Error::Domain(format!("k = {k} outside 1..={}", m.saturating_sub(1))).into())
        }
        _ => Err(Error::UnsupportedRule(rule.to_string()).into()),
    }
}

fn construction(rule: &RuleId, m: usize, k: usize) -> Outcome<AdversarialInstance> {
    if rule.k().is_some() {
        return Err(Failure::Input(
            "give the depth with --k, not in the rule string".into(),
        ));
    }
    match rule.kind() {
        RuleKind::Scoring(family) => {
            let s = family.vector(m)?;
            let s_star = completion_score(&s, k, rule.policy())?;
            Ok(psr_adversarial(&s, k, s_star)?)
        }
        RuleKind::Maximin => Ok(maximin_adversarial(m, k)?),
        RuleKind::Copeland => Ok(copeland_adversarial(m, k)?),
        _ => Err(Error::UnsupportedRule(rule.to_string()).into()),
    }
}

fn adversarial(rule: &RuleId, m: usize, k: usize, out: &OutArg) -> Outcome {
    let inst = construction(rule, m, k)?;
    let ratio = price_of_truncation(&inst.profile, rule, k, &TieBreak::ascending(m))?;
    eprintln!(
        "{} voters; top-{k} winner x{}, full winner x{}; ratio {ratio}",
        inst.profile.n(),
        inst.x1.index() + 1,
        inst.x2.index() + 1
    );
    emit(out, profile_file(numbered("x", m), &inst.profile)?)
}

struct BoundRow {
    m: usize,
    k: usize,
    rule: RuleId,
    lower: ScoreRatio,
    upper: ScoreRatio,
    attained: Option<ScoreRatio>,
}

impl CsvRecord for BoundRow {
    const HEADER: &'static [&'static str] = &["m", "k", "rule", "lower", "upper", "attained"];

    fn fields(&self) -> Vec<String> {
        vec![
            self.m.to_string(),
            self.k.to_string(),
            self.rule.to_string(),
            self.lower.to_string(),
            self.upper.to_string(),
            self.attained.map(|r| r.to_string()).unwrap_or_default(),
        ]
    }
}

fn bounds_table(rule: &RuleId, m_min: usize, m_max: usize, out: &OutArg) -> Outcome {
    let mut rows = Vec::new();
    for m in m_min.max(3)..=m_max {
        let k_max = match rule.kind() {
            RuleKind::Maximin => m - 1,
            _ => m - 2,
        };
        for k in 1..=k_max {
            let (lower, upper) = bounds(rule, m, k)?;
            let attained = match construction(rule, m, k) {
                Ok(inst) => Some(price_of_truncation(
                    &inst.profile,
                    rule,
                    k,
                    &TieBreak::ascending(m),
                )?),
                Err(Failure::Domain(_)) => None,
                Err(e) => return Err(e),
            };
            rows.push(BoundRow {
                m,
                k,
                rule: rule.clone(),
                lower,
                upper,
                attained,
            });
        }
    }
    emit(out, csv_string(&rows)?)
}

fn sampling(arg: SamplingArg) -> Sampling {
    match arg {
        SamplingArg::Without => Sampling::WithoutReplacement,
        SamplingArg::With => Sampling::WithReplacement,
    }
}

fn experiment_config(a: &ExperimentArgs) -> Outcome<ExperimentConfig> {
    let source = match (&a.model, &a.data) {
        (Some(Model::Mallows), _) => match (a.m, a.phi, a.n) {
            (Some(m), Some(phi), Some(n)) => ProfileSource::Mallows { m, phi, n },
            _ => return Err(Failure::Input("--model mallows needs --m, --phi and --n".into())),
        },
        (None, Some(path)) => {
            let dataset = Arc::new(load(path)?);
            let n_star = a
                .n_star
                .ok_or_else(|| Failure::Input("--data needs --n-star".into()))?;
            ProfileSource::PreflibResample {
                dataset,
                n_star,
                sampling: sampling(a.sampling),
            }
        }
        (None, None) => return Err(Failure::Input("give --model or --data".into())),
    };
    let m = source.m();
    let k_values = if a.k.is_empty() {
        (1..m).collect()
    } else {
        a.k.clone()
    };
    Ok(ExperimentConfig {
        rules: a
            .rules
            .iter()
            .map(|r| undepthed_rule(r))
            .collect::<Outcome<_>>()?,
        k_values,
        trials: a.trials,
        base_seed: a.seed,
        tiebreak: tiebreak(&a.tiebreak, m)?,
        workers: a.workers,
        source,
    })
}

fn real_sweep(a: &SweepArgs) -> Outcome {
    let dataset = Arc::new(load(&a.data)?);
    let m = dataset.m();
    let cfg = SweepConfig {
        dataset,
        n_star_grid: a.n_star.clone(),
        k_grid: a.k.clone(),
        rules: a
            .rules
            .iter()
            .map(|r| undepthed_rule(r))
            .collect::<Outcome<_>>()?,
        trials: a.trials,
        base_seed: a.seed,
        tiebreak: tiebreak(&a.tiebreak, m)?,
        sampling: sampling(a.sampling),
        workers: a.workers,
    };
    emit(&a.out, csv_string(&sweep_real_data(&cfg)?)?)
}

fn parse_check(path: &Path) -> Outcome {
    let ds = load(path)?;
    let lengths = ds.ballots().iter().map(|(b, _)| b.len());
    let shortest = lengths.clone().min().unwrap_or(0);
    let longest = lengths.max().unwrap_or(0);
    let kind = if shortest + 1 >= ds.m() {
        "complete"
    } else {
        "partial"
    };
    println!(
        "m={} n={} ballot_types={} shortest={shortest} longest={longest} kind={kind}",
        ds.m(),
        ds.n(),
        ds.ballots().len()
    );
    Ok(())
}
