//! PrefLib strict-order election files (SOC and SOI).
//!
//! Two layouts are read:
//!
//! * classic: the candidate count on the first data line, then one
//!   `id,name` line per candidate, then `voters,sum,unique`, then
//!   `count,id1,id2,…` lines;
//! * current: `# KEY: value` metadata (notably `# ALTERNATIVE NAME i: …`,
//!   `# NUMBER ALTERNATIVES`, `# NUMBER VOTERS`) followed by
//!   `count: id1,id2,…` lines.
//!
//! Candidate ids are 1-based in files and 0-based in memory. Only strict
//! orders are accepted; tie groups (`{…}`) are rejected.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;

use crate::ballots::{CandidateId, TopKProfile};
use crate::error::{domain, Error, Result};

/// A real election: candidate names and possibly incomplete strict ballots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElectionDataset {
    names: Vec<String>,
    ballots: Vec<(Vec<CandidateId>, u64)>,
    n: u64,
}

impl ElectionDataset {
    pub fn new(names: Vec<String>, ballots: Vec<(Vec<CandidateId>, u64)>) -> Result<Self> {
        let m = names.len();
        if m < 2 {
            return Err(domain("an election needs at least two candidates"));
        }
        let mut n = 0u64;
        for (order, count) in &ballots {
            if order.is_empty() {
                return Err(domain("empty ballot"));
            }
            let mut seen = vec![false; m];
            for c in order {
                if c.index() >= m {
                    return Err(domain(format!("candidate {} out of range", c.index() + 1)));
                }
                if std::mem::replace(&mut seen[c.index()], true) {
                    return Err(domain(format!("candidate {} listed twice", c.index() + 1)));
                }
            }
            if *count == 0 {
                return Err(domain("ballot counts must be positive"));
            }
            n += count;
        }
        if n == 0 {
            return Err(domain("no voters"));
        }
        Ok(ElectionDataset { names, ballots, n })
    }

    pub fn m(&self) -> usize {
        self.names.len()
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, c: CandidateId) -> &str {
        &self.names[c.index()]
    }

    pub fn ballots(&self) -> &[(Vec<CandidateId>, u64)] {
        &self.ballots
    }

    /// The ballots as a top-(m−1) profile, the deepest truncation there is.
    pub fn to_topk_profile(&self) -> Result<TopKProfile> {
        effective_truncate(self, self.m() - 1)
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_number<T: std::str::FromStr>(line: usize, field: &str, what: &str) -> Result<T> {
    field
        .trim()
        .parse()
        .map_err(|_| parse_err(line, format!("bad {what} `{}`", field.trim())))
}

fn parse_order(line: usize, text: &str, m: usize) -> Result<Vec<CandidateId>> {
    if text.contains('{') || text.contains('}') {
        return Err(parse_err(line, "tied preferences are not supported"));
    }
    let mut seen = vec![false; m];
    let mut order = Vec::new();
    for field in text.split(',') {
        let id: usize = parse_number(line, field, "candidate id")?;
        if id == 0 || id > m {
            return Err(parse_err(line, format!("candidate id {id} outside 1..={m}")));
        }
        if std::mem::replace(&mut seen[id - 1], true) {
            return Err(parse_err(line, format!("candidate {id} listed twice")));
        }
        order.push(CandidateId(id - 1));
    }
    if order.is_empty() {
        return Err(parse_err(line, "empty ballot"));
    }
    Ok(order)
}

/// Parses either layout, picking the current one when a data line contains
/// `:` or the file declares its alternatives in `#` metadata.
pub fn parse_preflib(text: &str) -> Result<ElectionDataset> {
    let modern = text.lines().any(|l| {
        let l = l.trim();
        l.starts_with("# ALTERNATIVE NAME") || l.starts_with("# NUMBER ALTERNATIVES")
    });
    if modern {
        parse_modern(text)
    } else {
        parse_classic(text)
    }
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_classic(text: &str) -> Result<ElectionDataset> {
    let mut lines = data_lines(text);
    let (line, first) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let m: usize = parse_number(line, first, "candidate count")?;
    if m < 2 {
        return Err(parse_err(line, "an election needs at least two candidates"));
    }
    let mut names = vec![None; m];
    for _ in 0..m {
        let (line, l) = lines
            .next()
            .ok_or_else(|| parse_err(line, "missing candidate lines"))?;
        let (id, name) = l
            .split_once(',')
            .ok_or_else(|| parse_err(line, "expected `id,name`"))?;
        let id: usize = parse_number(line, id, "candidate id")?;
        if id == 0 || id > m {
            return Err(parse_err(line, format!("candidate id {id} outside 1..={m}")));
        }
        if names[id - 1].replace(name.trim().to_string()).is_some() {
            return Err(parse_err(line, format!("candidate {id} declared twice")));
        }
    }
    let names: Vec<String> = names.into_iter().map(Option::unwrap).collect();

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_err(line, "missing `voters,sum,unique` line"))?;
    let fields: Vec<&str> = header.split(',').collect();
    if fields.len() != 3 {
        return Err(parse_err(header_line, "expected `voters,sum,unique`"));
    }
    let voters: u64 = parse_number(header_line, fields[0], "voter count")?;
    let sum: u64 = parse_number(header_line, fields[1], "vote sum")?;
    let unique: usize = parse_number(header_line, fields[2], "unique order count")?;

    let mut ballots = Vec::new();
    let mut total = 0u64;
    for (line, l) in lines {
        let (count, rest) = l
            .split_once(',')
            .ok_or_else(|| parse_err(line, "expected `count,id,…`"))?;
        let count: u64 = parse_number(line, count, "ballot count")?;
        if count == 0 {
            return Err(parse_err(line, "ballot count must be positive"));
        }
        total += count;
        ballots.push((parse_order(line, rest, m)?, count));
    }
    if total != voters || total != sum {
        return Err(parse_err(
            header_line,
            format!("declared {voters} voters (sum {sum}) but ballots count {total}"),
        ));
    }
    if ballots.len() != unique {
        return Err(parse_err(
            header_line,
            format!("declared {unique} unique orders, found {}", ballots.len()),
        ));
    }
    ElectionDataset::new(names, ballots).map_err(|e| parse_err(header_line, e.to_string()))
}

fn parse_modern(text: &str) -> Result<ElectionDataset> {
    let mut declared_m: Option<usize> = None;
    let mut declared_n: Option<(usize, u64)> = None;
    let mut named: BTreeMap<usize, String> = BTreeMap::new();
    for (i, l) in text.lines().enumerate() {
        let line = i + 1;
        let Some(meta) = l.trim().strip_prefix('#') else {
            continue;
        };
        let Some((key, value)) = meta.split_once(':') else {
            continue;
        };
        let key = key.trim();
        if key == "NUMBER ALTERNATIVES" {
            declared_m = Some(parse_number(line, value, "alternative count")?);
        } else if key == "NUMBER VOTERS" {
            declared_n = Some((line, parse_number(line, value, "voter count")?));
        } else if let Some(id) = key.strip_prefix("ALTERNATIVE NAME") {
            let id: usize = parse_number(line, id, "alternative id")?;
            if id == 0 {
                return Err(parse_err(line, "alternative ids start at 1"));
            }
            named.insert(id, value.trim().to_string());
        }
    }
    let m = declared_m
        .or_else(|| named.keys().next_back().copied())
        .unwrap_or(0);
    if m < 2 {
        return Err(parse_err(1, "an election needs at least two candidates"));
    }
    if let Some((&id, _)) = named.range(m + 1..).next() {
        return Err(parse_err(
            1,
            format!("alternative {id} exceeds declared count {m}"),
        ));
    }
    let names: Vec<String> = (1..=m)
        .map(|i| named.get(&i).cloned().unwrap_or_else(|| i.to_string()))
        .collect();

    let mut ballots = Vec::new();
    let mut total = 0u64;
    for (line, l) in data_lines(text) {
        let (count, rest) = l
            .split_once(':')
            .ok_or_else(|| parse_err(line, "expected `count: id,…`"))?;
        let count: u64 = parse_number(line, count, "ballot count")?;
        if count == 0 {
            return Err(parse_err(line, "ballot count must be positive"));
        }
        total += count;
        ballots.push((parse_order(line, rest, m)?, count));
    }
    if let Some((line, n)) = declared_n {
        if n != total {
            return Err(parse_err(
                line,
                format!("declared {n} voters but ballots count {total}"),
            ));
        }
    }
    ElectionDataset::new(names, ballots).map_err(|e| parse_err(1, e.to_string()))
}

/// Writes the classic layout; [`parse_preflib`] reads it back unchanged.
pub fn to_classic(ds: &ElectionDataset) -> String {
    let mut out = String::new();
    writeln!(out, "{}", ds.m()).unwrap();
    for (i, name) in ds.names.iter().enumerate() {
        writeln!(out, "{},{}", i + 1, name).unwrap();
    }
    writeln!(out, "{},{},{}", ds.n, ds.n, ds.ballots.len()).unwrap();
    for (order, count) in &ds.ballots {
        write!(out, "{count}").unwrap();
        for c in order {
            write!(out, ",{}", c.index() + 1).unwrap();
        }
        out.push('\n');
    }
    out
}

/// How voters are drawn from a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampling {
    #[default]
    WithoutReplacement,
    WithReplacement,
}

/// Draws `n_star` voters uniformly from the dataset's voter list.
///
/// The result keeps the dataset's names and ballot order; ballot types that
/// were not drawn are dropped.
pub fn resample<R: Rng + ?Sized>(
    ds: &ElectionDataset,
    n_star: u64,
    sampling: Sampling,
    rng: &mut R,
) -> Result<ElectionDataset> {
    if n_star == 0 || (sampling == Sampling::WithoutReplacement && n_star > ds.n) {
        return Err(domain(format!("n* = {n_star} outside 1..={}", ds.n)));
    }
    // Voter v casts ballot type i where bounds[i-1] ≤ v < bounds[i].
    let bounds: Vec<u64> = ds
        .ballots
        .iter()
        .scan(0u64, |acc, (_, c)| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    let type_of = |v: u64| bounds.partition_point(|&b| b <= v);
    let mut drawn = vec![0u64; ds.ballots.len()];
    match sampling {
        Sampling::WithoutReplacement => {
            let n = usize::try_from(ds.n).map_err(|_| domain("dataset too large"))?;
            for v in rand::seq::index::sample(rng, n, n_star as usize).into_iter() {
                drawn[type_of(v as u64)] += 1;
            }
        }
        Sampling::WithReplacement => {
            for _ in 0..n_star {
                drawn[type_of(rng.gen_range(0..ds.n))] += 1;
            }
        }
    }
    let ballots = ds
        .ballots
        .iter()
        .zip(drawn)
        .filter(|(_, d)| *d > 0)
        .map(|((order, _), d)| (order.clone(), d))
        .collect();
    Ok(ElectionDataset {
        names: ds.names.clone(),
        ballots,
        n: n_star,
    })
}

/// Cuts every ballot to its first `min(k, ℓ)` entries; the result is
/// collected at nominal depth `k`.
pub fn effective_truncate(ds: &ElectionDataset, k: usize) -> Result<TopKProfile> {
    TopKProfile::from_prefixes(ds.m(), k, ds.ballots.iter().map(|(b, c)| (b.as_slice(), *c)))
}
