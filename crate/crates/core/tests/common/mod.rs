//! Test-side oracles. Each recomputes a quantity straight from the ballot
//! list, without going through the library's tallies or score tables.

#![allow(dead_code, clippy::needless_range_loop)]

use truncvote::{Profile, Rational};

/// Expanded complete ballots as plain index vectors with weights.
pub fn rows(profile: &Profile) -> Vec<(Vec<usize>, u64)> {
    profile
        .entries()
        .iter()
        .map(|(r, w)| (r.as_slice().iter().map(|c| c.index()).collect(), *w))
        .collect()
}

pub fn position(ballot: &[usize], c: usize) -> Option<usize> {
    ballot.iter().position(|&x| x == c)
}

/// Positional score of every candidate under vector `s`.
pub fn psr(rows: &[(Vec<usize>, u64)], m: usize, s: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0); m];
    for (ballot, w) in rows {
        for (pos, &c) in ballot.iter().enumerate() {
            out[c] += s[pos] * Rational::from_integer(*w as i128);
        }
    }
    out
}

/// Top-k score: the first `k` entries of `s` for listed positions, `s_star`
/// for every unlisted candidate.
pub fn topk_psr(
    rows: &[(Vec<usize>, u64)],
    m: usize,
    k: usize,
    s: &[Rational],
    s_star: Rational,
) -> Vec<Rational> {
    let mut out = vec![Rational::from_integer(0); m];
    for (ballot, w) in rows {
        let w = Rational::from_integer(*w as i128);
        for c in 0..m {
            let pts = match position(ballot, c) {
                Some(p) if p < k => s[p],
                _ => s_star,
            };
            out[c] += pts * w;
        }
    }
    out
}

/// `N(a, b)` with only the first `k` entries of each ballot visible.
pub fn dominance(rows: &[(Vec<usize>, u64)], m: usize, k: usize) -> Vec<Vec<u64>> {
    let mut n = vec![vec![0u64; m]; m];
    for (ballot, w) in rows {
        let seen = &ballot[..k.min(ballot.len())];
        for a in 0..m {
            for b in 0..m {
                let pa = position(seen, a);
                let pb = position(seen, b);
                let dominates = match (pa, pb) {
                    (Some(x), Some(y)) => x < y,
                    (Some(_), None) => true,
                    _ => false,
                };
                if a != b && dominates {
                    n[a][b] += w;
                }
            }
        }
    }
    n
}

pub fn copeland(n: &[Vec<u64>]) -> Vec<Rational> {
    let m = n.len();
    (0..m)
        .map(|a| {
            (0..m)
                .filter(|&b| b != a)
                .fold(Rational::from_integer(0), |acc, b| {
                    acc + match n[a][b].cmp(&n[b][a]) {
                        std::cmp::Ordering::Greater => Rational::from_integer(1),
                        std::cmp::Ordering::Equal => Rational::new(1, 2),
                        std::cmp::Ordering::Less => Rational::from_integer(0),
                    }
                })
        })
        .collect()
}

pub fn maximin(n: &[Vec<u64>]) -> Vec<u64> {
    let m = n.len();
    (0..m)
        .map(|a| (0..m).filter(|&b| b != a).map(|b| n[a][b]).min().unwrap_or(0))
        .collect()
}

/// Arg-max with ties resolved by the smallest index.
pub fn argmax<T: PartialOrd + Copy>(scores: &[T]) -> usize {
    let mut best = 0;
    for (i, &s) in scores.iter().enumerate() {
        if s > scores[best] {
            best = i;
        }
    }
    best
}

/// Number of first places per candidate.
pub fn first_places(rows: &[(Vec<usize>, u64)], m: usize) -> Vec<u64> {
    let mut out = vec![0; m];
    for (ballot, w) in rows {
        out[ballot[0]] += w;
    }
    out
}

/// The 62-voter example over a, b, c, d.
pub fn example_one() -> Profile {
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
