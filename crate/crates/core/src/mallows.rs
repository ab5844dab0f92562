//! Mallows φ-model over rankings.
//!
//! `P(r) = φ^d(r, σ) / Z` where `d` is the Kendall tau distance to the
//! reference ranking `σ`. With `φ = 1` every ranking is equally likely
//! (impartial culture).

use rand::Rng;

use crate::ballots::{CandidateId, Profile, Ranking};
use crate::error::{domain, Result};

/// Number of candidate pairs the two rankings order differently.
pub fn kendall_tau(a: &Ranking, b: &Ranking) -> Result<u64> {
    if a.m() != b.m() {
        return Err(domain(format!(
            "rankings over {} and {} candidates",
            a.m(),
            b.m()
        )));
    }
    let pos = b.positions();
    // Relabel a's order by b's positions and count inversions.
    let seq: Vec<usize> = a.as_slice().iter().map(|c| pos[c.index()]).collect();
    let mut inversions = 0u64;
    for (i, &x) in seq.iter().enumerate() {
        inversions += seq[i + 1..].iter().filter(|&&y| y < x).count() as u64;
    }
    Ok(inversions)
}

/// `Z = Π_{j=1..m} (1 + φ + … + φ^{j−1})`.
pub fn normalization(m: usize, phi: f64) -> f64 {
    let mut z = 1.0;
    let mut partial = 0.0;
    let mut power = 1.0;
    for _ in 0..m {
        partial += power;
        power *= phi;
        z *= partial;
    }
    z
}

#[derive(Debug, Clone, PartialEq)]
pub struct MallowsModel {
    sigma: Ranking,
    phi: f64,
}

impl MallowsModel {
    pub fn new(sigma: Ranking, phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= 1.0) {
            return Err(domain(format!("φ = {phi} outside (0, 1]")));
        }
        Ok(MallowsModel { sigma, phi })
    }

    /// Reference ranking `0 ≻ 1 ≻ … ≻ m−1`.
    pub fn with_identity(m: usize, phi: f64) -> Result<Self> {
        if m == 0 {
            return Err(domain("m must be positive"));
        }
        Self::new(Ranking::identity(m), phi)
    }

    pub fn m(&self) -> usize {
        self.sigma.m()
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn sigma(&self) -> &Ranking {
        &self.sigma
    }
}

pub fn pmf(model: &MallowsModel, r: &Ranking) -> Result<f64> {
    let d = kendall_tau(r, &model.sigma)?;
    Ok(model.phi.powi(d as i32) / normalization(model.m(), model.phi))
}

/// Exact draw by repeated insertion.
///
/// The `j`-th candidate of `σ` is inserted among the `j−1` already placed.
/// Putting it `i` slots above the bottom creates `i` inversions, so slot `i`
/// is chosen with probability `φ^i / (1 + φ + … + φ^{j−1})`.
pub fn sample<R: Rng + ?Sized>(model: &MallowsModel, rng: &mut R) -> Ranking {
    let m = model.m();
    let phi = model.phi;
    let mut order: Vec<CandidateId> = Vec::with_capacity(m);
    for (j, &c) in model.sigma.as_slice().iter().enumerate() {
        // j candidates already placed, j+1 slots.
        let above_bottom = if phi == 1.0 {
            rng.gen_range(0..=j)
        } else {
            let total: f64 = (1.0 - phi.powi(j as i32 + 1)) / (1.0 - phi);
            let mut u = rng.gen::<f64>() * total;
            let mut weight = 1.0;
            let mut slot = 0;
            while slot < j {
                if u < weight {
                    break;
                }
                u -= weight;
                weight *= phi;
                slot += 1;
            }
            slot
        };
        order.insert(j - above_bottom, c);
    }
    Ranking::from_vec_unchecked(order)
}

/// `n` independent draws aggregated into a weighted profile.
pub fn sample_profile<R: Rng + ?Sized>(model: &MallowsModel, n: u64, rng: &mut R) -> Result<Profile> {
    if n == 0 {
        return Err(domain("n must be at least 1"));
    }
    Profile::from_rankings(model.m(), (0..n).map(|_| sample(model, rng)))
}
