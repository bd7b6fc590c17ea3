//! Seeded random-subset machinery.
//!
//! The estimator draws millions of sparse Bernoulli subsets. Instead of
//! flipping one coin per vertex, we draw the subset size from the matching
//! binomial and then sample that many distinct indices, which is
//! distributionally identical. The same decomposition lets repeat-sampling
//! loops skip iterations whose subset came up empty: the number of non-empty
//! iterations is itself binomial, and each non-empty iteration draws from the
//! size distribution conditioned on being at least one.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson};
use thiserror::Error;

use crate::graph::{Vertex, VertexSet};

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
}

/// Draws a Binomial(n, p) count. `p` must already be validated.
pub(crate) fn binomial_count(rng: &mut ChaCha8Rng, n: u64, p: f64) -> u64 {
    if n == 0 || p <= 0.0 {
        return 0;
    }
    if p >= 1.0 {
        return n;
    }
    Binomial::new(n, p).expect("validated binomial").sample(rng)
}

/// Binomial count for trial counts that may exceed `u64`; falls back to a
/// Poisson approximation when `trials` cannot be represented exactly
/// (only reachable with paper-scale iteration counts, where `p` is minute).
pub(crate) fn binomial_count_f64(rng: &mut ChaCha8Rng, trials: f64, p: f64) -> u64 {
    if trials <= 0.0 || p <= 0.0 {
        return 0;
    }
    if trials < 9.0e18 {
        binomial_count(rng, trials as u64, p.min(1.0))
    } else {
        let mean = trials * p;
        Poisson::new(mean).map_or(0, |d| d.sample(rng) as u64)
    }
}

/// Binomial(trials, p) conditioned on >= 1, via an inverse CDF walk on the
/// pmf recurrence. `trials` stays f64: the walk only needs ratios.
pub(crate) fn truncated_binomial_count_f64(rng: &mut ChaCha8Rng, trials: f64, p: f64) -> u64 {
    debug_assert!(trials >= 1.0 && p > 0.0 && p < 1.0);
    let log1m = (-p).ln_1p();
    let total = -(trials * log1m).exp_m1();
    let target = rng.random::<f64>() * total;
    let mut pmf = trials * p * ((trials - 1.0) * log1m).exp();
    let odds = p / (1.0 - p);
    let mut cum = pmf;
    let mut k = 1u64;
    while cum < target && (k as f64) < trials {
        pmf *= (trials - k as f64) / (k as f64 + 1.0) * odds;
        cum += pmf;
        k += 1;
        if pmf <= 0.0 {
            break;
        }
    }
    k
}

/// Samples `k` distinct indices from `0..len`, ascending.
pub(crate) fn distinct_indices(rng: &mut ChaCha8Rng, len: usize, k: usize) -> Vec<usize> {
    debug_assert!(k <= len);
    let mut idx = rand::seq::index::sample(rng, len, k).into_vec();
    idx.sort_unstable();
    idx
}

/// Includes each element of `universe` independently with probability `p`.
/// Deterministic given the rng state; the universe is processed in its own
/// (ascending) order.
pub fn sample_bernoulli_subset(
    universe: &VertexSet,
    p: f64,
    rng: &mut ChaCha8Rng,
) -> Result<VertexSet, SampleError> {
    if !(0.0..=1.0).contains(&p) || p.is_nan() {
        return Err(SampleError::BadProbability(p));
    }
    if p == 0.0 || universe.is_empty() {
        return Ok(VertexSet::default());
    }
    if p == 1.0 {
        return Ok(VertexSet::from_sorted(universe.as_slice().to_vec()));
    }
    let k = binomial_count(rng, universe.len() as u64, p) as usize;
    let members = distinct_indices(rng, universe.len(), k)
        .into_iter()
        .map(|i| universe.as_slice()[i])
        .collect();
    Ok(VertexSet::from_sorted(members))
}

/// Per-iteration Bernoulli subset of `0..n` minus one excluded vertex, with
/// empty draws elided. An empty subset can never change the counters of the
/// sampling loops that use this, so only non-empty iterations are material.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SparseTrialSampler {
    /// Universe size after exclusion.
    len: u64,
    p: f64,
    /// Excluded vertex, or `u32::MAX` when none.
    excluded: Vertex,
    log1m_p: f64,
}

impl SparseTrialSampler {
    pub fn new(n: usize, excluded: Option<Vertex>, p: f64) -> Self {
        let len = n as u64 - u64::from(excluded.is_some());
        let p = p.clamp(0.0, 1.0);
        SparseTrialSampler {
            len,
            p,
            excluded: excluded.unwrap_or(u32::MAX),
            log1m_p: (-p).ln_1p(),
        }
    }

    /// P(subset non-empty) = 1 - (1-p)^len.
    pub fn p_nonempty(&self) -> f64 {
        if self.p <= 0.0 || self.len == 0 {
            0.0
        } else if self.p >= 1.0 {
            1.0
        } else {
            -(self.len as f64 * self.log1m_p).exp_m1()
        }
    }

    /// Number of iterations, out of `trials`, whose subset is non-empty.
    pub fn nonempty_trials(&self, trials: f64, rng: &mut ChaCha8Rng) -> u64 {
        binomial_count_f64(rng, trials, self.p_nonempty())
    }

    /// Draws the subset conditioned on being non-empty, ascending, into `out`.
    pub fn sample_nonempty(&self, rng: &mut ChaCha8Rng, out: &mut Vec<Vertex>) {
        out.clear();
        let k = self.truncated_size(rng);
        for i in distinct_indices(rng, self.len as usize, k) {
            let mut v = i as Vertex;
            if v >= self.excluded {
                v += 1;
            }
            out.push(v);
        }
    }

    /// Size drawn from Binomial(len, p) conditioned on >= 1, via an inverse
    /// CDF walk on the pmf recurrence.
    fn truncated_size(&self, rng: &mut ChaCha8Rng) -> usize {
        let n = self.len as f64;
        let total = self.p_nonempty();
        debug_assert!(total > 0.0);
        let target = rng.random::<f64>() * total;
        // pmf(1) = n * p * (1-p)^(n-1)
        let mut pmf = n * self.p * ((n - 1.0) * self.log1m_p).exp();
        let odds = self.p / (1.0 - self.p);
        let mut cum = pmf;
        let mut k = 1usize;
        while cum < target && (k as u64) < self.len {
            pmf *= (n - k as f64) / (k as f64 + 1.0) * odds;
            cum += pmf;
            k += 1;
            if pmf <= 0.0 {
                break;
            }
        }
        k
    }
}
