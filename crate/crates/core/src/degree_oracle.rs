//! Degree-bucket classification through independent-set queries alone.
//!
//! Three sampling checks (`check_high_degree`, `check_low_degree`,
//! `check_hl_degree`) distinguish degree thresholds by counting how often a
//! sparse random witness set is independent yet stops being independent once
//! the probed vertex joins it. [`MemoizedDegreeOracle`] composes them into
//! consistent bucket-membership answers: every logical check gets its own
//! deterministic randomness derived from (seed, call site), so answers are a
//! fixed function of the seed regardless of evaluation order, and repeated
//! queries are free.

use std::collections::{HashMap, HashSet};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Vertex, VertexSet};
use crate::oracle::{query_is, IsOracle};
use crate::params::Params;
use crate::sampling::SparseTrialSampler;
use crate::search::find_incident_edge;

/// Answer of a threshold check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    High,
    Low,
}

/// Coarse degree class relative to the split at about sqrt(edge bound).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HighLow {
    High,
    Low,
}

/// Distinguishes deg(u) >= (1+eps)d from deg(u) <= d, for d at or above the
/// high/low split. Counts iterations where the witness set is independent
/// but stops being independent with `u` added; empty witness draws cannot
/// affect the counter and are elided by the sampler.
pub fn check_high_degree<O: IsOracle + ?Sized>(
    oracle: &mut O,
    u: Vertex,
    d: f64,
    params: &Params,
    rng: &mut ChaCha8Rng,
) -> Answer {
    debug_assert!(d >= params.split_degree() * (1.0 - 1e-9));
    let n = params.n;
    let log = params.log2n();
    let iters = params.check_high_iters();
    let incl = (params.eps / (d * log)).min(1.0);
    let sampler = SparseTrialSampler::new(n, Some(u), incl);
    let live = sampler.nonempty_trials(iters, rng);

    let mut witness: Vec<Vertex> = Vec::new();
    let mut hits = 0u64;
    for _ in 0..live {
        sampler.sample_nonempty(rng, &mut witness);
        if !query_is(oracle, &witness) {
            continue;
        }
        let pos = witness.partition_point(|&v| v < u);
        witness.insert(pos, u);
        if !oracle.is_independent(&witness) {
            hits += 1;
        }
    }
    let threshold = (1.0 + params.eps / 4.0) * iters * params.eps / log;
    if hits as f64 > threshold {
        Answer::High
    } else {
        Answer::Low
    }
}

/// Distinguishes deg(u, L) >= (1+eps)d from deg(u, L) <= d for d at or below
/// the split, where L is the low side of the memoized high/low
/// classification. Each hit extracts the incident edge deterministically and
/// counts it only when the far endpoint classifies low.
pub fn check_low_degree<O: IsOracle + ?Sized>(
    oracle: &mut O,
    deg: &mut MemoizedDegreeOracle,
    u: Vertex,
    d: f64,
    rng: &mut ChaCha8Rng,
) -> Answer {
    let (n, eps, log, split) = deg.scalars();
    debug_assert!(d > 0.0 && d <= split * (1.0 + 1e-9));
    let iters = deg.params().check_low_iters(d);
    let incl = (eps / (split * log)).min(1.0);
    let threshold = (1.0 + eps / 4.0) * eps * d * iters / (split * log);
    let hits = count_low_endpoint_hits(oracle, deg, u, incl, iters, n, rng);
    if hits as f64 > threshold {
        Answer::High
    } else {
        Answer::Low
    }
}

/// For a vertex promised to have degree near alpha^k, distinguishes
/// deg(u, L) >= alpha^(k-l+1) from deg(u, L) <= alpha^(k-l).
pub fn check_hl_degree<O: IsOracle + ?Sized>(
    oracle: &mut O,
    deg: &mut MemoizedDegreeOracle,
    u: Vertex,
    k: u32,
    l: u32,
    rng: &mut ChaCha8Rng,
) -> Answer {
    let (n, eps, log, _) = deg.scalars();
    debug_assert!(l >= 1 && l <= deg.params().frac_exp);
    let iters = deg.params().check_hl_iters();
    let incl = (eps / (deg.params().alpha_pow(k as i64) * log)).min(1.0);
    let threshold =
        (1.0 + eps / 4.0) * eps * iters / (deg.params().alpha_pow(l as i64) * log);
    let hits = count_low_endpoint_hits(oracle, deg, u, incl, iters, n, rng);
    if hits as f64 > threshold {
        Answer::High
    } else {
        Answer::Low
    }
}

/// Shared sampling loop: counts iterations whose witness set is independent,
/// stops being independent with `u`, and whose extracted edge endpoint
/// classifies low. An edge-extraction contract failure skips the iteration
/// (counts as a non-hit).
fn count_low_endpoint_hits<O: IsOracle + ?Sized>(
    oracle: &mut O,
    deg: &mut MemoizedDegreeOracle,
    u: Vertex,
    incl: f64,
    iters: f64,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> u64 {
    let sampler = SparseTrialSampler::new(n, Some(u), incl);
    let live = sampler.nonempty_trials(iters, rng);
    let mut witness: Vec<Vertex> = Vec::new();
    let mut with_u: Vec<Vertex> = Vec::new();
    let mut hits = 0u64;
    for _ in 0..live {
        sampler.sample_nonempty(rng, &mut witness);
        if !query_is(oracle, &witness) {
            continue;
        }
        with_u.clear();
        with_u.extend_from_slice(&witness);
        let pos = with_u.partition_point(|&v| v < u);
        with_u.insert(pos, u);
        if oracle.is_independent(&with_u) {
            continue;
        }
        let t_set = VertexSet::from_sorted(witness.clone());
        if let Ok((_, v)) = find_incident_edge(oracle, u, &t_set) {
            if deg.high_low(oracle, v) == HighLow::Low {
                hits += 1;
            }
        }
    }
    hits
}

/// Abstract-cost and freshness counters for one oracle instance.
#[derive(Clone, Copy, Debug, Default)]
pub struct DegOracleStats {
    /// Unit cost per fresh high-bucket membership answer, alpha^(split - i)
    /// per fresh low-bucket membership answer at index i.
    pub abstract_cost: f64,
    pub fresh_high_low: u64,
    pub fresh_low_checks: u64,
    pub fresh_high_checks: u64,
    pub fresh_frac_checks: u64,
}

const SITE_HIGH_LOW: u64 = 1;
const SITE_LOW_CHECK: u64 = 2;
const SITE_HIGH_CHECK: u64 = 3;
const SITE_FRAC_CHECK: u64 = 4;

/// Consistent (memoized) degree-bucket answers for one estimator run.
///
/// Conceptually each logical check owns a pre-drawn block of a global random
/// string; we realize the same distribution lazily by deriving a dedicated
/// rng stream per (site, vertex, index) key and caching the first answer.
/// One instance serves one run; fresh runs get fresh instances.
pub struct MemoizedDegreeOracle {
    params: Params,
    seed: u64,
    high_low: HashMap<Vertex, HighLow>,
    low_checks: HashMap<(Vertex, i32), Answer>,
    high_checks: HashMap<(Vertex, u32), Answer>,
    frac_checks: HashMap<(Vertex, u32, u32), Answer>,
    low_seen: HashSet<(Vertex, u32)>,
    high_seen: HashSet<(Vertex, u32, u32)>,
    pub stats: DegOracleStats,
}

impl MemoizedDegreeOracle {
    pub fn new(params: Params, seed: u64) -> Self {
        MemoizedDegreeOracle {
            params,
            seed,
            high_low: HashMap::new(),
            low_checks: HashMap::new(),
            high_checks: HashMap::new(),
            frac_checks: HashMap::new(),
            low_seen: HashSet::new(),
            high_seen: HashSet::new(),
            stats: DegOracleStats::default(),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    fn scalars(&self) -> (usize, f64, f64, f64) {
        (
            self.params.n,
            self.params.eps,
            self.params.log2n(),
            self.params.split_degree(),
        )
    }

    fn keyed_rng(&self, site: u64, u: Vertex, a: u32, b: u32) -> ChaCha8Rng {
        let stream = (site << 56)
            | ((u as u64) << 24)
            | (((a as u64) & 0xfff) << 12)
            | ((b as u64) & 0xfff);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// Memoized coarse classification of `u` at the split degree.
    pub fn high_low<O: IsOracle + ?Sized>(&mut self, oracle: &mut O, u: Vertex) -> HighLow {
        if let Some(&hl) = self.high_low.get(&u) {
            return hl;
        }
        let mut rng = self.keyed_rng(SITE_HIGH_LOW, u, 0, 0);
        let ans = check_high_degree(oracle, u, self.params.split_degree(), &self.params, &mut rng);
        let hl = match ans {
            Answer::High => HighLow::High,
            Answer::Low => HighLow::Low,
        };
        self.high_low.insert(u, hl);
        self.stats.fresh_high_low += 1;
        hl
    }

    /// Memoized low-degree check answer for threshold alpha^j,
    /// j in {-1} ∪ [1, split]; j = split is low by definition.
    fn low_check<O: IsOracle + ?Sized>(&mut self, oracle: &mut O, u: Vertex, j: i32) -> Answer {
        debug_assert!(j == -1 || (1..=self.params.split_exp as i32).contains(&j));
        if j == self.params.split_exp as i32 {
            return Answer::Low;
        }
        if let Some(&a) = self.low_checks.get(&(u, j)) {
            return a;
        }
        let mut rng = self.keyed_rng(SITE_LOW_CHECK, u, (j + 1) as u32, 0);
        let d = self.params.alpha_pow(j as i64);
        let ans = check_low_degree(oracle, self, u, d, &mut rng);
        self.low_checks.insert((u, j), ans);
        self.stats.fresh_low_checks += 1;
        ans
    }

    /// Memoized high-degree check answer for threshold alpha^k,
    /// k in [split, top]; k = split is high and k = top low by definition.
    fn high_check<O: IsOracle + ?Sized>(&mut self, oracle: &mut O, u: Vertex, k: u32) -> Answer {
        let (split, top) = (self.params.split_exp, self.params.top_exp);
        debug_assert!((split..=top).contains(&k));
        if k == split {
            return Answer::High;
        }
        if k == top {
            return Answer::Low;
        }
        if let Some(&a) = self.high_checks.get(&(u, k)) {
            return a;
        }
        let mut rng = self.keyed_rng(SITE_HIGH_CHECK, u, k, 0);
        let d = self.params.alpha_pow(k as i64);
        let ans = check_high_degree(oracle, u, d, &self.params, &mut rng);
        self.high_checks.insert((u, k), ans);
        self.stats.fresh_high_checks += 1;
        ans
    }

    /// Memoized fraction check answer; l = 0 is low by definition.
    fn frac_check<O: IsOracle + ?Sized>(
        &mut self,
        oracle: &mut O,
        u: Vertex,
        k: u32,
        l: u32,
    ) -> Answer {
        debug_assert!(l <= self.params.frac_exp);
        if l == 0 {
            return Answer::Low;
        }
        if let Some(&a) = self.frac_checks.get(&(u, k, l)) {
            return a;
        }
        let mut rng = self.keyed_rng(SITE_FRAC_CHECK, u, k, l);
        let ans = check_hl_degree(oracle, self, u, k, l, &mut rng);
        self.frac_checks.insert((u, k, l), ans);
        self.stats.fresh_frac_checks += 1;
        ans
    }

    /// Membership of `u` in low bucket `i` (vertices whose degree into the
    /// low side sits near alpha^i; bucket 0 holds deg(u, L) = 0).
    ///
    /// Membership holds iff the check answers flip from high to low exactly
    /// at index i: bucket 0 needs the threshold-below-one check low, bucket 1
    /// pairs that check with the alpha^1 check, and bucket i >= 2 pairs the
    /// alpha^(i-1) and alpha^i checks.
    pub fn in_low_bucket<O: IsOracle + ?Sized>(
        &mut self,
        oracle: &mut O,
        u: Vertex,
        i: u32,
    ) -> bool {
        debug_assert!(i <= self.params.split_exp);
        if self.low_seen.insert((u, i)) {
            self.stats.abstract_cost +=
                self.params.alpha_pow((self.params.split_exp - i) as i64);
        }
        if self.high_low(oracle, u) == HighLow::High {
            return false;
        }
        match i {
            0 => self.low_check(oracle, u, -1) == Answer::Low,
            1 => {
                self.low_check(oracle, u, -1) == Answer::High
                    && self.low_check(oracle, u, 1) == Answer::Low
            }
            _ => {
                self.low_check(oracle, u, i as i32 - 1) == Answer::High
                    && self.low_check(oracle, u, i as i32) == Answer::Low
            }
        }
    }

    /// Membership of `u` in high bucket (k, l): degree near alpha^k with
    /// degree into the low side near alpha^(k-l); level frac_exp collects
    /// everything with low-side degree below the deepest threshold.
    pub fn in_high_bucket<O: IsOracle + ?Sized>(
        &mut self,
        oracle: &mut O,
        u: Vertex,
        k: u32,
        l: u32,
    ) -> bool {
        debug_assert!((self.params.split_exp + 1..=self.params.top_exp).contains(&k));
        debug_assert!(l <= self.params.frac_exp);
        if self.high_seen.insert((u, k, l)) {
            self.stats.abstract_cost += 1.0;
        }
        if self.high_low(oracle, u) == HighLow::Low {
            return false;
        }
        if self.high_check(oracle, u, k - 1) != Answer::High
            || self.high_check(oracle, u, k) != Answer::Low
        {
            return false;
        }
        if l == self.params.frac_exp {
            self.frac_check(oracle, u, k, l) == Answer::Low
        } else {
            self.frac_check(oracle, u, k, l) == Answer::Low
                && self.frac_check(oracle, u, k, l + 1) == Answer::High
        }
    }

    /// Every bucket label assigned to `u`, scanned in index order; used by
    /// partition checks.
    pub fn assigned_buckets<O: IsOracle + ?Sized>(
        &mut self,
        oracle: &mut O,
        u: Vertex,
    ) -> Vec<BucketLabel> {
        let mut out = Vec::new();
        for i in self.params.low_indices() {
            if self.in_low_bucket(oracle, u, i) {
                out.push(BucketLabel::Low(i));
            }
        }
        for k in self.params.high_indices() {
            for l in self.params.frac_indices() {
                if self.in_high_bucket(oracle, u, k, l) {
                    out.push(BucketLabel::High { deg_exp: k, frac_idx: l });
                }
            }
        }
        out
    }
}

/// A degree-partition cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BucketLabel {
    Low(u32),
    High { deg_exp: u32, frac_idx: u32 },
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete_bipartite, gen_star, gen_union};
    use crate::graph::Graph;
    use crate::oracle::InstrumentedOracle;
    use crate::params::Tunables;

    fn params(eps: f64, n: usize, bound: u64) -> Params {
        Params::new(eps, n, bound, Tunables::default()).unwrap()
    }

    #[test]
    fn isolated_vertex_is_low_deterministically() {
        let g = Graph::empty(64);
        let p = params(0.5, 64, 64);
        for seed in 0..20 {
            let mut o = InstrumentedOracle::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(
                check_high_degree(&mut o, 0, p.split_degree(), &p, &mut rng),
                Answer::Low
            );
        }
    }

    #[test]
    fn star_center_high_leaf_low() {
        // Center degree 200 vs threshold d = 100 at eps = 0.5; the leaf
        // clears the other side. 20 seeds apiece in the unit test.
        let star = gen_star(201).unwrap();
        let g = gen_union(&[star, Graph::empty(55)]).unwrap();
        let p = params(0.5, 256, 5000); // split near 71, below d = 100
        assert!(p.split_degree() <= 100.0);
        let mut high = 0;
        let mut low = 0;
        for seed in 0..20 {
            let mut o = InstrumentedOracle::new(&g);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            if check_high_degree(&mut o, 0, 100.0, &p, &mut rng) == Answer::High {
                high += 1;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 1000);
            if check_high_degree(&mut o, 1, 100.0, &p, &mut rng) == Answer::Low {
                low += 1;
            }
        }
        assert!(high >= 19, "center high in {high}/20");
        assert!(low >= 19, "leaf low in {low}/20");
    }

    #[test]
    fn memoization_answers_once() {
        let g = gen_star(40).unwrap();
        let p = params(0.5, 40, 100);
        let mut o = InstrumentedOracle::new(&g);
        let mut deg = MemoizedDegreeOracle::new(p, 7);
        let first = deg.high_low(&mut o, 0);
        let queries_after_first = o.query_count();
        for _ in 0..5 {
            assert_eq!(deg.high_low(&mut o, 0), first);
        }
        assert_eq!(o.query_count(), queries_after_first);
        assert_eq!(deg.stats.fresh_high_low, 1);

        let m1 = deg.in_low_bucket(&mut o, 3, 0);
        let q1 = o.query_count();
        let cost1 = deg.stats.abstract_cost;
        assert_eq!(deg.in_low_bucket(&mut o, 3, 0), m1);
        assert_eq!(o.query_count(), q1);
        assert_eq!(deg.stats.abstract_cost, cost1);
    }

    #[test]
    fn answers_are_evaluation_order_independent() {
        // Same seed, different query order: identical classification.
        let g = gen_union(&[gen_star(30).unwrap(), gen_complete_bipartite(4, 20).unwrap()])
            .unwrap();
        let p = params(0.5, 54, 200);
        let mut o = InstrumentedOracle::new(&g);
        let mut a = MemoizedDegreeOracle::new(p.clone(), 99);
        let forward: Vec<_> = (0..54).map(|u| a.assigned_buckets(&mut o, u)).collect();
        let mut b = MemoizedDegreeOracle::new(p, 99);
        let backward: Vec<_> = (0..54)
            .rev()
            .map(|u| b.assigned_buckets(&mut o, u))
            .collect();
        for (u, buckets) in backward.into_iter().enumerate() {
            assert_eq!(buckets, forward[53 - u]);
        }
    }

    #[test]
    fn isolated_vertex_bucket_zero_only() {
        let g = Graph::empty(32);
        let p = params(0.5, 32, 32);
        let mut o = InstrumentedOracle::new(&g);
        let mut deg = MemoizedDegreeOracle::new(p, 3);
        assert!(deg.in_low_bucket(&mut o, 5, 0));
        for i in 1..=deg.params().split_exp {
            assert!(!deg.in_low_bucket(&mut o, 5, i));
        }
        for k in deg.params().high_indices() {
            for l in deg.params().frac_indices() {
                assert!(!deg.in_high_bucket(&mut o, 5, k, l));
            }
        }
    }

    #[test]
    fn every_vertex_gets_exactly_one_bucket() {
        // Star forest plus a bipartite block, several seeds.
        let g = gen_union(&[
            gen_star(20).unwrap(),
            gen_star(5).unwrap(),
            Graph::empty(7),
            gen_complete_bipartite(3, 15).unwrap(),
        ])
        .unwrap();
        let n = g.vertex_count();
        let p = params(0.5, n, 2 * g.edge_count());
        for seed in 0..10 {
            let mut o = InstrumentedOracle::new(&g);
            let mut deg = MemoizedDegreeOracle::new(p.clone(), seed);
            for u in 0..n as Vertex {
                let buckets = deg.assigned_buckets(&mut o, u);
                assert_eq!(buckets.len(), 1, "seed {seed} vertex {u}: {buckets:?}");
            }
        }
    }

    #[test]
    fn low_degree_check_separates_low_side_degree() {
        // Center of a 40-leaf star, leaves otherwise isolated: deg(u, L) = 40
        // clears (1+eps)d = 30. A vertex with only heavy neighbors reads low.
        let star = gen_star(41).unwrap();
        let heavy = gen_complete_bipartite(40, 201).unwrap(); // left side degree 201
        let g = gen_union(&[star, heavy]).unwrap();
        let n = g.vertex_count();
        let m = g.edge_count();
        let p = Params::new(0.5, n, 2 * m, Tunables::default()).unwrap();
        // Split sits near sqrt(2m); star leaves and the 201-vertex side are
        // low, the 40-vertex side (degree 201) is high.
        assert!(p.split_degree() < 201.0);
        assert!(p.split_degree() > 41.0);

        let mut high_hits = 0;
        let mut low_hits = 0;
        for seed in 0..10u64 {
            let mut o = InstrumentedOracle::new(&g);
            let mut deg = MemoizedDegreeOracle::new(p.clone(), seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
            if check_low_degree(&mut o, &mut deg, 0, 20.0, &mut rng) == Answer::High {
                high_hits += 1;
            }
            // Right-side vertex of the bipartite block: degree 40, all
            // neighbors on the degree-201 side.
            let right = 41 + 40;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xdef);
            if check_low_degree(&mut o, &mut deg, right, 20.0, &mut rng) == Answer::Low {
                low_hits += 1;
            }
        }
        assert!(high_hits >= 9, "{high_hits}/10");
        assert!(low_hits >= 9, "{low_hits}/10");
    }
}
