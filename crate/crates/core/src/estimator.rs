//! Bucket-size estimation and the edge-count driver.
//!
//! `estimate_with_advice` refines an upper bound on the edge count into an
//! estimate by sizing every degree bucket: low buckets by uniform vertex
//! sampling against the memoized classifier, high buckets by a geometric
//! scan of threshold events that detect whether a bucket holds at least
//! eta * n vertices. `estimate_edges` bootstraps the advice bound itself by
//! geometric halving from the maximum possible edge count.

use std::time::Instant;

use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degree_oracle::MemoizedDegreeOracle;
use crate::graph::{Vertex, VertexSet};
use crate::oracle::{query_is, IsOracle};
use crate::params::{Params, ParamsError, Tunables};
use crate::sampling::{binomial_count_f64, SparseTrialSampler};
use crate::search::{random_binary_search, SearchResult};

#[derive(Debug, Error)]
pub enum EstimatorError {
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error("eta = {eta} outside [{floor}, 1] for degree exponent {k}")]
    EtaOutOfRange { eta: f64, floor: f64, k: u32 },
}

/// Outcome of a bucket-volume event test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FewMany {
    Few,
    Many,
}

/// Low-bucket size estimates.
///
/// For each index the sampler draws the scheduled number of uniform
/// vertices, classifies them, and converts the hit fraction into a count
/// estimate biased down by half the tolerated additive error, clamped at 0.
/// Indices whose tolerated error already exceeds n are reported as 0
/// without sampling.
pub fn estimate_low_buckets<O: IsOracle + ?Sized>(
    oracle: &mut O,
    deg: &mut MemoizedDegreeOracle,
    rng: &mut ChaCha8Rng,
) -> Vec<f64> {
    let params = deg.params().clone();
    let n = params.n;
    let mut out = Vec::with_capacity(params.split_exp as usize + 1);
    for i in params.low_indices() {
        if params.low_bucket_trivial(i) {
            out.push(0.0);
            continue;
        }
        let samples = params.low_bucket_samples(i);
        let mut hits = 0u64;
        for _ in 0..samples {
            let u = rng.random_range(0..n as Vertex);
            if deg.in_low_bucket(oracle, u, i) {
                hits += 1;
            }
        }
        let frac = hits as f64 / samples as f64;
        let correction = params.low_bucket_error(i) / (2.0 * n as f64);
        out.push(((frac - correction) * n as f64).max(0.0));
    }
    out
}

/// Tests whether high bucket (k, l) holds at least about eta * n vertices.
///
/// Each live iteration draws a candidate set S and a witness set T; when T
/// is independent but S ∪ T is not, the halving search extracts an edge,
/// both endpoints are tested for bucket membership, and the counter
/// increments if a member endpoint in S still conflicts with T alone.
/// Iterations where S or T came up empty cannot move the counter and are
/// elided without queries.
pub fn high_degree_event<O: IsOracle + ?Sized>(
    oracle: &mut O,
    deg: &mut MemoizedDegreeOracle,
    k: u32,
    l: u32,
    eta: f64,
    rng: &mut ChaCha8Rng,
) -> Result<FewMany, EstimatorError> {
    let params = deg.params().clone();
    let floor = params.eta_floor(k);
    if !(floor <= eta && eta <= 1.0) {
        return Err(EstimatorError::EtaOutOfRange { eta, floor, k });
    }
    let sched = params.hde_schedule(k, eta);
    let cand = SparseTrialSampler::new(params.n, None, sched.p_pick);
    let wit = SparseTrialSampler::new(params.n, None, sched.q_incl);
    let p_live = cand.p_nonempty() * wit.p_nonempty();
    let live = binomial_count_f64(rng, sched.iters, p_live);
    let hits = run_live_event_iterations(oracle, deg, k, l, &cand, &wit, live, rng);
    Ok(if hits as f64 >= sched.threshold {
        FewMany::Many
    } else {
        FewMany::Few
    })
}

/// Runs `live` event iterations whose candidate and witness sets are both
/// non-empty, returning the hit count.
fn run_live_event_iterations<O: IsOracle + ?Sized>(
    oracle: &mut O,
    deg: &mut MemoizedDegreeOracle,
    k: u32,
    l: u32,
    cand: &SparseTrialSampler,
    wit: &SparseTrialSampler,
    live: u64,
    rng: &mut ChaCha8Rng,
) -> u64 {
    let params = deg.params().clone();
    let delta = params.eps.powi(7) / (params.n as f64 * params.n as f64);
    let mut s_buf: Vec<Vertex> = Vec::new();
    let mut t_buf: Vec<Vertex> = Vec::new();
    let mut union: Vec<Vertex> = Vec::new();
    let mut with_u: Vec<Vertex> = Vec::new();
    let mut hits = 0u64;

    for _ in 0..live {
        cand.sample_nonempty(rng, &mut s_buf);
        wit.sample_nonempty(rng, &mut t_buf);
        if !query_is(oracle, &t_buf) {
            continue;
        }
        merge_sorted(&s_buf, &t_buf, &mut union);
        if union.len() < 2 || query_is(oracle, &union) {
            continue;
        }
        let found = random_binary_search(
            oracle,
            &VertexSet::from_sorted(union.clone()),
            delta,
            &params,
            rng,
        )
        .expect("union has at least 2 vertices");
        let SearchResult::Edge(a, b) = found else {
            continue;
        };
        let member_a = deg.in_high_bucket(oracle, a, k, l);
        let member_b = deg.in_high_bucket(oracle, b, k, l);
        for (u_star, member) in [(a, member_a), (b, member_b)] {
            if !member || s_buf.binary_search(&u_star).is_err() {
                continue;
            }
            if t_buf.binary_search(&u_star).is_ok() {
                // {u*} ∪ T = T, already known independent.
                continue;
            }
            with_u.clear();
            with_u.extend_from_slice(&t_buf);
            let pos = with_u.partition_point(|&v| v < u_star);
            with_u.insert(pos, u_star);
            if !oracle.is_independent(&with_u) {
                hits += 1;
                break;
            }
        }
    }
    hits
}

fn merge_sorted(a: &[Vertex], b: &[Vertex], out: &mut Vec<Vertex>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}

/// Result of one geometric bucket scan.
#[derive(Clone, Copy, Debug)]
pub struct BucketScan {
    pub estimate: f64,
    pub event_calls: u64,
}

/// Sizes high bucket (k, l) by scanning eta = 1, 1/alpha, 1/alpha^2, ...
/// down to the analytic floor, returning eta * n at the first "many".
///
/// An event whose candidate or witness set came up empty on every iteration
/// can only answer "few", so the scan samples the position of the next event
/// holding at least one live iteration directly from the joint distribution
/// and skips the all-empty events in between; the skipped events exchange no
/// queries with the oracle. This is the same per-event distribution the
/// one-shot [`high_degree_event`] realizes, evaluated lazily.
pub fn high_degree_bucket<O: IsOracle + ?Sized>(
    oracle: &mut O,
    deg: &mut MemoizedDegreeOracle,
    k: u32,
    l: u32,
    rng: &mut ChaCha8Rng,
) -> Result<BucketScan, EstimatorError> {
    let params = deg.params().clone();
    let floor = params.eta_floor(k);
    let n = params.n;

    // Per-step schedules. Within one scan only the candidate probability
    // varies (inversely with eta); iterations, witness probability and the
    // counter threshold are step-independent.
    let mut etas: Vec<f64> = Vec::new();
    let mut eta = 1.0f64;
    while eta >= floor {
        etas.push(eta);
        eta /= params.alpha;
    }
    let steps = etas.len();
    if steps == 0 {
        return Ok(BucketScan { estimate: 0.0, event_calls: 0 });
    }
    let base = params.hde_schedule(k, 1.0);
    let wit = SparseTrialSampler::new(n, None, base.q_incl);
    let p_wit = wit.p_nonempty();
    let cands: Vec<SparseTrialSampler> = etas
        .iter()
        .map(|&e| SparseTrialSampler::new(n, None, (base.p_pick / e).min(1.0)))
        .collect();
    // ln P(no live iteration at step j), and suffix sums over j..steps.
    let ln_zero: Vec<f64> = cands
        .iter()
        .map(|c| {
            let p_live = c.p_nonempty() * p_wit;
            if p_live <= 0.0 {
                0.0
            } else {
                base.iters * (-p_live).ln_1p()
            }
        })
        .collect();
    let mut suffix = vec![0.0f64; steps + 1];
    for j in (0..steps).rev() {
        suffix[j] = suffix[j + 1] + ln_zero[j];
    }

    let mut calls = 0u64;
    let mut j = 0usize;
    while j < steps {
        // All remaining events silent: every one answers "few".
        if rng.random::<f64>() < suffix[j].exp() {
            calls += (steps - j) as u64;
            j = steps;
            break;
        }
        // Walk to the first live event, conditioned on one existing.
        let mut i = j;
        loop {
            debug_assert!(i < steps);
            let rest_live = -suffix[i + 1].exp_m1();
            let here_live = -suffix[i].exp_m1();
            let p_zero_here = if here_live <= 0.0 {
                0.0
            } else {
                (ln_zero[i].exp() * rest_live / here_live).min(1.0)
            };
            if i + 1 < steps && rng.random::<f64>() < p_zero_here {
                i += 1;
            } else {
                break;
            }
        }
        calls += (i - j + 1) as u64;
        let p_live = cands[i].p_nonempty() * p_wit;
        let live = if p_live <= 0.0 {
            0
        } else if p_live >= 1.0 {
            base.iters.min(9.0e18) as u64
        } else {
            truncated_binomial_count_f64(rng, base.iters, p_live)
        };
        let hits = run_live_event_iterations(oracle, deg, k, l, &cands[i], &wit, live, rng);
        if hits as f64 >= base.threshold {
            return Ok(BucketScan {
                estimate: etas[i] * n as f64,
                event_calls: calls,
            });
        }
        j = i + 1;
    }
    Ok(BucketScan { estimate: 0.0, event_calls: calls })
}

/// Maximum event calls a bucket scan can make for degree exponent k.
pub fn bucket_scan_length(params: &Params, k: u32) -> u64 {
    let floor = params.eta_floor(k);
    if floor > 1.0 {
        return 0;
    }
    ((1.0 / floor).ln() / params.alpha.ln()).floor() as u64 + 1
}

/// Everything measured about one advice-driven estimation call.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdviceOutcome {
    pub estimate: f64,
    pub is_queries: u64,
    pub abstract_cost: f64,
}

/// Estimates the edge count given an upper bound `edge_bound` on it.
///
/// Builds a fresh memoized degree oracle for this bound, sizes every bucket,
/// and combines them: low buckets weighted by alpha^i count low-side degree
/// mass, high buckets weighted by alpha^k count total high-vertex degree
/// mass, and high buckets weighted by alpha^(k-l) count edges from high
/// vertices into the low side (the deepest fraction level is truncated).
/// Half the sum estimates the edge count.
pub fn estimate_with_advice<O: IsOracle + ?Sized>(
    eps: f64,
    n: usize,
    edge_bound: u64,
    oracle: &mut O,
    tunables: Tunables,
    rng: &mut ChaCha8Rng,
) -> Result<AdviceOutcome, EstimatorError> {
    let params = Params::new(eps, n, edge_bound, tunables)?;
    let queries_before = oracle.query_count();
    let mut deg = MemoizedDegreeOracle::new(params.clone(), rng.next_u64());

    let low = estimate_low_buckets(oracle, &mut deg, rng);
    let mut sum_low = 0.0;
    for i in 1..=params.split_exp {
        sum_low += low[i as usize] * params.alpha_pow(i as i64);
    }

    let mut sum_high_total = 0.0;
    let mut sum_high_to_low = 0.0;
    for k in params.high_indices() {
        for l in params.frac_indices() {
            let scan = high_degree_bucket(oracle, &mut deg, k, l, rng)?;
            sum_high_total += scan.estimate * params.alpha_pow(k as i64);
            if l < params.frac_exp {
                sum_high_to_low += scan.estimate * params.alpha_pow(k as i64 - l as i64);
            }
        }
    }

    Ok(AdviceOutcome {
        estimate: (sum_low + sum_high_total + sum_high_to_low) / 2.0,
        is_queries: oracle.query_count() - queries_before,
        abstract_cost: deg.stats.abstract_cost,
    })
}

/// One advice-call record in a run report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AdviceRecord {
    pub edge_bound: u64,
    pub estimate: f64,
    pub accepted: bool,
    pub is_queries: u64,
    pub abstract_cost: f64,
}

/// Full record of one estimation run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub n: usize,
    pub eps: f64,
    pub lambda: f64,
    pub seed: u64,
    pub m_tilde: f64,
    pub advice_trace: Vec<AdviceRecord>,
    pub is_queries: u64,
    pub abstract_cost: f64,
    pub wall_ms: f64,
    pub fallback_won: bool,
}

/// A pluggable companion estimator run in alternation with the main
/// algorithm. Implementations attempt a complete run within `query_budget`
/// oracle queries and report the estimate if they finished.
pub trait FallbackEstimator {
    fn try_run(&mut self, oracle: &mut dyn IsOracle, query_budget: u64) -> Option<f64>;
}

/// Estimates the edge count with no advice: one emptiness probe, then
/// geometric halving of the advice bound from n-choose-2, accepting the
/// first estimate m-hat with 4 m-hat >= bound. Inner calls run at eps/11 so
/// the accepted bound's slack still lands the final estimate within eps.
///
/// When a fallback estimator is supplied it runs in alternation at
/// advice-call granularity: before each advice call it receives a query
/// budget equal to the queries the main side has spent, and its answer is
/// returned if it completes first.
pub fn estimate_edges<O: IsOracle>(
    eps: f64,
    oracle: &mut O,
    tunables: Tunables,
    rng: &mut ChaCha8Rng,
    mut fallback: Option<&mut dyn FallbackEstimator>,
) -> Result<RunReport, EstimatorError> {
    let advice = |eps: f64,
                  n: usize,
                  bound: u64,
                  oracle: &mut O,
                  rng: &mut ChaCha8Rng|
     -> Result<AdviceOutcome, EstimatorError> {
        estimate_with_advice(eps, n, bound, oracle, tunables, rng)
    };
    estimate_edges_with(eps, oracle, tunables, rng, advice, &mut fallback)
}

/// Driver with an injectable advice call (the acceptance logic tests stub
/// it out to validate the halving/acceptance schedule in isolation).
pub fn estimate_edges_with<O, F>(
    eps: f64,
    oracle: &mut O,
    tunables: Tunables,
    rng: &mut ChaCha8Rng,
    mut advice: F,
    fallback: &mut Option<&mut dyn FallbackEstimator>,
) -> Result<RunReport, EstimatorError>
where
    O: IsOracle,
    F: FnMut(f64, usize, u64, &mut O, &mut ChaCha8Rng) -> Result<AdviceOutcome, EstimatorError>,
{
    let n = oracle.vertex_count();
    Params::new(eps, n, 1, tunables)?; // validates eps and n
    let start = Instant::now();
    let queries_start = oracle.query_count();
    let mut report = RunReport {
        schema: 1,
        n,
        eps,
        lambda: tunables.lambda,
        seed: 0,
        m_tilde: 0.0,
        advice_trace: Vec::new(),
        is_queries: 0,
        abstract_cost: 0.0,
        wall_ms: 0.0,
        fallback_won: false,
    };

    // A single whole-set query settles emptiness.
    let full: Vec<Vertex> = (0..n as Vertex).collect();
    if oracle.is_independent(&full) {
        report.is_queries = oracle.query_count() - queries_start;
        report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
        return Ok(report);
    }

    let mut bound = (n as u64 * (n as u64 - 1)) / 2;
    while bound >= 1 {
        if let Some(fb) = fallback.as_deref_mut() {
            let spent = oracle.query_count() - queries_start;
            if let Some(est) = fb.try_run(oracle, spent) {
                report.m_tilde = est;
                report.fallback_won = true;
                break;
            }
        }
        let outcome = advice(eps / 11.0, n, bound, oracle, rng)?;
        let accepted = 4.0 * outcome.estimate >= bound as f64;
        report.abstract_cost += outcome.abstract_cost;
        report.advice_trace.push(AdviceRecord {
            edge_bound: bound,
            estimate: outcome.estimate,
            accepted,
            is_queries: outcome.is_queries,
            abstract_cost: outcome.abstract_cost,
        });
        if accepted {
            report.m_tilde = outcome.estimate;
            break;
        }
        bound /= 2;
    }
    report.is_queries = oracle.query_count() - queries_start;
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

// Analytic query budgets, computed from the same iteration-count formulas
// the algorithms run. Worst cases assume every iteration spends its maximum
// and every membership answer is fresh, so measured counts sit far below.

pub fn binary_search_query_budget(params: &Params, delta: f64) -> f64 {
    2.0 * params.binary_search_iters(delta) as f64 + 1.0
}

pub fn check_high_query_budget(params: &Params) -> f64 {
    2.0 * params.check_high_iters()
}

pub fn check_low_query_budget(params: &Params, d: f64) -> f64 {
    params.check_low_iters(d) * (2.0 + 2.0 * params.log2n().ceil() + check_high_query_budget(params))
}

pub fn check_hl_query_budget(params: &Params) -> f64 {
    params.check_hl_iters() * (2.0 + 2.0 * params.log2n().ceil() + check_high_query_budget(params))
}

pub fn low_membership_query_budget(params: &Params, i: u32) -> f64 {
    check_high_query_budget(params) + 2.0 * check_low_query_budget(params, params.alpha_pow(i as i64 - 1))
}

pub fn high_membership_query_budget(params: &Params) -> f64 {
    3.0 * check_high_query_budget(params) + 2.0 * check_hl_query_budget(params)
}

/// Worst-case oracle queries of one advice-driven call.
pub fn advice_query_budget(params: &Params) -> f64 {
    let mut total = 0.0;
    for i in params.low_indices() {
        if !params.low_bucket_trivial(i) {
            total +=
                params.low_bucket_samples(i) as f64 * low_membership_query_budget(params, i);
        }
    }
    let n2 = params.n as f64 * params.n as f64;
    let delta = params.eps.powi(7) / n2;
    let per_iter = 2.0
        + binary_search_query_budget(params, delta)
        + 2.0 * high_membership_query_budget(params)
        + 2.0;
    for k in params.high_indices() {
        let sched = params.hde_schedule(k, 1.0);
        let scans = bucket_scan_length(params, k) as f64;
        total += (params.frac_exp as f64 + 1.0) * scans * sched.iters * per_iter;
    }
    total
}

/// Worst-case oracle queries of a whole run at accuracy `eps`.
pub fn run_query_budget(eps: f64, n: usize, tunables: Tunables) -> f64 {
    let mut total = 1.0;
    let mut bound = (n as u64 * (n as u64 - 1)) / 2;
    while bound >= 1 {
        if let Ok(p) = Params::new(eps / 11.0, n, bound, tunables) {
            total += advice_query_budget(&p);
        }
        bound /= 2;
    }
    total
}

/// Worst-case abstract degree-oracle cost of one advice call, from the same
/// schedule formulas (scales as (n / sqrt(bound)) * polylog / eps powers).
pub fn advice_abstract_budget(params: &Params) -> f64 {
    let mut total = 0.0;
    for i in params.low_indices() {
        if !params.low_bucket_trivial(i) {
            total += params.low_bucket_samples(i) as f64
                * params.alpha_pow((params.split_exp - i) as i64);
        }
    }
    for k in params.high_indices() {
        let sched = params.hde_schedule(k, 1.0);
        let scans = bucket_scan_length(params, k) as f64;
        total += (params.frac_exp as f64 + 1.0) * scans * sched.iters * 2.0;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::gen_complete_bipartite;
    use crate::graph::Graph;
    use crate::oracle::InstrumentedOracle;
    use rand::SeedableRng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn empty_graph_single_probe() {
        let g = Graph::empty(64);
        let mut o = InstrumentedOracle::new(&g);
        let r = estimate_edges(0.25, &mut o, Tunables::desk(), &mut rng(5), None).unwrap();
        assert_eq!(r.m_tilde, 0.0);
        assert_eq!(r.is_queries, 1);
        assert!(r.advice_trace.is_empty());
    }

    #[test]
    fn halving_schedule_with_exact_stub() {
        // Advice stub answering the exact edge count whenever the bound is
        // valid: the driver must stop at the first bound with 4m >= bound
        // and return m. Also bounds the advice-call count by the halving
        // schedule length.
        let n = 64usize;
        let m = 100.0;
        let g = gen_complete_bipartite(10, 10).unwrap(); // m = 100
        let g = crate::generators::gen_union(&[g, Graph::empty(44)]).unwrap();
        let mut o = InstrumentedOracle::new(&g);
        let mut calls = 0u32;
        let stub = |_eps: f64,
                    _n: usize,
                    bound: u64,
                    _o: &mut InstrumentedOracle,
                    _rng: &mut ChaCha8Rng| {
            calls += 1;
            let est = if bound as f64 >= m { m } else { 0.0 };
            Ok(AdviceOutcome {
                estimate: est,
                is_queries: 0,
                abstract_cost: 0.0,
            })
        };
        let mut none: Option<&mut dyn FallbackEstimator> = None;
        let r = estimate_edges_with(
            0.25,
            &mut o,
            Tunables::desk(),
            &mut rng(3),
            stub,
            &mut none,
        )
        .unwrap();
        assert_eq!(r.m_tilde, m);
        let max_bound = (n * (n - 1) / 2) as f64;
        assert!(r.advice_trace.len() as f64 <= max_bound.log2().ceil() + 1.0);
        // Accepted at the first bound <= 4m.
        let accepted = r.advice_trace.last().unwrap();
        assert!(accepted.accepted);
        assert!(4.0 * m >= accepted.edge_bound as f64);
        if r.advice_trace.len() > 1 {
            let prev = &r.advice_trace[r.advice_trace.len() - 2];
            assert!((prev.edge_bound as f64) > 4.0 * m);
        }
    }

    #[test]
    fn fallback_wins_when_it_finishes() {
        struct Instant42;
        impl FallbackEstimator for Instant42 {
            fn try_run(&mut self, _o: &mut dyn IsOracle, _budget: u64) -> Option<f64> {
                Some(42.0)
            }
        }
        let g = Graph::from_edges(8, [(0, 1)]).unwrap();
        let mut o = InstrumentedOracle::new(&g);
        let mut fb = Instant42;
        let r = estimate_edges(
            0.5,
            &mut o,
            Tunables::desk(),
            &mut rng(1),
            Some(&mut fb),
        )
        .unwrap();
        assert!(r.fallback_won);
        assert_eq!(r.m_tilde, 42.0);
    }

    #[test]
    fn eta_precondition_is_checked() {
        let g = Graph::from_edges(8, [(0, 1)]).unwrap();
        let mut o = InstrumentedOracle::new(&g);
        let p = Params::new(0.5, 8, 4, Tunables::default()).unwrap();
        let mut deg = MemoizedDegreeOracle::new(p.clone(), 1);
        let k = p.split_exp + 1;
        assert!(matches!(
            high_degree_event(&mut o, &mut deg, k, 0, 1.5, &mut rng(2)),
            Err(EstimatorError::EtaOutOfRange { .. })
        ));
    }

    #[test]
    fn bucket_scan_respects_length_bound() {
        let g = Graph::from_edges(16, [(0, 1), (2, 3)]).unwrap();
        let mut o = InstrumentedOracle::new(&g);
        let p = Params::new(0.5, 16, 8, Tunables::default()).unwrap();
        let mut deg = MemoizedDegreeOracle::new(p.clone(), 1);
        for k in p.high_indices() {
            let scan = high_degree_bucket(&mut o, &mut deg, k, 0, &mut rng(7)).unwrap();
            assert!(scan.event_calls <= bucket_scan_length(&p, k));
            // No high-degree vertices here: the scan must exhaust.
            assert_eq!(scan.estimate, 0.0);
        }
    }

    #[test]
    fn run_report_serializes() {
        let g = Graph::empty(16);
        let mut o = InstrumentedOracle::new(&g);
        let r = estimate_edges(0.5, &mut o, Tunables::desk(), &mut rng(9), None).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: RunReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.schema, 1);
        assert_eq!(back.is_queries, r.is_queries);
        assert_eq!(back.m_tilde, r.m_tilde);
    }
}
