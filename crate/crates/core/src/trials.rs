//! Seeded, reproducible estimation trials over generated instances.
//!
//! One 64-bit seed drives everything through named substreams (instance
//! generation and estimator randomness are separate streams), so a recorded
//! row can be replayed bit-exactly from (family, n, m-target, eps, lambda,
//! seed) alone.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::estimator::{estimate_edges, run_query_budget, EstimatorError};
use crate::generators::{
    gen_complete_bipartite, gen_erdos_renyi, gen_planted_heavy, gen_planted_light, gen_star,
    GenError,
};
use crate::graph::Graph;
use crate::oracle::InstrumentedOracle;
use crate::params::Tunables;

#[derive(Debug, Error)]
pub enum TrialError {
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
    #[error("unknown family: {0}")]
    UnknownFamily(String),
}

/// Instance family of a trial.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum FamilySpec {
    Er { n: usize, m_target: u64 },
    PlantedLight { n: usize, m_target: u64 },
    PlantedHeavy { n: usize, m_target: u64 },
    Star { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Empty { n: usize },
}

impl FamilySpec {
    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Er { .. } => "er",
            FamilySpec::PlantedLight { .. } => "planted-light",
            FamilySpec::PlantedHeavy { .. } => "planted-heavy",
            FamilySpec::Star { .. } => "star",
            FamilySpec::CompleteBipartite { .. } => "complete-bipartite",
            FamilySpec::Empty { .. } => "empty",
        }
    }

    /// Parses `name:n[:m]`-style CLI specs, e.g. `er:512:4096`, `star:64`,
    /// `complete-bipartite:8:100`.
    pub fn parse(s: &str) -> Result<Self, TrialError> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || TrialError::UnknownFamily(s.to_string());
        let num = |i: usize| -> Result<u64, TrialError> {
            parts.get(i).and_then(|p| p.parse().ok()).ok_or_else(bad)
        };
        match parts[0] {
            "er" => Ok(FamilySpec::Er { n: num(1)? as usize, m_target: num(2)? }),
            "planted-light" => Ok(FamilySpec::PlantedLight {
                n: num(1)? as usize,
                m_target: num(2)?,
            }),
            "planted-heavy" => Ok(FamilySpec::PlantedHeavy {
                n: num(1)? as usize,
                m_target: num(2)?,
            }),
            "star" => Ok(FamilySpec::Star { n: num(1)? as usize }),
            "complete-bipartite" => Ok(FamilySpec::CompleteBipartite {
                a: num(1)? as usize,
                b: num(2)? as usize,
            }),
            "empty" => Ok(FamilySpec::Empty { n: num(1)? as usize }),
            _ => Err(bad()),
        }
    }

    pub fn vertex_count(&self) -> usize {
        match *self {
            FamilySpec::Er { n, .. }
            | FamilySpec::PlantedLight { n, .. }
            | FamilySpec::PlantedHeavy { n, .. }
            | FamilySpec::Star { n }
            | FamilySpec::Empty { n } => n,
            FamilySpec::CompleteBipartite { a, b } => a + b,
        }
    }

    /// Builds the instance from the trial seed's generation substream.
    pub fn build(&self, seed: u64) -> Result<Graph, TrialError> {
        let gen_seed = substream_seed(seed, STREAM_GRAPH_GEN);
        Ok(match *self {
            FamilySpec::Er { n, m_target } => {
                let pairs = (n as u64 * (n as u64 - 1) / 2) as f64;
                gen_erdos_renyi(n, (m_target as f64 / pairs).min(1.0), gen_seed)?
            }
            FamilySpec::PlantedLight { n, m_target } => {
                gen_planted_light(n, m_target, gen_seed)?.graph
            }
            FamilySpec::PlantedHeavy { n, m_target } => {
                gen_planted_heavy(n, m_target, gen_seed)?.graph
            }
            FamilySpec::Star { n } => gen_star(n)?,
            FamilySpec::CompleteBipartite { a, b } => gen_complete_bipartite(a, b)?,
            FamilySpec::Empty { n } => Graph::empty(n),
        })
    }
}

pub const STREAM_GRAPH_GEN: u64 = 1;
pub const STREAM_ESTIMATOR: u64 = 2;
pub const STREAM_AUGMENTED: u64 = 3;

/// Derives the per-component seed for a named substream.
pub fn substream_seed(seed: u64, stream: u64) -> u64 {
    // splitmix64 over (seed ^ stream tag): cheap, well-mixed, stable.
    let mut z = seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn estimator_rng(seed: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(substream_seed(seed, STREAM_ESTIMATOR));
    rng.set_stream(0);
    rng
}

/// One benchmark row; field order matches the CSV the CLI emits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialRow {
    pub n: usize,
    pub m_exact: u64,
    pub eps: f64,
    pub lambda: f64,
    pub seed: u64,
    pub m_tilde: f64,
    pub rel_error: f64,
    pub is_queries: u64,
    pub abstract_cost: f64,
    pub analytic_budget: f64,
    pub wall_ms: f64,
}

/// Runs one seeded estimation trial end to end.
pub fn run_estimate_trial(
    family: FamilySpec,
    eps: f64,
    tunables: Tunables,
    seed: u64,
) -> Result<TrialRow, TrialError> {
    let graph = family.build(seed)?;
    let m_exact = graph.edge_count();
    let mut oracle = InstrumentedOracle::new(&graph);
    let mut rng = estimator_rng(seed);
    let mut report = estimate_edges(eps, &mut oracle, tunables, &mut rng, None)?;
    report.seed = seed;
    let rel_error = if m_exact > 0 {
        (report.m_tilde - m_exact as f64) / m_exact as f64
    } else {
        0.0
    };
    Ok(TrialRow {
        n: graph.vertex_count(),
        m_exact,
        eps,
        lambda: tunables.lambda,
        seed,
        m_tilde: report.m_tilde,
        rel_error,
        is_queries: report.is_queries,
        abstract_cost: report.abstract_cost,
        analytic_budget: run_query_budget(eps, graph.vertex_count(), tunables),
        wall_ms: report.wall_ms,
    })
}

/// Median/success summary over a batch of rows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub median_m_tilde: f64,
    pub median_rel_error: f64,
    pub median_is_queries: f64,
    pub median_wall_ms: f64,
    /// Fraction of trials with |rel_error| <= eps.
    pub success_rate: f64,
}

pub fn summarize(rows: &[TrialRow]) -> Option<TrialSummary> {
    if rows.is_empty() {
        return None;
    }
    let eps = rows[0].eps;
    let med = |f: &dyn Fn(&TrialRow) -> f64| -> f64 {
        let mut v: Vec<f64> = rows.iter().map(f).collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mid = v.len() / 2;
        if v.len() % 2 == 1 {
            v[mid]
        } else {
            (v[mid - 1] + v[mid]) / 2.0
        }
    };
    let ok = rows.iter().filter(|r| r.rel_error.abs() <= eps).count();
    Some(TrialSummary {
        trials: rows.len(),
        median_m_tilde: med(&|r| r.m_tilde),
        median_rel_error: med(&|r| r.rel_error),
        median_is_queries: med(&|r| r.is_queries as f64),
        median_wall_ms: med(&|r| r.wall_ms),
        success_rate: ok as f64 / rows.len() as f64,
    })
}
