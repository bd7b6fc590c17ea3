//! Exact-degree reference partitions, used by tests and reporting to verify
//! the sampled classification against brute-force degrees.

use crate::degree_oracle::BucketLabel;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::params::Params;

/// A canonical bucket partition computed from exact degrees: high iff
/// deg >= alpha^split, low-bucket index from deg(u, L), high-bucket indices
/// from deg(u) and deg(u, L).
#[derive(Clone, Debug)]
pub struct ExactPartition {
    pub labels: Vec<BucketLabel>,
    pub low_side: VertexSet,
    /// |L_i| for i in 0..=split.
    pub low_counts: Vec<u64>,
    /// |H_{k,l}| indexed [k - split - 1][l].
    pub high_counts: Vec<Vec<u64>>,
}

impl ExactPartition {
    pub fn build(graph: &Graph, params: &Params) -> Self {
        let n = graph.vertex_count();
        let split = params.split_degree();
        let low_side: VertexSet = (0..n as Vertex)
            .filter(|&v| (graph.degree(v).unwrap() as f64) < split)
            .collect();

        let mut labels = Vec::with_capacity(n);
        let mut low_counts = vec![0u64; params.split_exp as usize + 1];
        let hk = (params.top_exp - params.split_exp) as usize;
        let mut high_counts = vec![vec![0u64; params.frac_exp as usize + 1]; hk];

        for v in 0..n as Vertex {
            let deg = graph.degree(v).unwrap() as f64;
            let deg_low = graph.degree_within(v, &low_side).unwrap() as f64;
            let label = if deg < split {
                let i = if deg_low < 1.0 {
                    0
                } else {
                    nearest_exp(params, deg_low).clamp(1, params.split_exp)
                };
                low_counts[i as usize] += 1;
                BucketLabel::Low(i)
            } else {
                let k = nearest_exp(params, deg).clamp(params.split_exp + 1, params.top_exp);
                let l = if deg_low < 1.0 {
                    params.frac_exp
                } else {
                    (k as i64 - nearest_exp(params, deg_low) as i64)
                        .clamp(0, params.frac_exp as i64) as u32
                };
                high_counts[(k - params.split_exp - 1) as usize][l as usize] += 1;
                BucketLabel::High { deg_exp: k, frac_idx: l }
            };
            labels.push(label);
        }
        ExactPartition {
            labels,
            low_side,
            low_counts,
            high_counts,
        }
    }
}

/// Exponent e minimizing |log(x) - e log(alpha)|, for x >= 1.
fn nearest_exp(params: &Params, x: f64) -> u32 {
    debug_assert!(x >= 1.0);
    (x.ln() / params.alpha.ln()).round().max(0.0) as u32
}

/// Whether the assigned label's degree windows hold for `v` against exact
/// degrees: low bucket i requires deg(u) <= alpha^(split+1) and deg(u, L)
/// inside [alpha^(i-1), alpha^(i+1)] (zero for bucket 0); high bucket (k, l)
/// requires deg(u) in [alpha^(k-1), alpha^(k+1)], deg(u, L) inside
/// [alpha^(k-l-1), alpha^(k-l+1)] for l below the deepest level and below
/// alpha^(k-l+1) at the deepest level.
///
/// The low side used for deg(u, L) is whatever the classifier committed to,
/// so callers pass it in.
pub fn windows_hold(
    graph: &Graph,
    params: &Params,
    v: Vertex,
    label: BucketLabel,
    low_side: &VertexSet,
) -> bool {
    let tol = 1.0 + 1e-9;
    let deg = graph.degree(v).unwrap() as f64;
    let deg_low = graph.degree_within(v, low_side).unwrap() as f64;
    match label {
        BucketLabel::Low(i) => {
            if deg > params.alpha_pow(params.split_exp as i64 + 1) * tol {
                return false;
            }
            if i == 0 {
                deg_low == 0.0
            } else {
                params.alpha_pow(i as i64 - 1) / tol <= deg_low
                    && deg_low <= params.alpha_pow(i as i64 + 1) * tol
            }
        }
        BucketLabel::High { deg_exp: k, frac_idx: l } => {
            if deg < params.alpha_pow(k as i64 - 1) / tol
                || deg > params.alpha_pow(k as i64 + 1) * tol
            {
                return false;
            }
            if l == params.frac_exp {
                deg_low <= params.alpha_pow((k - l) as i64 + 1) * tol
            } else {
                params.alpha_pow(k as i64 - l as i64 - 1) / tol <= deg_low
                    && deg_low <= params.alpha_pow(k as i64 - l as i64 + 1) * tol
            }
        }
    }
}
