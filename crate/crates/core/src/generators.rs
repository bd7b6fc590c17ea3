//! Instance generators: the planted bipartite light/heavy pair used by the
//! distinguishing experiments, plus standard families for tests and benches.
//!
//! The light and heavy planted distributions are coupled: with the same seed
//! they share the bipartition and the random cross edges, and the heavy
//! instance is exactly the light instance plus a complete `B x A-bar` block.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex, VertexSet};
use crate::sampling::{binomial_count, distinct_indices};

#[derive(Debug, Error)]
pub enum GenError {
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A planted bipartite instance between `a_side` and its complement. The
/// heavy variant forces every pair between `b_core` and the complement to be
/// an edge; the light variant has an empty `b_core`.
#[derive(Clone, Debug)]
pub struct PlantedInstance {
    pub graph: Graph,
    pub a_side: VertexSet,
    pub b_core: VertexSet,
    pub target_m: u64,
    /// Target average degree m/n, kept exact as a float.
    pub degree_param: f64,
    /// Set when (n, m) fall outside the supported density regime
    /// `n <= m <= n^2 / log2(n)^6`; the instance is still generated.
    pub regime_warning: bool,
}

fn log2f(n: usize) -> f64 {
    (n as f64).log2()
}

fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform random subset of `0..n` (independent fair coin per vertex).
fn random_side(n: usize, rng: &mut ChaCha8Rng) -> (Vec<Vertex>, Vec<Vertex>) {
    let mut a = Vec::with_capacity(n / 2 + 8);
    let mut a_bar = Vec::with_capacity(n / 2 + 8);
    for v in 0..n as Vertex {
        if rng.random::<bool>() {
            a.push(v);
        } else {
            a_bar.push(v);
        }
    }
    (a, a_bar)
}

fn regime_warning(n: usize, m: u64) -> bool {
    let l = log2f(n);
    let upper = (n as f64) * (n as f64) / l.powi(6);
    (m as f64) < n as f64 || (m as f64) > upper
}

/// Sparse cross edges: for each `i` in `from`, neighbors drawn from `to`
/// with probability `p` each (binomial count + distinct indices).
fn cross_edges(
    g: &mut Graph,
    from: &[Vertex],
    to: &[Vertex],
    p: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(), GraphError> {
    if to.is_empty() || p <= 0.0 {
        return Ok(());
    }
    for &i in from {
        let k = binomial_count(rng, to.len() as u64, p) as usize;
        for idx in distinct_indices(rng, to.len(), k) {
            g.insert_edge(i, to[idx])?;
        }
    }
    Ok(())
}

/// Light planted instance: random bipartition, each cross pair an edge with
/// probability d/n where d = m/n. Expected edge count is about m/4.
pub fn gen_planted_light(n: usize, m: u64, seed: u64) -> Result<PlantedInstance, GenError> {
    gen_planted(n, m, seed, false)
}

/// Heavy planted instance: the light instance plus a forced complete block
/// between a random sparse core `B ⊆ A` and the complement. Edge count is
/// at least m with high probability.
pub fn gen_planted_heavy(n: usize, m: u64, seed: u64) -> Result<PlantedInstance, GenError> {
    gen_planted(n, m, seed, true)
}

fn gen_planted(n: usize, m: u64, seed: u64, heavy: bool) -> Result<PlantedInstance, GenError> {
    if n < 2 {
        return Err(GenError::InvalidSize(format!("n = {n} too small")));
    }
    let d = m as f64 / n as f64;
    let p = d / n as f64;
    if p > 1.0 {
        return Err(GenError::InvalidSize(format!(
            "m = {m} exceeds the bipartite capacity at n = {n}"
        )));
    }

    let (a, a_bar) = random_side(n, &mut substream(seed, 0));
    let mut graph = Graph::empty(n);
    cross_edges(&mut graph, &a, &a_bar, p, &mut substream(seed, 1))?;

    let mut b_core = Vec::new();
    if heavy {
        // Core membership probability d log2(n) / n, clamped to 1 outside the
        // supported regime (flagged below).
        let pb = (d * log2f(n) / n as f64).min(1.0);
        let mut rng = substream(seed, 2);
        for &i in &a {
            if rng.random::<f64>() < pb {
                b_core.push(i);
            }
        }
        for &i in &b_core {
            for &j in &a_bar {
                if !graph.has_edge(i, j) {
                    graph.insert_edge(i, j)?;
                }
            }
        }
    }

    let warn = regime_warning(n, m) || d * log2f(n) / n as f64 > 1.0;
    Ok(PlantedInstance {
        graph,
        a_side: VertexSet::new(a),
        b_core: VertexSet::new(b_core),
        target_m: m,
        degree_param: d,
        regime_warning: warn,
    })
}

/// G(n, p), seeded.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::InvalidSize(format!("p = {p} outside [0,1]")));
    }
    let mut g = Graph::empty(n);
    let mut rng = substream(seed, 0);
    // Row by row over u < v pairs.
    for u in 0..n.saturating_sub(1) {
        let span = n - u - 1;
        let k = binomial_count(&mut rng, span as u64, p) as usize;
        for idx in distinct_indices(&mut rng, span, k) {
            g.insert_edge(u as Vertex, (u + 1 + idx) as Vertex)?;
        }
    }
    Ok(g)
}

/// Star on `n` vertices: vertex 0 is the center.
pub fn gen_star(n: usize) -> Result<Graph, GenError> {
    if n == 0 {
        return Err(GenError::InvalidSize("star needs n >= 1".into()));
    }
    Ok(Graph::from_edges(n, (1..n as Vertex).map(|v| (0, v)))?)
}

/// Complete bipartite graph K_{a,b}; left side is `0..a`.
pub fn gen_complete_bipartite(a: usize, b: usize) -> Result<Graph, GenError> {
    if a == 0 || b == 0 {
        return Err(GenError::InvalidSize("both sides must be non-empty".into()));
    }
    let n = a + b;
    let edges = (0..a as Vertex)
        .flat_map(|u| (a as Vertex..n as Vertex).map(move |v| (u, v)));
    Ok(Graph::from_edges(n, edges)?)
}

/// Disjoint union; part vertex ranges are shifted in order.
pub fn gen_union(parts: &[Graph]) -> Result<Graph, GenError> {
    let n: usize = parts.iter().map(|g| g.vertex_count()).sum();
    let mut edges = Vec::new();
    let mut off = 0u32;
    for g in parts {
        edges.extend(g.edges().into_iter().map(|(u, v)| (u + off, v + off)));
        off += g.vertex_count() as u32;
    }
    Ok(Graph::from_edges(n, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_and_bipartite_shapes() {
        let s = gen_star(6).unwrap();
        assert_eq!(s.edge_count(), 5);
        assert_eq!(s.degree(0).unwrap(), 5);
        let kb = gen_complete_bipartite(3, 4).unwrap();
        assert_eq!(kb.edge_count(), 12);
        assert!(gen_complete_bipartite(0, 4).is_err());
        assert!(gen_star(0).is_err());
    }

    #[test]
    fn union_shifts_parts() {
        let g = gen_union(&[gen_star(3).unwrap(), Graph::empty(4), gen_star(2).unwrap()]).unwrap();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(7, 8));
    }

    #[test]
    fn erdos_renyi_mean_edges() {
        // E|E| = C(1000,2) * 0.01 = 4995; average over seeds.
        let mut total = 0u64;
        let seeds = 20;
        for s in 0..seeds {
            total += gen_erdos_renyi(1000, 0.01, s).unwrap().edge_count();
        }
        let mean = total as f64 / seeds as f64;
        let sd_single = (4995.0f64 * 0.99).sqrt(); // ~70
        assert!((mean - 4995.0).abs() < 4.0 * sd_single / (seeds as f64).sqrt());
    }

    #[test]
    fn degenerate_zero_edges_target() {
        let inst = gen_planted_light(64, 0, 5).unwrap();
        assert_eq!(inst.graph.edge_count(), 0);
        assert!(inst.regime_warning);
    }

    #[test]
    fn planted_bipartite_structure() {
        let inst = gen_planted_heavy(256, 256 * 8, 17).unwrap();
        // All edges cross the partition.
        for (u, v) in inst.graph.edges() {
            assert_ne!(inst.a_side.contains(u), inst.a_side.contains(v));
        }
        // Core subset of A; every core vertex is complete to the complement.
        let comp_size = 256 - inst.a_side.len() as u64;
        for b in inst.b_core.iter() {
            assert!(inst.a_side.contains(b));
            assert_eq!(inst.graph.degree(b).unwrap(), comp_size);
        }
    }

    #[test]
    fn coupling_is_literal() {
        // Heavy = light + exactly the B x complement block, same seed.
        let n = 512;
        let m = 512 * 6;
        for seed in [1u64, 2, 3] {
            let light = gen_planted_light(n, m, seed).unwrap();
            let heavy = gen_planted_heavy(n, m, seed).unwrap();
            assert_eq!(light.a_side, heavy.a_side);
            assert!(light.b_core.is_empty());
            let mut extra = Vec::new();
            for (u, v) in heavy.graph.edges() {
                if !light.graph.has_edge(u, v) {
                    extra.push((u, v));
                }
            }
            // Every light edge is a heavy edge.
            for (u, v) in light.graph.edges() {
                assert!(heavy.graph.has_edge(u, v));
            }
            // The difference is exactly core x complement.
            for (u, v) in extra {
                let (core_v, other) = if heavy.b_core.contains(u) { (u, v) } else { (v, u) };
                assert!(heavy.b_core.contains(core_v));
                assert!(!heavy.a_side.contains(other));
            }
        }
    }

    #[test]
    fn empty_core_draw_matches_light() {
        // With a seed whose core draw is empty, heavy degenerates to light.
        for seed in 0..200u64 {
            let heavy = gen_planted_heavy(64, 64, seed).unwrap();
            if heavy.b_core.is_empty() {
                let light = gen_planted_light(64, 64, seed).unwrap();
                assert_eq!(heavy.graph.edges(), light.graph.edges());
                return;
            }
        }
        panic!("no empty-core draw in 200 seeds");
    }
}
