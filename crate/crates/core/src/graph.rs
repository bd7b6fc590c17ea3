//! Immutable simple undirected graphs over the vertex set `0..n`, plus the
//! exact (brute-force) accessors used by tests and reporting.
//!
//! Storage is packed adjacency bit rows for `n <= 65536` and sorted adjacency
//! lists above that, behind one interface. Pair membership is O(1) on the
//! dense path.

use std::fmt;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

/// Vertex id, 0-based internally. External files are 1-based.
pub type Vertex = u32;

const DENSE_LIMIT: usize = 1 << 16;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range for n = {1}")]
    VertexOutOfRange(Vertex, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("malformed edge list: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// A set of vertices, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VertexSet {
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new(mut members: Vec<Vertex>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    /// Builds from members already sorted and unique (checked in debug).
    pub fn from_sorted(members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { members }
    }

    pub fn full(n: usize) -> Self {
        VertexSet {
            members: (0..n as Vertex).collect(),
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.members
    }

    /// Checks `members ⊆ [0, n)`.
    pub fn in_range(&self, n: usize) -> bool {
        self.members.last().map_or(true, |&v| (v as usize) < n)
    }
}

impl std::ops::Deref for VertexSet {
    type Target = [Vertex];
    fn deref(&self) -> &[Vertex] {
        &self.members
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        VertexSet::new(v)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        VertexSet::new(iter.into_iter().collect())
    }
}

#[derive(Clone)]
enum AdjStore {
    /// Packed bit rows, `words` u64 words per row.
    Dense { words: usize, bits: Vec<u64> },
    /// Sorted neighbor lists.
    Sparse(Vec<Vec<Vertex>>),
}

/// Simple undirected graph, immutable after construction.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    m: u64,
    store: AdjStore,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.m)
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        let store = if n <= DENSE_LIMIT {
            let words = n.div_ceil(64);
            AdjStore::Dense {
                words,
                bits: vec![0u64; words * n],
            }
        } else {
            AdjStore::Sparse(vec![Vec::new(); n])
        };
        Graph { n, m: 0, store }
    }

    /// Builds a graph from an edge list, validating simplicity and range.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.insert_edge(u, v)?;
        }
        if let AdjStore::Sparse(rows) = &mut g.store {
            for row in rows.iter_mut() {
                row.sort_unstable();
            }
        }
        Ok(g)
    }

    pub(crate) fn insert_edge(&mut self, u: Vertex, v: Vertex) -> Result<(), GraphError> {
        if u as usize >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v as usize >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match &mut self.store {
            AdjStore::Dense { words, bits } => {
                let (ui, vi) = (u as usize, v as usize);
                let idx = ui * *words + vi / 64;
                let mask = 1u64 << (vi % 64);
                if bits[idx] & mask != 0 {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                bits[idx] |= mask;
                bits[vi * *words + ui / 64] |= 1u64 << (ui % 64);
            }
            AdjStore::Sparse(rows) => {
                // Duplicates checked lazily; rows are sorted at the end of
                // construction, so probe linearly here (cheap for generators
                // that never emit duplicates).
                if rows[u as usize].contains(&v) {
                    return Err(GraphError::DuplicateEdge(u, v));
                }
                rows[u as usize].push(v);
                rows[v as usize].push(u);
            }
        }
        self.m += 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Exact number of edges.
    pub fn edge_count(&self) -> u64 {
        self.m
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        debug_assert!((u as usize) < self.n && (v as usize) < self.n);
        if u == v {
            return false;
        }
        match &self.store {
            AdjStore::Dense { words, bits } => {
                let idx = u as usize * *words + v as usize / 64;
                bits[idx] & (1u64 << (v as usize % 64)) != 0
            }
            AdjStore::Sparse(rows) => rows[u as usize].binary_search(&v).is_ok(),
        }
    }

    /// Exact degree of `v`.
    pub fn degree(&self, v: Vertex) -> Result<u64, GraphError> {
        if v as usize >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        Ok(match &self.store {
            AdjStore::Dense { words, bits } => {
                let row = &bits[v as usize * *words..(v as usize + 1) * *words];
                row.iter().map(|w| w.count_ones() as u64).sum()
            }
            AdjStore::Sparse(rows) => rows[v as usize].len() as u64,
        })
    }

    /// Exact degree of `v` into `restrict`; never counts `v` itself.
    pub fn degree_within(&self, v: Vertex, restrict: &VertexSet) -> Result<u64, GraphError> {
        if v as usize >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        Ok(restrict
            .iter()
            .filter(|&u| u != v && self.has_edge(v, u))
            .count() as u64)
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        match &self.store {
            AdjStore::Dense { words, bits } => {
                let row = &bits[v as usize * *words..(v as usize + 1) * *words];
                let mut out = Vec::new();
                for (wi, &w) in row.iter().enumerate() {
                    let mut word = w;
                    while word != 0 {
                        let b = word.trailing_zeros() as usize;
                        out.push((wi * 64 + b) as Vertex);
                        word &= word - 1;
                    }
                }
                out
            }
            AdjStore::Sparse(rows) => rows[v as usize].clone(),
        }
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.m as usize);
        for u in 0..self.n as Vertex {
            for v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Answers "does `set` contain an edge endpoint pair" by scanning each
    /// member's adjacency row against the accumulated member mask,
    /// short-circuiting on the first hit. `set` must be sorted and in range.
    pub(crate) fn set_is_independent(&self, set: &[Vertex]) -> bool {
        if set.len() < 2 {
            return true;
        }
        match &self.store {
            AdjStore::Dense { words, bits } => {
                if set.len() == 2 {
                    return !self.has_edge(set[0], set[1]);
                }
                let mut mask = vec![0u64; *words];
                for &v in set {
                    let row = &bits[v as usize * *words..(v as usize + 1) * *words];
                    for (mw, rw) in mask.iter().zip(row.iter()) {
                        if mw & rw != 0 {
                            return false;
                        }
                    }
                    mask[v as usize / 64] |= 1u64 << (v as usize % 64);
                }
                true
            }
            AdjStore::Sparse(_) => {
                for (i, &u) in set.iter().enumerate() {
                    for &v in &set[i + 1..] {
                        if self.has_edge(u, v) {
                            return false;
                        }
                    }
                }
                true
            }
        }
    }

    /// Loads the text edge-list format: first line `n m`, then `m` lines
    /// `u v` with 1-based ids and `u < v`; `#` starts a comment.
    pub fn load_edge_list(path: &Path) -> Result<Self, GraphError> {
        let file = std::fs::File::open(path)?;
        let reader = BufReader::new(file);
        let mut lines = reader.lines();

        let header = loop {
            match lines.next() {
                Some(line) => {
                    let line = line?;
                    let line = strip_comment(&line);
                    if !line.is_empty() {
                        break line.to_string();
                    }
                }
                None => return Err(GraphError::Parse("missing header line".into())),
            }
        };
        let mut it = header.split_whitespace();
        let n: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| GraphError::Parse("bad vertex count".into()))?;
        let m: u64 = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| GraphError::Parse("bad edge count".into()))?;

        let mut g = Graph::empty(n);
        for line in lines {
            let line = line?;
            let line = strip_comment(&line);
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_whitespace();
            let u: u64 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?;
            let v: u64 = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| GraphError::Parse(format!("bad edge line: {line}")))?;
            if u == 0 || v == 0 {
                return Err(GraphError::Parse("vertex ids are 1-based".into()));
            }
            if u >= v {
                return Err(GraphError::Parse(format!(
                    "edges must satisfy u < v, got {u} {v}"
                )));
            }
            g.insert_edge((u - 1) as Vertex, (v - 1) as Vertex)?;
        }
        if g.m != m {
            return Err(GraphError::Parse(format!(
                "header declares {m} edges, file has {}",
                g.m
            )));
        }
        if let AdjStore::Sparse(rows) = &mut g.store {
            for row in rows.iter_mut() {
                row.sort_unstable();
            }
        }
        Ok(g)
    }

    pub fn save_edge_list(&self, path: &Path) -> Result<(), GraphError> {
        let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
        writeln!(out, "{} {}", self.n, self.m)?;
        for (u, v) in self.edges() {
            writeln!(out, "{} {}", u + 1, v + 1)?;
        }
        Ok(())
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn exact_edge_count_small_families() {
        assert_eq!(path3().edge_count(), 2);
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(Graph::empty(10).edge_count(), 0);
    }

    #[test]
    fn exact_degree_star_and_triangle() {
        // Star with center 0 and five leaves.
        let star =
            Graph::from_edges(6, (1..6).map(|v| (0u32, v as Vertex))).unwrap();
        assert_eq!(star.degree(0).unwrap(), 5);
        let leaves = VertexSet::new((1..6).collect());
        assert_eq!(star.degree_within(1, &leaves).unwrap(), 0);

        let tri = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let others = VertexSet::new(vec![1, 2]);
        assert_eq!(tri.degree_within(0, &others).unwrap(), 2);
        // Restriction containing v itself never counts v.
        let all = VertexSet::full(3);
        assert_eq!(tri.degree_within(0, &all).unwrap(), 2);
    }

    #[test]
    fn degree_out_of_range_is_error() {
        assert!(matches!(
            path3().degree(3),
            Err(GraphError::VertexOutOfRange(3, 3))
        ));
    }

    #[test]
    fn rejects_loops_duplicates_and_range() {
        assert!(matches!(
            Graph::from_edges(3, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        ));
        assert!(matches!(
            Graph::from_edges(3, [(0, 5)]),
            Err(GraphError::VertexOutOfRange(5, 3))
        ));
    }

    #[test]
    fn symmetry_on_both_stores() {
        for n in [8usize, DENSE_LIMIT + 4] {
            let mut g = Graph::empty(n);
            g.insert_edge(0, (n - 1) as Vertex).unwrap();
            if let AdjStore::Sparse(rows) = &mut g.store {
                for row in rows.iter_mut() {
                    row.sort_unstable();
                }
            }
            assert!(g.has_edge(0, (n - 1) as Vertex));
            assert!(g.has_edge((n - 1) as Vertex, 0));
            assert_eq!(g.degree(0).unwrap(), 1);
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        let g = Graph::from_edges(5, [(0, 1), (1, 4), (2, 3)]).unwrap();
        g.save_edge_list(&path).unwrap();
        let g2 = Graph::load_edge_list(&path).unwrap();
        assert_eq!(g2.vertex_count(), 5);
        assert_eq!(g2.edges(), g.edges());
    }

    #[test]
    fn edge_list_validates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.txt");
        std::fs::write(&path, "3 1\n2 1\n").unwrap();
        assert!(Graph::load_edge_list(&path).is_err());
        std::fs::write(&path, "3 1\n# comment\n1 2\n").unwrap();
        assert!(Graph::load_edge_list(&path).is_ok());
        std::fs::write(&path, "3 2\n1 2\n").unwrap();
        assert!(Graph::load_edge_list(&path).is_err());
    }
}
