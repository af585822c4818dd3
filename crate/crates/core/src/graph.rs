//! Simple undirected graphs, edge-list ingestion and planted-partition
//! generation.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io;

use rand::Rng as _;

use crate::seed::rng_from_seed;
use crate::{Error, Result};

/// Immutable simple undirected graph with at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges (in either
    /// orientation) collapse to one; self-loops and edgeless graphs are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_counting(n, edges).map(|(g, _)| g)
    }

    /// Like [`Graph::from_edges`], also returning how many duplicate edges
    /// were dropped.
    pub fn from_edges_counting<I>(n: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u.to_string()));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut entries = 0;
        let mut duplicates = 0;
        for list in &mut adjacency {
            let before = list.len();
            list.sort_unstable();
            list.dedup();
            duplicates += before - list.len();
            entries += list.len();
        }
        if entries == 0 {
            return Err(Error::EmptyGraph);
        }
        // each dropped duplicate shows up once in both endpoint lists
        Ok((
            Graph {
                adjacency,
                m: entries / 2,
            },
            duplicates / 2,
        ))
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(Vec::len)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Every edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Modularity-matrix entry `B_ij = A_ij - k_i k_j / 2m`, diagonal
    /// included.
    pub fn modularity_coefficient(&self, i: usize, j: usize) -> Result<f64> {
        let n = self.n();
        for x in [i, j] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        Ok(self.modularity_numerator(i, j) as f64 / (2 * self.m) as f64)
    }

    /// `2m * B_ij` as an exact integer.
    pub(crate) fn modularity_numerator(&self, i: usize, j: usize) -> i64 {
        let two_m = 2 * self.m as i64;
        let a = i64::from(i != j && self.has_edge(i, j));
        two_m * a - (self.degree(i) * self.degree(j)) as i64
    }

    /// Writes the graph as an edge list with integer labels, preceded by one
    /// `#` comment line per entry of `header`.
    pub fn write_edge_list<W: io::Write>(&self, mut out: W, header: &[String]) -> io::Result<()> {
        for line in header {
            writeln!(out, "# {line}")?;
        }
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}")?;
        }
        out.flush()
    }
}

/// A graph loaded from text together with its original vertex labels.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub graph: Graph,
    /// `labels[i]` is the original label of dense vertex `i`.
    pub labels: Vec<String>,
    /// Number of repeated edges that were collapsed.
    pub duplicate_edges: usize,
}

/// Parses a whitespace-separated edge list.
///
/// Blank lines and lines starting with `#` or `%` are skipped. Columns after
/// the first two (weights, timestamps) are ignored. Labels are arbitrary
/// strings, numbered densely in order of first appearance.
pub fn load_edge_list(text: &str) -> Result<EdgeList> {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let (Some(a), Some(b)) = (tokens.next(), tokens.next()) else {
            return Err(Error::MalformedLine(lineno + 1));
        };
        if a == b {
            return Err(Error::SelfLoop(a.to_string()));
        }
        let mut ends = [0; 2];
        for (end, label) in ends.iter_mut().zip([a, b]) {
            let next = labels.len();
            *end = *index.entry(label).or_insert_with(|| {
                labels.push(label.to_string());
                next
            });
        }
        edges.push((ends[0], ends[1]));
    }
    if edges.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (graph, duplicate_edges) = Graph::from_edges_counting(labels.len(), edges)?;
    Ok(EdgeList {
        graph,
        labels,
        duplicate_edges,
    })
}

/// Output of [`generate_planted_partition`].
#[derive(Debug, Clone)]
pub struct PlantedPartition {
    pub graph: Graph,
    /// Seed that produced `graph`; differs from the requested seed only if
    /// earlier draws came out edgeless.
    pub effective_seed: u64,
}

impl PlantedPartition {
    /// Provenance lines for the edge-list header.
    pub fn header(&self, p_in: f64, p_out: f64, seed: u64) -> Vec<String> {
        let mut line = String::new();
        let _ = write!(
            line,
            "planted partition n={} p_in={p_in} p_out={p_out} seed={seed}",
            self.graph.n()
        );
        if self.effective_seed != seed {
            let _ = write!(line, " effective_seed={}", self.effective_seed);
        }
        vec![line, format!("m={}", self.graph.m())]
    }
}

const MAX_REGENERATIONS: u64 = 64;

/// Two-block planted partition: vertices `0..n/2` form block 0 and
/// `n/2..n` block 1. Each within-block pair is joined with probability
/// `p_in`, each cross-block pair with `p_out`, pairs drawn in lexicographic
/// order from a generator seeded with `seed`. An edgeless draw is retried
/// with `seed + 1`, `seed + 2`, ...
pub fn generate_planted_partition(n: usize, p_in: f64, p_out: f64, seed: u64) -> Result<PlantedPartition> {
    let valid = |p: f64| (0.0..=1.0).contains(&p);
    if !valid(p_in) || !valid(p_out) || p_out > p_in {
        return Err(Error::InvalidProbability { p_in, p_out });
    }
    if !n.is_multiple_of(2) {
        return Err(Error::OddN(n));
    }
    if n < 2 || p_in == 0.0 && p_out == 0.0 {
        return Err(Error::EmptyGraph);
    }
    let half = n / 2;
    for attempt in 0..MAX_REGENERATIONS {
        let effective_seed = seed.wrapping_add(attempt);
        let mut rng = rng_from_seed(effective_seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                let p = if (u < half) == (v < half) { p_in } else { p_out };
                if rng.random::<f64>() < p {
                    edges.push((u, v));
                }
            }
        }
        match Graph::from_edges(n, edges) {
            Ok(graph) => return Ok(PlantedPartition { graph, effective_seed }),
            Err(Error::EmptyGraph) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::EmptyGraph)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    /// Two triangles `{0,1,2}` and `{3,4,5}` joined by the edge `(2,3)`.
    pub fn barbell() -> Graph {
        Graph::from_edges(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]).unwrap()
    }
}
