//! Undirected simple graphs with a canonical edge numbering.
//!
//! Vertices are `0..n`. An edge `(i, j)` is always stored with `i < j`, and
//! its variable index is the rank of the pair in lexicographic order over
//! *all* pairs of `0..n`, whether or not the graph contains the other pairs.
//! This keeps variable indices stable between a graph and its subgraphs.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Canonical edge `(i, j)` with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId {
    pub i: usize,
    pub j: usize,
}

impl EdgeId {
    /// Builds the canonical edge for two distinct vertices in either order.
    pub fn new(u: usize, v: usize) -> Result<Self> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(EdgeId { i: u, j: v }),
            std::cmp::Ordering::Greater => Ok(EdgeId { i: v, j: u }),
            std::cmp::Ordering::Equal => Err(Error::invalid(format!("self-loop at vertex {u}"))),
        }
    }

    /// Dense variable index of this edge among all pairs of `0..n`.
    #[inline]
    pub fn index(&self, n: usize) -> usize {
        edge_index(n, self.i, self.j)
    }

    /// Inverse of [`EdgeId::index`].
    pub fn from_index(n: usize, index: usize) -> Option<Self> {
        let mut base = 0;
        for i in 0..n.saturating_sub(1) {
            let row = n - i - 1;
            if index < base + row {
                return Some(EdgeId {
                    i,
                    j: i + 1 + (index - base),
                });
            }
            base += row;
        }
        None
    }
}

/// Lexicographic rank of the pair `(i, j)`, `i < j < n`.
#[inline]
pub fn edge_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Number of vertex pairs, C(n, 2).
#[inline]
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<EdgeId>,
    adjacency: Vec<bool>,
}

/// A complete subgraph: sorted vertices plus the variable indices of its
/// C(k, 2) edges, listed in lexicographic edge order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clique {
    pub vertices: Vec<usize>,
    pub edge_ids: Vec<usize>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
            adjacency: vec![false; n * n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let e = EdgeId::new(u, v)?;
        if e.j >= self.n {
            return Err(Error::invalid(format!(
                "edge ({}, {}) out of range for {} vertices",
                e.i, e.j, self.n
            )));
        }
        self.edges.insert(e);
        self.adjacency[e.i * self.n + e.j] = true;
        self.adjacency[e.j * self.n + e.i] = true;
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u * self.n + v]
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == pair_count(self.n)
    }

    pub fn edge_var(&self, u: usize, v: usize) -> Option<usize> {
        if self.has_edge(u, v) {
            Some(edge_index(self.n, u.min(v), u.max(v)))
        } else {
            None
        }
    }

    /// Serializes to the `n <count>` / `e <i> <j>` text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n);
        for e in &self.edges {
            let _ = writeln!(out, "e {} {}", e.i, e.j);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut graph: Option<Graph> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["n", count] => {
                    if graph.is_some() {
                        return Err(Error::parse(lineno, "repeated vertex count line"));
                    }
                    let n = parse_usize(lineno, count)?;
                    graph = Some(Graph::empty(n));
                }
                ["e", a, b] => {
                    let g = graph
                        .as_mut()
                        .ok_or_else(|| Error::parse(lineno, "edge before vertex count"))?;
                    let (a, b) = (parse_usize(lineno, a)?, parse_usize(lineno, b)?);
                    g.add_edge(a, b)
                        .map_err(|e| Error::parse(lineno, e.to_string()))?;
                }
                _ => return Err(Error::parse(lineno, format!("unrecognized line `{line}`"))),
            }
        }
        graph.ok_or_else(|| Error::parse(0, "missing `n <count>` line"))
    }
}

pub(crate) fn parse_usize(line: usize, s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got `{s}`")))
}

/// K_n.
pub fn complete_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("complete graph needs at least one vertex"));
    }
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            g.edges.insert(EdgeId { i, j });
            g.adjacency[i * n + j] = true;
            g.adjacency[j * n + i] = true;
        }
    }
    Ok(g)
}

/// Erdős–Rényi graph: each pair is kept with probability `saturation`,
/// drawn in lexicographic pair order from a ChaCha stream seeded by `seed`.
pub fn random_graph(n: usize, saturation: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::invalid("random graph needs at least one vertex"));
    }
    if !(0.0..=1.0).contains(&saturation) {
        return Err(Error::invalid(format!(
            "saturation {saturation} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(saturation) {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

/// All k-cliques of `g` in lexicographic vertex order.
pub fn enumerate_cliques(g: &Graph, k: usize) -> Result<Vec<Clique>> {
    if k < 2 {
        return Err(Error::invalid(format!("clique size {k} must be at least 2")));
    }
    let n = g.n;
    let mut out = Vec::new();
    if k > n {
        return Ok(out);
    }
    let complete = g.is_complete();
    let mut stack: Vec<usize> = Vec::with_capacity(k);
    extend(g, n, k, complete, 0, &mut stack, &mut out);
    Ok(out)
}

fn extend(
    g: &Graph,
    n: usize,
    k: usize,
    complete: bool,
    start: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Clique>,
) {
    if stack.len() == k {
        let mut edge_ids = Vec::with_capacity(k * (k - 1) / 2);
        for (p, &u) in stack.iter().enumerate() {
            for &v in &stack[p + 1..] {
                edge_ids.push(edge_index(n, u, v));
            }
        }
        out.push(Clique {
            vertices: stack.clone(),
            edge_ids,
        });
        return;
    }
    let remaining = k - stack.len();
    for v in start..=n - remaining {
        if !complete && !stack.iter().all(|&u| g.has_edge(u, v)) {
            continue;
        }
        stack.push(v);
        extend(g, n, k, complete, v + 1, stack, out);
        stack.pop();
    }
}

/// Edges of the star with the given center and leaves, in leaf order.
pub fn star_edges(n_leaves: usize, center: usize, leaves: &[usize]) -> Result<Vec<EdgeId>> {
    if leaves.len() != n_leaves {
        return Err(Error::invalid(format!(
            "star S_{n_leaves} given {} leaves",
            leaves.len()
        )));
    }
    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(leaves.len());
    for &leaf in leaves {
        if leaf == center {
            return Err(Error::invalid(format!("star center {center} listed as a leaf")));
        }
        if !seen.insert(leaf) {
            return Err(Error::invalid(format!("duplicate star leaf {leaf}")));
        }
        edges.push(EdgeId::new(center, leaf)?);
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::binomial;

    #[test]
    fn complete_graph_edge_counts() {
        assert_eq!(complete_graph(2).unwrap().num_edges(), 1);
        assert_eq!(complete_graph(17).unwrap().num_edges(), 136);
        assert_eq!(complete_graph(42).unwrap().num_edges(), 861);
        assert_eq!(complete_graph(1).unwrap().num_edges(), 0);
        assert!(complete_graph(0).is_err());
    }

    #[test]
    fn edge_index_is_a_lexicographic_bijection() {
        for n in 1..12 {
            let mut expect = 0;
            for i in 0..n {
                for j in i + 1..n {
                    assert_eq!(edge_index(n, i, j), expect);
                    assert_eq!(EdgeId::from_index(n, expect), Some(EdgeId { i, j }));
                    expect += 1;
                }
            }
            assert_eq!(EdgeId::from_index(n, expect), None);
        }
    }

    #[test]
    fn random_graph_extremes_and_determinism() {
        assert_eq!(random_graph(10, 0.0, 3).unwrap().num_edges(), 0);
        assert!(random_graph(10, 1.0, 3).unwrap().is_complete());
        let a = random_graph(30, 0.5, 99).unwrap();
        let b = random_graph(30, 0.5, 99).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, random_graph(30, 0.5, 100).unwrap());
        assert!(random_graph(10, 1.5, 0).is_err());
        assert!(random_graph(10, -0.1, 0).is_err());
    }

    #[test]
    fn clique_counts_on_complete_graphs() {
        assert_eq!(enumerate_cliques(&complete_graph(5).unwrap(), 3).unwrap().len(), 10);
        assert_eq!(enumerate_cliques(&complete_graph(17).unwrap(), 4).unwrap().len(), 2380);
        for n in 2..=12usize {
            let g = complete_graph(n).unwrap();
            for k in 2..=n {
                let cliques = enumerate_cliques(&g, k).unwrap();
                assert_eq!(cliques.len() as u64, binomial(n as u64, k as u64));
            }
        }
        assert!(enumerate_cliques(&complete_graph(4).unwrap(), 1).is_err());
        assert!(enumerate_cliques(&complete_graph(3).unwrap(), 4).unwrap().is_empty());
    }

    #[test]
    fn triangles_match_triple_loop() {
        let g = random_graph(15, 0.5, 7).unwrap();
        let mut brute = 0;
        for i in 0..15 {
            for j in i + 1..15 {
                for k in j + 1..15 {
                    if g.has_edge(i, j) && g.has_edge(j, k) && g.has_edge(i, k) {
                        brute += 1;
                    }
                }
            }
        }
        let cliques = enumerate_cliques(&g, 3).unwrap();
        assert_eq!(cliques.len(), brute);
        for c in &cliques {
            assert!(c.vertices.windows(2).all(|w| w[0] < w[1]));
            for (p, &u) in c.vertices.iter().enumerate() {
                for &v in &c.vertices[p + 1..] {
                    assert!(c.edge_ids.contains(&g.edge_var(u, v).unwrap()));
                }
            }
        }
    }

    #[test]
    fn cliques_come_out_in_lexicographic_order() {
        let cliques = enumerate_cliques(&complete_graph(7).unwrap(), 3).unwrap();
        assert!(cliques.windows(2).all(|w| w[0].vertices < w[1].vertices));
        assert_eq!(cliques[0].edge_ids, vec![0, 1, 6]);
    }

    #[test]
    fn stars() {
        let leaves: Vec<usize> = (0..8).collect();
        let edges = star_edges(8, 16, &leaves).unwrap();
        assert_eq!(edges.len(), 8);
        for (leaf, e) in edges.iter().enumerate() {
            assert_eq!(*e, EdgeId { i: leaf, j: 16 });
        }
        assert!(star_edges(0, 5, &[]).unwrap().is_empty());
        assert_eq!(
            star_edges(3, 0, &[1, 2, 3]).unwrap(),
            vec![EdgeId { i: 0, j: 1 }, EdgeId { i: 0, j: 2 }, EdgeId { i: 0, j: 3 }]
        );
        assert!(star_edges(2, 0, &[1, 1]).is_err());
        assert!(star_edges(2, 0, &[0, 1]).is_err());
        assert!(star_edges(3, 0, &[1, 2]).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = random_graph(12, 0.4, 5).unwrap();
        let text = g.to_text();
        let back = Graph::parse(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(back.to_text(), text);

        let with_comments = "# demo\nn 3\n# edge below\ne 2 0\n";
        let g = Graph::parse(with_comments).unwrap();
        assert!(g.has_edge(0, 2));
        assert_eq!(g.to_text(), "n 3\ne 0 2\n");
        assert!(Graph::parse("e 0 1\n").is_err());
        assert!(Graph::parse("n 3\ne 0 3\n").is_err());
        assert!(Graph::parse("n 3\nx\n").is_err());
    }
}
