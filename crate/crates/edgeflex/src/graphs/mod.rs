//! Finite simple graphs on vertices `1..=n` with no isolated vertices.
//!
//! Edges keep their construction order; the incidence matrix has one row per
//! edge in that order, which downstream polytope constructions rely on.

mod bipartite;
mod cycles;

pub use bipartite::BipartiteDecomposition;
pub use cycles::OddCyclePair;

use crate::intlin::IntegerMatrix;
use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least two vertices and one edge")]
    Empty,
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: loop edge at vertex {v}")]
    LoopEdge { line: usize, v: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("vertex {v} is isolated")]
    IsolatedVertex { v: usize },
    #[error("line {line}: vertex label {v} out of range 1..={n}")]
    OutOfRange { line: usize, v: usize, n: usize },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("cycle enumeration exceeded cap {cap}")]
    CycleCapExceeded { cap: usize },
    #[error("operation requires a connected graph")]
    Disconnected,
}

/// A finite simple graph. Vertices are labeled `1..=n`; every vertex is
/// incident to at least one edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Validates and builds a graph from unordered vertex pairs. Pairs are
    /// normalized to `u < v`; the given edge order is preserved.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n < 2 || edges.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut seen = BTreeSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (line, &(a, b)) in edges.iter().enumerate() {
            let line = line + 1;
            for v in [a, b] {
                if v < 1 || v > n {
                    return Err(GraphError::OutOfRange { line, v, n });
                }
            }
            if a == b {
                return Err(GraphError::LoopEdge { line, v: a });
            }
            let (u, v) = (a.min(b), a.max(b));
            if !seen.insert((u, v)) {
                return Err(GraphError::DuplicateEdge { line, u, v });
            }
            normalized.push((u, v));
        }
        let mut covered = vec![false; n + 1];
        for &(u, v) in &normalized {
            covered[u] = true;
            covered[v] = true;
        }
        if let Some(v) = (1..=n).find(|&v| !covered[v]) {
            return Err(GraphError::IsolatedVertex { v });
        }
        Ok(Self { n, edges: normalized })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (u, v) = (u.min(v), u.max(v));
        self.edges.contains(&(u, v))
    }

    /// Adjacency lists indexed `1..=n` (index 0 unused), neighbors ascending.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n + 1];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Connected components as ascending vertex lists, ordered by smallest
    /// vertex.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.n + 1];
        let mut comps = Vec::new();
        for start in 1..=self.n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Incidence matrix: one 0/1 row per edge, in edge order.
    pub fn incidence_matrix(&self) -> IntegerMatrix {
        let mut m = IntegerMatrix::zero(self.m(), self.n);
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            m.set(i, u - 1, BigInt::one());
            m.set(i, v - 1, BigInt::one());
        }
        m
    }

    /// Renames vertices by `relabeling[old] = new` (1-based permutation),
    /// keeping edge order.
    pub fn relabeled(&self, relabeling: &[usize]) -> Graph {
        let edges = self
            .edges
            .iter()
            .map(|&(u, v)| (relabeling[u], relabeling[v]))
            .collect();
        Graph::new(self.n, edges).expect("relabeling preserves validity")
    }

    pub fn bipartite_decomposition(&self) -> BipartiteDecomposition {
        bipartite::decompose(self)
    }

    /// All simple cycles of odd length, each once up to rotation and
    /// reflection. `cap` bounds the total number of simple cycles visited.
    pub fn enumerate_odd_cycles(&self, cap: usize) -> Result<Vec<Vec<usize>>, GraphError> {
        cycles::enumerate_odd_cycles(self, cap)
    }

    /// Searches for two vertex-disjoint odd cycles; returns the first such
    /// pair in enumeration order.
    pub fn two_disjoint_odd_cycles(&self, cap: usize) -> Result<Option<OddCyclePair>, GraphError> {
        cycles::two_disjoint_odd_cycles(self, cap)
    }

    /// Edge-polytope normality criterion for connected graphs: holds iff
    /// every vertex-disjoint pair of odd cycles is joined by an edge.
    /// Returns `None` when the criterion holds, otherwise an unbridged pair.
    pub fn ohsugi_hibi_criterion(&self, cap: usize) -> Result<Option<OddCyclePair>, GraphError> {
        cycles::ohsugi_hibi_criterion(self, cap)
    }
}

/// Parses the edge-list text format: first line `n m`, then `m` lines `u v`.
/// `#` starts a comment; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut n = 0usize;
    let mut m = 0usize;
    let mut header_seen = false;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<usize> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GraphError::Malformed {
                line: line_no,
                reason: format!("expected two integers, got {} fields", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<usize, GraphError> {
            s.parse().map_err(|_| GraphError::Malformed {
                line: line_no,
                reason: format!("invalid integer `{s}`"),
            })
        };
        let (a, b) = (parse(fields[0])?, parse(fields[1])?);
        if !header_seen {
            n = a;
            m = b;
            header_seen = true;
        } else {
            edges.push((a, b));
            edge_lines.push(line_no);
        }
    }
    if !header_seen {
        return Err(GraphError::Malformed {
            line: 1,
            reason: "missing `n m` header".into(),
        });
    }
    if edges.len() != m {
        return Err(GraphError::Malformed {
            line: edge_lines.last().copied().unwrap_or(1),
            reason: format!("header promises {m} edges, found {}", edges.len()),
        });
    }
    // re-map validation errors onto source line numbers
    Graph::new(n, edges).map_err(|e| match e {
        GraphError::LoopEdge { line, v } => GraphError::LoopEdge {
            line: edge_lines[line - 1],
            v,
        },
        GraphError::DuplicateEdge { line, u, v } => GraphError::DuplicateEdge {
            line: edge_lines[line - 1],
            u,
            v,
        },
        GraphError::OutOfRange { line, v, n } => GraphError::OutOfRange {
            line: edge_lines[line - 1],
            v,
            n,
        },
        other => other,
    })
}

/// Writes the edge-list text format accepted by [`parse_edge_list`].
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Built-in graph families.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphFamily {
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Odd cycles of lengths `2k+1` and `2l+1` joined by a single bridge edge.
    Dumbbell(usize, usize),
    Random { n: usize, p: f64, seed: u64 },
}

/// Deterministically generates a member of a graph family.
pub fn generate(family: &GraphFamily) -> Result<Graph, GraphError> {
    match *family {
        GraphFamily::Cycle(n) => {
            if n < 3 {
                return Err(GraphError::InvalidFamily(format!("cycle({n}) needs n >= 3")));
            }
            let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
            edges.push((1, n));
            Graph::new(n, edges)
        }
        GraphFamily::Complete(n) => {
            if n < 2 {
                return Err(GraphError::InvalidFamily(format!(
                    "complete({n}) needs n >= 2"
                )));
            }
            let edges = (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .collect();
            Graph::new(n, edges)
        }
        GraphFamily::CompleteBipartite(a, b) => {
            if a < 1 || b < 1 {
                return Err(GraphError::InvalidFamily(format!(
                    "complete_bipartite({a},{b}) needs both sides nonempty"
                )));
            }
            let edges = (1..=a)
                .flat_map(|i| (1..=b).map(move |j| (i, a + j)))
                .collect();
            Graph::new(a + b, edges)
        }
        GraphFamily::Dumbbell(k, l) => {
            if k < 1 || l < 1 {
                return Err(GraphError::InvalidFamily(format!(
                    "dumbbell({k},{l}) needs k, l >= 1"
                )));
            }
            let n1 = 2 * k + 1;
            let n = n1 + 2 * l + 1;
            let mut edges: Vec<(usize, usize)> = (1..n1).map(|i| (i, i + 1)).collect();
            edges.push((1, n1));
            edges.extend((n1 + 1..n).map(|i| (i, i + 1)));
            edges.push((n1 + 1, n));
            edges.push((n1, n1 + 1)); // bridge
            Graph::new(n, edges)
        }
        GraphFamily::Random { n, p, seed } => {
            if n < 2 || !(0.0..=1.0).contains(&p) {
                return Err(GraphError::InvalidFamily(format!(
                    "random({n},{p},{seed}) needs n >= 2 and p in [0,1]"
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..10_000 {
                let mut edges = Vec::new();
                for i in 1..=n {
                    for j in i + 1..=n {
                        if rng.gen_bool(p) {
                            edges.push((i, j));
                        }
                    }
                }
                if edges.is_empty() {
                    continue;
                }
                if let Ok(g) = Graph::new(n, edges) {
                    return Ok(g);
                }
            }
            Err(GraphError::InvalidFamily(format!(
                "random({n},{p},{seed}): no isolated-vertex-free sample in 10000 attempts"
            )))
        }
    }
}

/// All connected simple graphs on exactly `n` labeled vertices, in edge-mask
/// order. Practical for `n <= 7`.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let count = pairs.len();
    assert!(count < 64, "vertex count too large for exhaustive enumeration");
    (1u64..(1u64 << count)).filter_map(move |mask| {
        let edges: Vec<(usize, usize)> = (0..count)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| pairs[b])
            .collect();
        let g = Graph::new(n, edges).ok()?;
        g.is_connected().then_some(g)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_six_vertex_example() {
        let g = parse_edge_list("6 5\n1 3\n3 4\n4 5\n1 5\n2 6\n").unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(
            g.edges(),
            &[(1, 3), (3, 4), (4, 5), (1, 5), (2, 6)]
        );
        let a = g.incidence_matrix();
        let expect = IntegerMatrix::from_rows(&[
            vec![1, 0, 1, 0, 0, 0],
            vec![0, 0, 1, 1, 0, 0],
            vec![0, 0, 0, 1, 1, 0],
            vec![1, 0, 0, 0, 1, 0],
            vec![0, 1, 0, 0, 0, 1],
        ]);
        assert_eq!(a, expect);
    }

    #[test]
    fn parse_single_edge() {
        let g = parse_edge_list("2 1\n1 2\n").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn parse_rejects_loop() {
        let err = parse_edge_list("3 2\n1 2\n1 1\n").unwrap_err();
        assert_eq!(err, GraphError::LoopEdge { line: 3, v: 1 });
    }

    #[test]
    fn parse_rejects_duplicate_and_isolated() {
        assert_eq!(
            parse_edge_list("3 2\n1 2\n2 1\n").unwrap_err(),
            GraphError::DuplicateEdge { line: 3, u: 1, v: 2 }
        );
        assert_eq!(
            parse_edge_list("3 1\n1 2\n").unwrap_err(),
            GraphError::IsolatedVertex { v: 3 }
        );
        assert_eq!(
            parse_edge_list("3 1\n1 4\n").unwrap_err(),
            GraphError::OutOfRange { line: 2, v: 4, n: 3 }
        );
    }

    #[test]
    fn parse_handles_comments() {
        let g = parse_edge_list("# triangle\n3 3\n1 2 # first\n\n2 3\n1 3\n").unwrap();
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn generate_families() {
        let k3 = generate(&GraphFamily::Cycle(3)).unwrap();
        assert_eq!(k3.edges(), &[(1, 2), (2, 3), (1, 3)]);
        let c4 = generate(&GraphFamily::CompleteBipartite(2, 2)).unwrap();
        assert_eq!(c4.m(), 4);
        assert!(c4.has_edge(1, 3) && c4.has_edge(2, 4) && !c4.has_edge(1, 2));
        let db = generate(&GraphFamily::Dumbbell(1, 1)).unwrap();
        assert_eq!(db.n(), 6);
        assert!(db.has_edge(3, 4));
        assert!(db.has_edge(1, 3) && db.has_edge(4, 6));
        assert!(generate(&GraphFamily::Cycle(2)).is_err());
    }

    #[test]
    fn random_generation_is_reproducible() {
        let fam = GraphFamily::Random { n: 8, p: 0.4, seed: 11 };
        let g1 = generate(&fam).unwrap();
        let g2 = generate(&fam).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn connected_enumeration_counts() {
        // labeled connected graph counts on 2, 3, 4 vertices
        assert_eq!(connected_graphs(2).count(), 1);
        assert_eq!(connected_graphs(3).count(), 4);
        assert_eq!(connected_graphs(4).count(), 38);
    }

    #[test]
    fn components_of_example_graph() {
        let g = parse_edge_list("6 5\n1 3\n3 4\n4 5\n1 5\n2 6\n").unwrap();
        let comps = g.connected_components();
        assert_eq!(comps, vec![vec![1, 3, 4, 5], vec![2, 6]]);
        assert!(!g.is_connected());
    }
}
