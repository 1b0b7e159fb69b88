//! Connected-component and bipartition analysis with the vertex relabeling
//! used by the full-dimensionalization transforms.

use super::Graph;

/// Components of a graph, the bipartitions of its bipartite components, and
/// the normalizing relabeling.
///
/// After applying `relabeling`, the graph satisfies: vertex `i` lies in part 1
/// of bipartite component `i` for `i = 1..=k`, and vertex `k+1` lies in part 2
/// of bipartite component 1 (when `k >= 1`). Recomputing the decomposition of
/// the relabeled graph yields the identity relabeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteDecomposition {
    components: Vec<Vec<usize>>,
    bipartite_components: Vec<(Vec<usize>, Vec<usize>)>,
    relabeling: Vec<usize>,
}

impl BipartiteDecomposition {
    /// All connected components (ascending vertex lists, ordered by smallest
    /// vertex), bipartite components first.
    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// Bipartitions `(part1, part2)` of the bipartite components, in
    /// component order; part 1 contains the component's smallest vertex.
    pub fn bipartite_components(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.bipartite_components
    }

    /// The number of connected bipartite components.
    pub fn c0(&self) -> usize {
        self.bipartite_components.len()
    }

    /// Normalizing permutation, 1-based: `relabeling()[old] = new`.
    pub fn relabeling(&self) -> &[usize] {
        &self.relabeling
    }

    pub fn is_identity_relabeling(&self) -> bool {
        self.relabeling.iter().enumerate().skip(1).all(|(i, &v)| i == v)
    }

    /// The relabeled graph (edge order preserved).
    pub fn apply_relabeling(&self, g: &Graph) -> Graph {
        g.relabeled(&self.relabeling)
    }
}

pub(super) fn decompose(g: &Graph) -> BipartiteDecomposition {
    let n = g.n();
    let adj = g.adjacency();

    // 2-color each component by BFS from its smallest vertex; color 0 is the
    // part containing that vertex
    let mut color = vec![usize::MAX; n + 1];
    let mut comp_id = vec![usize::MAX; n + 1];
    let mut raw_components: Vec<Vec<usize>> = Vec::new();
    let mut is_bipartite: Vec<bool> = Vec::new();
    for start in 1..=n {
        if comp_id[start] != usize::MAX {
            continue;
        }
        let id = raw_components.len();
        let mut queue = std::collections::VecDeque::from([start]);
        comp_id[start] = id;
        color[start] = 0;
        let mut verts = vec![start];
        let mut bip = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if comp_id[w] == usize::MAX {
                    comp_id[w] = id;
                    color[w] = color[v] ^ 1;
                    verts.push(w);
                    queue.push_back(w);
                } else if color[w] == color[v] {
                    bip = false;
                }
            }
        }
        verts.sort_unstable();
        raw_components.push(verts);
        is_bipartite.push(bip);
    }

    // bipartite components first, otherwise by smallest vertex
    let mut order: Vec<usize> = (0..raw_components.len()).collect();
    order.sort_by_key(|&i| (!is_bipartite[i], raw_components[i][0]));
    let components: Vec<Vec<usize>> = order.iter().map(|&i| raw_components[i].clone()).collect();
    let bipartite_components: Vec<(Vec<usize>, Vec<usize>)> = order
        .iter()
        .filter(|&&i| is_bipartite[i])
        .map(|&i| {
            let part1: Vec<usize> = raw_components[i]
                .iter()
                .copied()
                .filter(|&v| color[v] == color[raw_components[i][0]])
                .collect();
            let part2: Vec<usize> = raw_components[i]
                .iter()
                .copied()
                .filter(|&v| color[v] != color[raw_components[i][0]])
                .collect();
            (part1, part2)
        })
        .collect();

    // normalizing relabeling: representatives of parts 1 get labels 1..=k,
    // the smallest vertex of component 1's part 2 gets label k+1, everything
    // else follows in ascending old-label order
    let k = bipartite_components.len();
    let mut relabeling = vec![0usize; n + 1];
    let mut next = 1usize;
    let mut assigned = vec![false; n + 1];
    for (part1, _) in &bipartite_components {
        relabeling[part1[0]] = next;
        assigned[part1[0]] = true;
        next += 1;
    }
    if k >= 1 {
        let v = bipartite_components[0].1[0];
        relabeling[v] = next;
        assigned[v] = true;
        next += 1;
    }
    for v in 1..=n {
        if !assigned[v] {
            relabeling[v] = next;
            next += 1;
        }
    }

    BipartiteDecomposition {
        components,
        bipartite_components,
        relabeling,
    }
}
