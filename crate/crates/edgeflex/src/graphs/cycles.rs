//! Simple-cycle enumeration and the odd-cycle pair criteria.

use super::{Graph, GraphError};

/// Two vertex-disjoint odd cycles, with a flag recording whether some edge of
/// the graph joins them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddCyclePair {
    pub cycle1: Vec<usize>,
    pub cycle2: Vec<usize>,
    pub bridged: bool,
}

impl OddCyclePair {
    pub fn new(g: &Graph, cycle1: Vec<usize>, cycle2: Vec<usize>) -> Self {
        let bridged = cycle1
            .iter()
            .any(|&u| cycle2.iter().any(|&v| g.has_edge(u, v)));
        Self { cycle1, cycle2, bridged }
    }

    pub fn is_vertex_disjoint(&self) -> bool {
        self.cycle1.iter().all(|v| !self.cycle2.contains(v))
    }
}

/// Enumerates all simple cycles, reporting the odd ones. Each cycle appears
/// once, rooted at its smallest vertex, direction fixed by `path[1] <
/// path[last]`. `cap` bounds the number of simple cycles of any parity
/// visited; exceeding it is an error, never a truncation.
pub(super) fn enumerate_odd_cycles(
    g: &Graph,
    cap: usize,
) -> Result<Vec<Vec<usize>>, GraphError> {
    let adj = g.adjacency();
    let mut odd = Vec::new();
    let mut visited_cycles = 0usize;
    let mut on_path = vec![false; g.n() + 1];
    let mut path = Vec::new();

    // iterative DFS rooted at each vertex, exploring labels above the root
    for root in 1..=g.n() {
        path.clear();
        path.push(root);
        on_path[root] = true;
        // stack of neighbor cursors parallel to `path`
        let mut cursors: Vec<usize> = vec![0];
        while let Some(&v) = path.last() {
            let ci = cursors.last_mut().expect("cursor per path entry");
            if *ci < adj[v].len() {
                let w = adj[v][*ci];
                *ci += 1;
                if w == root && path.len() >= 3 {
                    if path[1] < path[path.len() - 1] {
                        visited_cycles += 1;
                        if visited_cycles > cap {
                            return Err(GraphError::CycleCapExceeded { cap });
                        }
                        if path.len() % 2 == 1 {
                            odd.push(path.clone());
                        }
                    }
                } else if w > root && !on_path[w] {
                    path.push(w);
                    on_path[w] = true;
                    cursors.push(0);
                }
            } else {
                on_path[v] = false;
                path.pop();
                cursors.pop();
            }
        }
    }
    Ok(odd)
}

pub(super) fn two_disjoint_odd_cycles(
    g: &Graph,
    cap: usize,
) -> Result<Option<OddCyclePair>, GraphError> {
    let odd = enumerate_odd_cycles(g, cap)?;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            if odd[i].iter().all(|v| !odd[j].contains(v)) {
                return Ok(Some(OddCyclePair::new(g, odd[i].clone(), odd[j].clone())));
            }
        }
    }
    Ok(None)
}

pub(super) fn ohsugi_hibi_criterion(
    g: &Graph,
    cap: usize,
) -> Result<Option<OddCyclePair>, GraphError> {
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let odd = enumerate_odd_cycles(g, cap)?;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            if odd[i].iter().all(|v| !odd[j].contains(v)) {
                let pair = OddCyclePair::new(g, odd[i].clone(), odd[j].clone());
                if !pair.bridged {
                    return Ok(Some(pair));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{generate, Graph, GraphFamily};

    const CAP: usize = 100_000;

    #[test]
    fn five_cycle_has_one_odd_cycle() {
        let g = generate(&GraphFamily::Cycle(5)).unwrap();
        let odd = g.enumerate_odd_cycles(CAP).unwrap();
        assert_eq!(odd, vec![vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn bipartite_graph_has_no_odd_cycles() {
        let g = generate(&GraphFamily::CompleteBipartite(3, 3)).unwrap();
        assert!(g.enumerate_odd_cycles(CAP).unwrap().is_empty());
    }

    #[test]
    fn k4_has_four_odd_cycles() {
        // brute-force oracle says K4 carries 7 simple cycles, 4 of them odd
        let g = generate(&GraphFamily::Complete(4)).unwrap();
        let odd = g.enumerate_odd_cycles(CAP).unwrap();
        assert_eq!(odd.len(), 4);
        assert!(odd.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn k5_cycle_counts() {
        // oracle: 37 simple cycles total, 22 odd (10 triangles, 12 five-cycles)
        let g = generate(&GraphFamily::Complete(5)).unwrap();
        let odd = g.enumerate_odd_cycles(CAP).unwrap();
        assert_eq!(odd.len(), 22);
        assert_eq!(odd.iter().filter(|c| c.len() == 3).count(), 10);
        assert_eq!(odd.iter().filter(|c| c.len() == 5).count(), 12);
        assert!(matches!(
            g.enumerate_odd_cycles(10),
            Err(GraphError::CycleCapExceeded { cap: 10 })
        ));
    }

    #[test]
    fn disjoint_pair_in_dumbbell() {
        let g = generate(&GraphFamily::Dumbbell(1, 1)).unwrap();
        let pair = g.two_disjoint_odd_cycles(CAP).unwrap().unwrap();
        assert_eq!(pair.cycle1, vec![1, 2, 3]);
        assert_eq!(pair.cycle2, vec![4, 5, 6]);
        assert!(pair.bridged);
        assert!(pair.is_vertex_disjoint());
    }

    #[test]
    fn k5_has_no_disjoint_pair_k7_does() {
        let k5 = generate(&GraphFamily::Complete(5)).unwrap();
        assert!(k5.two_disjoint_odd_cycles(CAP).unwrap().is_none());
        let k7 = generate(&GraphFamily::Complete(7)).unwrap();
        let pair = k7.two_disjoint_odd_cycles(CAP).unwrap().unwrap();
        assert!(pair.is_vertex_disjoint());
        assert!(pair.bridged);
    }

    #[test]
    fn criterion_on_dumbbell_and_path_joined_triangles() {
        let db = generate(&GraphFamily::Dumbbell(1, 1)).unwrap();
        assert!(db.ohsugi_hibi_criterion(CAP).unwrap().is_none());

        // triangles 123 and 567 joined by the path 3-4-5: unbridged pair
        let g = Graph::new(
            7,
            vec![(1, 2), (1, 3), (2, 3), (5, 6), (5, 7), (6, 7), (3, 4), (4, 5)],
        )
        .unwrap();
        let pair = g.ohsugi_hibi_criterion(CAP).unwrap().unwrap();
        assert!(!pair.bridged);
        assert_eq!(pair.cycle1, vec![1, 2, 3]);
        assert_eq!(pair.cycle2, vec![5, 6, 7]);
    }

    #[test]
    fn criterion_is_vacuous_on_c5() {
        let g = generate(&GraphFamily::Cycle(5)).unwrap();
        assert!(g.ohsugi_hibi_criterion(CAP).unwrap().is_none());
    }

    #[test]
    fn criterion_rejects_disconnected() {
        let g = Graph::new(6, vec![(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)]).unwrap();
        assert_eq!(
            g.ohsugi_hibi_criterion(CAP).unwrap_err(),
            GraphError::Disconnected
        );
    }

    #[test]
    fn unbridged_pair_implies_disjoint_pair_exists() {
        for seed in 0..30 {
            let g = generate(&GraphFamily::Random { n: 8, p: 0.3, seed }).unwrap();
            if !g.is_connected() {
                continue;
            }
            if let Some(pair) = g.ohsugi_hibi_criterion(CAP).unwrap() {
                assert!(!pair.bridged);
                assert!(g.two_disjoint_odd_cycles(CAP).unwrap().is_some());
            }
        }
    }

    #[test]
    fn c0_matches_components_without_odd_cycles() {
        for seed in 0..30 {
            let g = generate(&GraphFamily::Random { n: 8, p: 0.25, seed }).unwrap();
            let d = g.bipartite_decomposition();
            let odd = g.enumerate_odd_cycles(CAP).unwrap();
            let comps = g.connected_components();
            let without_odd = comps
                .iter()
                .filter(|comp| {
                    !odd.iter().any(|c| comp.contains(&c[0]))
                })
                .count();
            assert_eq!(d.c0(), without_odd, "seed {seed}");
        }
    }
}
