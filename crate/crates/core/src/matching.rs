//! Perfect matchings and the complementary 2-factor of a cubic graph.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::CubicGraph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    /// Member edge ids, ascending.
    pub edges: Vec<usize>,
}

impl Matching {
    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_perfect(&self, g: &CubicGraph) -> bool {
        self.edges.len() * 2 == g.n() && self.is_matching(g)
    }

    pub fn is_matching(&self, g: &CubicGraph) -> bool {
        let mut used = vec![false; g.n()];
        for &e in &self.edges {
            let (u, v) = g.endpoints(e);
            if used[u] || used[v] {
                return false;
            }
            used[u] = true;
            used[v] = true;
        }
        true
    }
}

/// One cycle of a 2-factor: `vertices[i]` and `vertices[i+1]` (cyclically)
/// are joined by `edges[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorCycle {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

/// Backtracking search that always extends the lowest unmatched vertex,
/// trying its incident edges in ascending id order. Deterministic for a fixed
/// graph.
pub fn perfect_matching(g: &CubicGraph) -> Result<Matching> {
    fn extend(g: &CubicGraph, matched: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        let Some(v) = matched.iter().position(|&b| !b) else {
            return true;
        };
        for e in g.incident(v) {
            let (a, b) = g.endpoints(e);
            let w = if a == v { b } else { a };
            if matched[w] {
                continue;
            }
            matched[v] = true;
            matched[w] = true;
            chosen.push(e);
            if !stranded(g, matched) && extend(g, matched, chosen) {
                return true;
            }
            chosen.pop();
            matched[v] = false;
            matched[w] = false;
        }
        false
    }

    // An unmatched vertex with no unmatched neighbour can never be covered.
    fn stranded(g: &CubicGraph, matched: &[bool]) -> bool {
        (0..g.n()).any(|v| {
            !matched[v]
                && g.incident(v).iter().all(|&e| {
                    let (a, b) = g.endpoints(e);
                    matched[if a == v { b } else { a }]
                })
        })
    }

    let mut matched = vec![false; g.n()];
    let mut chosen = Vec::with_capacity(g.n() / 2);
    if extend(g, &mut matched, &mut chosen) {
        chosen.sort_unstable();
        Ok(Matching { edges: chosen })
    } else {
        Err(Error::NoPerfectMatching)
    }
}

/// Decomposes the complement of a perfect matching into cycles. Each cycle
/// starts at its smallest vertex and leaves it along the smaller of its two
/// factor edges; cycles are listed by starting vertex.
pub fn two_factor_cycles(g: &CubicGraph, m: &Matching) -> Result<Vec<FactorCycle>> {
    if !m.is_perfect(g) {
        return Err(Error::MatchingNotPerfect { size: m.edges.len(), n: g.n() });
    }
    let factor_edges = |v: usize| -> [usize; 2] {
        let mut it = g.incident(v).into_iter().filter(|&e| !m.contains(e));
        let a = it.next().expect("two factor edges");
        let b = it.next().expect("two factor edges");
        [a, b]
    };
    let other = |e: usize, v: usize| {
        let (a, b) = g.endpoints(e);
        if a == v {
            b
        } else {
            a
        }
    };
    let mut seen = vec![false; g.n()];
    let mut cycles = Vec::new();
    for start in 0..g.n() {
        if seen[start] {
            continue;
        }
        let mut vertices = vec![start];
        let mut edges = Vec::new();
        seen[start] = true;
        let mut v = start;
        let mut via = factor_edges(start)[0];
        loop {
            edges.push(via);
            let w = other(via, v);
            if w == start {
                break;
            }
            seen[w] = true;
            vertices.push(w);
            let [a, b] = factor_edges(w);
            via = if a == via { b } else { a };
            v = w;
        }
        cycles.push(FactorCycle { vertices, edges });
    }
    Ok(cycles)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named_graph;

    #[test]
    fn k4_matching_is_lowest_first() {
        let g = named_graph("k4").unwrap();
        let m = perfect_matching(&g).unwrap();
        assert_eq!(m.edges, vec![0, 5]);
        let cycles = two_factor_cycles(&g, &m).unwrap();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices, vec![0, 2, 1, 3]);
        assert_eq!(cycles[0].edges, vec![1, 3, 4, 2]);
    }

    #[test]
    fn petersen_and_theta() {
        let g = named_graph("petersen").unwrap();
        let m = perfect_matching(&g).unwrap();
        assert_eq!(m.edges.len(), 5);
        let cycles = two_factor_cycles(&g, &m).unwrap();
        assert_eq!(cycles.iter().map(|c| c.vertices.len()).sum::<usize>(), 10);

        let t = named_graph("theta").unwrap();
        let m = perfect_matching(&t).unwrap();
        assert_eq!(m.edges, vec![0]);
        let cycles = two_factor_cycles(&t, &m).unwrap();
        assert_eq!(cycles, vec![FactorCycle { vertices: vec![0, 1], edges: vec![1, 2] }]);
    }

    #[test]
    fn non_perfect_matching_is_rejected() {
        let g = named_graph("k4").unwrap();
        let m = Matching { edges: vec![0] };
        assert!(matches!(two_factor_cycles(&g, &m), Err(Error::MatchingNotPerfect { size: 1, n: 4 })));
    }
}
