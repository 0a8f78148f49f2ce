//! Cayley graphs of finite groups and their cut vertices.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::perm::PermRep;

/// Undirected graph without loops or parallel edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    /// Build from an edge list; loops are dropped and duplicates merged.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = alloc::vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidParams(alloc::format!(
                    "edge ({i}, {j}) out of range"
                )));
            }
            if i != j {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self { adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Edges `(i, j)` with `i < j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&j| j > i).map(|&j| (i, j)));
        }
        out
    }

    /// Connected components, ignoring the vertex `skip` if given.
    pub fn component_count(&self, skip: Option<usize>) -> usize {
        let n = self.adj.len();
        let mut seen = alloc::vec![false; n];
        if let Some(s) = skip {
            seen[s] = true;
        }
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = alloc::vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }
}

/// Cayley graph on the elements of a regular representation with edges
/// `{x, x g}` for the generators `gens` (indices into the alphabet).
pub fn build_cayley(r: &PermRep, gens: &[usize]) -> Result<SimpleGraph> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let rank = r.alphabet().len();
    if let Some(&index) = gens.iter().find(|&&g| g >= rank) {
        return Err(Error::AlphabetMismatch { index, rank });
    }
    if !r.is_regular() {
        return Err(Error::NotRegular);
    }
    let n = r.degree();
    let edges: Vec<(usize, usize)> = gens
        .iter()
        .flat_map(|&g| (0..n).map(move |x| (x, r.generator(g).apply(x))))
        .collect();
    SimpleGraph::new(n, &edges)
}

/// Cut vertices, in increasing order, by iterative depth-first low-link.
pub fn articulation_points(g: &SimpleGraph) -> Vec<usize> {
    let n = g.vertex_count();
    const UNSEEN: usize = usize::MAX;
    let mut disc = alloc::vec![UNSEEN; n];
    let mut low = alloc::vec![0usize; n];
    let mut is_cut = alloc::vec![false; n];
    let mut time = 0;
    // (vertex, parent, next neighbor position)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != UNSEEN {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        stack.push((root, UNSEEN, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, pos) = *top;
            if let Some(&w) = g.neighbors(v).get(pos) {
                top.2 += 1;
                if disc[w] == UNSEEN {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if parent != UNSEEN {
                    low[parent] = low[parent].min(low[v]);
                    if parent != root && low[v] >= disc[parent] {
                        is_cut[parent] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_force(g: &SimpleGraph) -> Vec<usize> {
        let base = g.component_count(None);
        (0..g.vertex_count())
            // Removing a vertex also removes it from the count, so an
            // isolated vertex lowers it by one.
            .filter(|&v| g.component_count(Some(v)) > base - usize::from(g.degree(v) == 0))
            .collect()
    }

    #[test]
    fn fixtures() {
        let path = SimpleGraph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(articulation_points(&path), [1]);
        let cycle = SimpleGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(articulation_points(&cycle).is_empty());
        // Two triangles sharing vertex 2.
        let bowtie =
            SimpleGraph::new(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]).unwrap();
        assert_eq!(articulation_points(&bowtie), [2]);
        let star = SimpleGraph::new(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(articulation_points(&star), [0]);
        assert!(articulation_points(&SimpleGraph::new(0, &[]).unwrap()).is_empty());
    }

    #[test]
    fn loops_and_parallel_edges_collapse() {
        let g = SimpleGraph::new(2, &[(0, 0), (0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edges(), [(0, 1)]);
        assert!(SimpleGraph::new(2, &[(0, 2)]).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn matches_delete_and_recount(
            n in 1usize..=12,
            raw in prop::collection::vec((0usize..12, 0usize..12), 0..30),
        ) {
            let edges: Vec<(usize, usize)> = raw.into_iter().map(|(i, j)| (i % n, j % n)).collect();
            let g = SimpleGraph::new(n, &edges).unwrap();
            prop_assert_eq!(articulation_points(&g), brute_force(&g));
        }
    }
}
