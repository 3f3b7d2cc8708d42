//! Simple undirected graphs on labeled vertices.
//!
//! Adjacency is stored as one bit row per vertex. Everything in this crate
//! works on orders up to [`MAX_ORDER`]; the exact algorithms carry tighter
//! guards of their own.

pub mod bitset;
pub mod canon;
pub mod degree;
pub mod enumerate;
pub mod graph6;

use std::fmt;

use crate::error::{Error, Result};

pub use bitset::VertexSet;
pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalForm, CANON_MAX_ORDER};
pub use degree::DegreeSequence;
pub use enumerate::{
    enumerate_graphs, enumerate_up_closed, GraphEnumerator, UpClosedEnumerator, ENUM_MAX_ORDER, UP_CLOSED_MAX_ORDER,
};
pub use graph6::{parse_graph6, read_graph6, write_graph6, ParseError};

pub const MAX_ORDER: usize = 1024;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ORDER, "graph order {n} exceeds {MAX_ORDER}");
        Graph { n, adj: vec![VertexSet::new(n); n] }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        if n > MAX_ORDER {
            return Err(Error::OrderTooLarge { n, limit: MAX_ORDER, what: "graphs" });
        }
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { v: u.max(v), n });
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph on `n <= 64` vertices from per-vertex neighbor masks.
    /// The masks must already be symmetric and loop-free.
    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        assert!(n <= 64);
        let g = Graph { n, adj: masks.iter().map(|&m| VertexSet::from_mask(n, m)).collect() };
        debug_assert!(g.check_invariants());
        g
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(VertexSet::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(VertexSet::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(VertexSet::len).max().unwrap_or(0)
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at {u}");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_complete(&self) -> bool {
        self.adj.iter().all(|row| row.len() + 1 == self.n)
    }

    pub fn complement(&self) -> Graph {
        let mut adj: Vec<VertexSet> = self.adj.iter().map(VertexSet::complement).collect();
        for (v, row) in adj.iter_mut().enumerate() {
            row.remove(v);
        }
        Graph { n: self.n, adj }
    }

    /// Relabels vertices so that old vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Subgraph induced by `keep`, vertices renumbered in increasing order.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let verts = keep.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in verts.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(verts.len());
        for (i, &v) in verts.iter().enumerate() {
            for w in self.adj[v].iter() {
                let j = index[w];
                if j != usize::MAX && j > i {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Neighbor masks, available when the graph fits in one word per row.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n <= 64).then(|| self.adj.iter().map(VertexSet::to_mask).collect())
    }

    pub fn degree_sequence(&self) -> DegreeSequence {
        DegreeSequence::from_graph(self)
    }

    /// Connected components, each listed once, ordered by lowest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::new(self.n);
            comp.insert(start);
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in self.adj[v].iter() {
                    if seen.insert(w) {
                        comp.insert(w);
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub(crate) fn check_invariants(&self) -> bool {
        self.adj.len() == self.n
            && (0..self.n).all(|v| {
                let row = &self.adj[v];
                row.universe() == self.n && !row.contains(v) && row.iter().all(|w| self.adj[w].contains(v))
            })
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Free-function form of [`Graph::degree_sequence`].
pub fn degree_sequence(g: &Graph) -> DegreeSequence {
    g.degree_sequence()
}

/// Free-function form of [`Graph::components`].
pub fn components(g: &Graph) -> Vec<VertexSet> {
    g.components()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert!(matches!(Graph::from_edges(3, [(1, 1)]), Err(Error::Loop(1))));
        assert!(matches!(Graph::from_edges(3, [(0, 3)]), Err(Error::VertexOutOfRange { v: 3, n: 3 })));
    }

    #[test]
    fn components_of_disjoint_cliques() {
        // K3 on {0,1,2} and K4 on {3,4,5,6}
        let mut g = Graph::empty(7);
        for (u, v) in complete(3).edges() {
            g.add_edge(u, v);
        }
        for (u, v) in complete(4).edges() {
            g.add_edge(u + 3, v + 3);
        }
        let comps = g.components();
        let sizes: Vec<_> = comps.iter().map(VertexSet::len).collect();
        assert_eq!(sizes, vec![3, 4]);
        assert_eq!(comps[0].to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn cycle_is_one_component() {
        assert_eq!(cycle(5).components().len(), 1);
        assert_eq!(Graph::empty(0).components().len(), 0);
    }

    #[test]
    fn complement_and_induced() {
        let c5 = cycle(5);
        let comp = c5.complement();
        // the complement of C5 is again a 5-cycle
        assert!(comp.degrees().iter().all(|&d| d == 2));
        assert!(comp.is_connected());
        let sub = c5.induced(&VertexSet::from_vertices(5, [0, 1, 2]));
        assert_eq!(sub.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = complete(6);
        assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.size());
        assert!(g.is_complete());
        assert!(g.check_invariants());
    }
}
