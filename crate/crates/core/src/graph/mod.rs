//! Simple undirected graphs with bit-set adjacency rows.

mod canon;
mod graph6;

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::algebra::IntMatrix;

pub use canon::{canonical, CanonicalForm, CANONICAL_MAX_ORDER};
pub use graph6::{decode_graph6, encode_graph6};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<FixedBitSet>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SrgParams {
    pub n: usize,
    pub r: usize,
    pub e: usize,
    pub f: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            adj: vec![FixedBitSet::with_capacity(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            g.add_edge(u, (u + 1) % n);
        }
        g
    }

    /// Panics on loops or out-of-range vertices.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "loop at vertex {u}");
        assert!(u < self.n && v < self.n, "vertex out of range");
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].set(v, false);
        self.adj[v].set(u, false);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].ones().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = if self.n == 0 { 0 } else { self.degree(0) };
        (0..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    /// Subgraph induced by `vertices`, relabelled in ascending original order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        let mut g = Graph::empty(vs.len());
        for (i, &u) in vs.iter().enumerate() {
            for (j, &v) in vs.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Relabel so that old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = FixedBitSet::with_capacity(self.n);
        let mut queue = VecDeque::from([0]);
        seen.insert(0);
        while let Some(u) = queue.pop_front() {
            let mut fresh = self.adj[u].clone();
            fresh.difference_with(&seen);
            for v in fresh.ones() {
                seen.insert(v);
                queue.push_back(v);
            }
        }
        seen.count_ones(..) == self.n
    }

    pub fn adjacency_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.n, self.n);
        for (u, v) in self.edges() {
            m.set(u, v, BigInt::one());
            m.set(v, u, BigInt::one());
        }
        m
    }

    fn common_neighbours(&self, u: usize, v: usize) -> usize {
        self.adj[u].intersection(&self.adj[v]).count()
    }

    /// Parameters `(n, r, e, f)` if the graph is connected, regular,
    /// non-complete and strongly regular.
    pub fn srg_params(&self) -> Option<SrgParams> {
        let r = self.regular_degree()?;
        if self.n < 3 || r + 1 >= self.n || !self.is_connected() {
            return None;
        }
        let mut e = None;
        let mut f = None;
        for u in 0..self.n {
            for v in u + 1..self.n {
                let c = self.common_neighbours(u, v);
                let slot = if self.has_edge(u, v) { &mut e } else { &mut f };
                match *slot {
                    None => *slot = Some(c),
                    Some(x) if x != c => return None,
                    _ => {}
                }
            }
        }
        // every vertex has r ≥ 1 neighbours, so some adjacent pair exists;
        // a non-complete graph has a non-adjacent pair.
        Some(SrgParams {
            n: self.n,
            r,
            e: e?,
            f: f?,
        })
    }

    pub fn to_graph6(&self) -> String {
        encode_graph6(self)
    }
}

/// Strong-regularity check; see [`Graph::srg_params`].
pub fn srg_check(g: &Graph) -> Option<SrgParams> {
    g.srg_params()
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {})", self.n, encode_graph6(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntMatrix;

    pub(crate) fn petersen() -> Graph {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, i + 5);
        }
        g
    }

    fn kts(t: usize, s: usize) -> Graph {
        let mut g = Graph::empty(t + s);
        for i in 0..t {
            for j in t..t + s {
                g.add_edge(i, j);
            }
        }
        g
    }

    #[test]
    fn regular_degree_examples() {
        assert_eq!(kts(3, 3).regular_degree(), Some(3));
        assert_eq!(kts(1, 2).regular_degree(), None);
    }

    #[test]
    fn induced_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(c4.induced_subgraph(&[1, 0]), Graph::complete(2));
        let p = petersen();
        assert_eq!(p.induced_subgraph(&[0, 1, 2, 3, 4]), Graph::cycle(5));
        assert_eq!(p.induced_subgraph(&(0..10).collect::<Vec<_>>()), p);
    }

    #[test]
    fn srg_examples() {
        assert_eq!(petersen().srg_params(), Some(SrgParams { n: 10, r: 3, e: 0, f: 1 }));
        assert_eq!(Graph::complete(5).srg_params(), None);
        assert_eq!(kts(3, 3).srg_params(), Some(SrgParams { n: 6, r: 3, e: 0, f: 3 }));
        assert_eq!(Graph::cycle(6).srg_params(), None);
        let mut two = Graph::empty(6);
        two.add_edge(0, 1);
        two.add_edge(1, 2);
        two.add_edge(0, 2);
        two.add_edge(3, 4);
        two.add_edge(4, 5);
        two.add_edge(3, 5);
        assert_eq!(two.srg_params(), None, "disconnected");
    }

    #[test]
    fn srg_identity_reverifies() {
        let p = petersen();
        let SrgParams { n, r, e, f } = p.srg_params().unwrap();
        let a = p.adjacency_matrix();
        let a2 = a.mul(&a);
        let mut expect = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = if i == j {
                    r
                } else if p.has_edge(i, j) {
                    e
                } else {
                    f
                };
                expect.set(i, j, BigInt::from(v));
            }
        }
        assert_eq!(a2, expect);
    }

    #[test]
    fn connectivity() {
        assert!(petersen().is_connected());
        assert!(!Graph::empty(2).is_connected());
        assert!(Graph::empty(1).is_connected());
    }
}
