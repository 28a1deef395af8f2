//! Canonical labelling by colour refinement and individualisation.
//!
//! The search tree is the usual one: refine to an equitable ordered
//! partition, individualise each vertex of the first non-singleton cell, and
//! recurse until the partition is discrete. Each leaf yields a relabelled
//! adjacency matrix; the least one (compared column by column over the
//! upper triangle) is canonical. Subtrees are skipped when a discovered
//! automorphism or a pair of twin vertices proves them equivalent to one
//! already explored.

use super::{encode_graph6, Graph};
use crate::error::{Error, Result};

pub const CANONICAL_MAX_ORDER: usize = 20;

/// Equality, ordering and hashing look at `bytes` only, so two forms compare
/// equal exactly when their graphs are isomorphic.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// graph6 text of the canonically labelled graph.
    pub bytes: Vec<u8>,
    /// `perm[v]` is the canonical label of vertex `v`.
    pub perm: Vec<usize>,
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.bytes == other.bytes
    }
}

impl Eq for CanonicalForm {}

impl std::hash::Hash for CanonicalForm {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.bytes.hash(h);
    }
}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.bytes.cmp(&other.bytes)
    }
}

impl CanonicalForm {
    pub fn graph6(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("graph6 is ASCII")
    }
}

pub fn canonical(g: &Graph) -> Result<CanonicalForm> {
    let n = g.order();
    if n > CANONICAL_MAX_ORDER {
        return Err(Error::TooLarge(format!(
            "canonical form limited to {CANONICAL_MAX_ORDER} vertices, graph has {n}"
        )));
    }
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbours(v).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut search = Search {
        n,
        adj,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let root = search.refine(vec![(0..n).collect()]);
    search.dfs(root, &mut Vec::new());
    let best = search.best.expect("at least one leaf");
    let perm = best.labeling;
    let canon = g.permuted(&perm);
    Ok(CanonicalForm {
        bytes: encode_graph6(&canon).into_bytes(),
        perm,
    })
}

struct Leaf {
    key: Vec<u32>,
    labeling: Vec<usize>,
    path: Vec<usize>,
}

struct Search {
    n: usize,
    adj: Vec<u32>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

type Partition = Vec<Vec<usize>>;

impl Search {
    fn cell_mask(cell: &[usize]) -> u32 {
        cell.iter().fold(0, |m, &v| m | 1 << v)
    }

    /// Split cells by neighbour counts into each splitter cell until the
    /// partition is equitable. New fragments are ordered by count.
    fn refine(&self, mut p: Partition) -> Partition {
        'outer: loop {
            for s in 0..p.len() {
                let mask = Self::cell_mask(&p[s]);
                for c in 0..p.len() {
                    if p[c].len() < 2 {
                        continue;
                    }
                    let counts: Vec<u32> = p[c].iter().map(|&v| (self.adj[v] & mask).count_ones()).collect();
                    if counts.iter().all(|&x| x == counts[0]) {
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> = counts.into_iter().zip(p[c].iter().copied()).collect();
                    keyed.sort_unstable();
                    let mut frags: Vec<Vec<usize>> = Vec::new();
                    let mut last = None;
                    for (k, v) in keyed {
                        if last != Some(k) {
                            frags.push(Vec::new());
                            last = Some(k);
                        }
                        frags.last_mut().unwrap().push(v);
                    }
                    p.splice(c..=c, frags);
                    continue 'outer;
                }
            }
            return p;
        }
    }

    fn leaf_of(&self, p: &Partition, path: &[usize]) -> Leaf {
        let mut labeling = vec![0; self.n];
        for (pos, cell) in p.iter().enumerate() {
            labeling[cell[0]] = pos;
        }
        let mut relabelled = vec![0u32; self.n];
        for v in 0..self.n {
            let mut row = 0u32;
            let mut m = self.adj[v];
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                row |= 1 << labeling[u];
            }
            relabelled[labeling[v]] = row;
        }
        // column j: bits for i < j, row 0 most significant
        let key = (0..self.n)
            .map(|j| {
                (0..j).fold(0u32, |acc, i| (acc << 1) | (relabelled[i] >> j & 1))
            })
            .collect();
        Leaf {
            key,
            labeling,
            path: path.to_vec(),
        }
    }

    fn automorphism(&self, a: &Leaf, b: &Leaf) -> Vec<usize> {
        // vertex with label k in `b` maps to vertex with label k in `a`
        let mut inv_a = vec![0; self.n];
        for (v, &l) in a.labeling.iter().enumerate() {
            inv_a[l] = v;
        }
        b.labeling.iter().map(|&l| inv_a[l]).collect()
    }

    fn common_prefix(a: &[usize], b: &[usize]) -> usize {
        a.iter().zip(b).take_while(|(x, y)| x == y).count()
    }

    fn same_orbit(&self, v: usize, tried: &[usize], fixed: &[usize]) -> bool {
        // union-find over the automorphisms that fix the current prefix
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for g in &self.autos {
            if fixed.iter().any(|&f| g[f] != f) {
                continue;
            }
            for (x, &y) in g.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }

    fn twins(&self, u: usize, v: usize) -> bool {
        let strip = !((1u32 << u) | (1u32 << v));
        self.adj[u] & strip == self.adj[v] & strip
    }

    /// Returns `Some(d)` to abandon every node deeper than `d`.
    fn dfs(&mut self, p: Partition, path: &mut Vec<usize>) -> Option<usize> {
        let Some(target) = p.iter().position(|c| c.len() > 1) else {
            let leaf = self.leaf_of(&p, path);
            let Some(first) = &self.first else {
                self.first = Some(self.leaf_of(&p, path));
                self.best = Some(leaf);
                return None;
            };
            if leaf.key == first.key {
                let g = self.automorphism(first, &leaf);
                let d = Self::common_prefix(&first.path, path);
                self.autos.push(g);
                return Some(d);
            }
            let best = self.best.as_ref().expect("best set with first");
            if leaf.key == best.key {
                let g = self.automorphism(best, &leaf);
                let d = Self::common_prefix(&best.path, path);
                self.autos.push(g);
                return Some(d);
            }
            if leaf.key < best.key {
                self.best = Some(leaf);
            }
            return None;
        };
        let depth = path.len();
        let cell = p[target].clone();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cell {
            if tried.iter().any(|&t| self.twins(t, v)) || self.same_orbit(v, &tried, path) {
                continue;
            }
            tried.push(v);
            let mut child = p.clone();
            let rest: Vec<usize> = cell.iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            let child = self.refine(child);
            path.push(v);
            let r = self.dfs(child, path);
            path.pop();
            if let Some(d) = r {
                if d < depth {
                    return Some(d);
                }
            }
        }
        None
    }
}
