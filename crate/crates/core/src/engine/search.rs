//! Backtracking search for star sets.
//!
//! Regular mode branches on the `H`-vertex with the fewest remaining
//! candidates that could still cover it, in the style of exact cover:
//! branch `i` includes the `i`-th option and excludes options `0..i`. Degree
//! deficits of the star-set vertices are tracked alongside and prune as soon
//! as too few adjacent candidates remain.

use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::candidates::{CandidateVector, CompatLabel};
use super::context::StarContext;
use super::verify::{verify_star_pair, Certificate};
use crate::error::{Error, Result};
use crate::graph::{canonical, CanonicalForm, Graph, CANONICAL_MAX_ORDER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegularMode {
    Degree(usize),
    Sweep,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// `None` enumerates maximal compatible sets instead.
    pub require_regular: Option<RegularMode>,
    pub max_x: Option<usize>,
    /// Cap on labelled solutions per degree, applied before deduplication.
    pub max_solutions: Option<usize>,
    /// Fix the first candidate up to the automorphisms of a tagged `K_{t,s}`.
    pub symmetry: bool,
    /// Apply the non-main filter in maximal mode. Regular mode applies it
    /// whenever `μ ≠ r`.
    pub non_main: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            require_regular: None,
            max_x: None,
            max_solutions: None,
            symmetry: true,
            non_main: false,
        }
    }
}

impl SearchOptions {
    pub fn regular(r: usize) -> Self {
        SearchOptions {
            require_regular: Some(RegularMode::Degree(r)),
            ..Default::default()
        }
    }

    pub fn sweep() -> Self {
        SearchOptions {
            require_regular: Some(RegularMode::Sweep),
            ..Default::default()
        }
    }

    pub fn with_max_x(mut self, max_x: usize) -> Self {
        self.max_x = Some(max_x);
        self
    }
}

#[derive(Clone, Debug)]
pub struct StarSolution {
    pub star_set: Vec<CandidateVector>,
    /// Graph on the star set, vertex `i` being `star_set[i]`.
    pub ax: Graph,
    /// `H` on vertices `0..q`, then the star set in candidate order.
    pub graph: Graph,
    pub canonical: Option<CanonicalForm>,
    pub certificate: Certificate,
}

impl StarSolution {
    pub fn order(&self) -> usize {
        self.graph.order()
    }

    pub fn star_vertices(&self) -> Vec<usize> {
        let q = self.graph.order() - self.star_set.len();
        (q..self.graph.order()).collect()
    }

    pub fn types(&self) -> Vec<Option<(usize, usize)>> {
        self.star_set.iter().map(|c| c.type_ab).collect()
    }

    fn key(&self) -> Vec<u8> {
        match &self.canonical {
            Some(c) => c.bytes.clone(),
            None => self.graph.to_graph6().into_bytes(),
        }
    }
}

/// Bound on `|X|` for `μ ∉ {−1, 0}` in terms of `q = |V(H)|`.
pub fn multiplicity_cap(q: usize) -> usize {
    if q <= 2 {
        q * (q + 1) / 2
    } else {
        (q + 1) * (q - 2) / 2
    }
}

/// Assemble `G` from `H` and a star set listed in output order.
pub fn assemble(ctx: &StarContext, star_set: &[CandidateVector]) -> (Graph, Graph) {
    let q = ctx.order();
    let k = star_set.len();
    let mut ax = Graph::empty(k);
    let mut g = Graph::empty(q + k);
    for (u, v) in ctx.h().edges() {
        g.add_edge(u, v);
    }
    for (i, c) in star_set.iter().enumerate() {
        for v in c.vertices() {
            g.add_edge(v, q + i);
        }
        for (j, d) in star_set.iter().enumerate().skip(i + 1) {
            if ctx.label(c, d) == CompatLabel::Adjacent {
                ax.add_edge(i, j);
                g.add_edge(q + i, q + j);
            }
        }
    }
    (ax, g)
}

/// Candidate-index relation tables shared by both search modes.
struct Tables {
    repeat: bool,
    compat: Vec<FixedBitSet>,
    adjacent: Vec<FixedBitSet>,
}

impl Tables {
    fn new(ctx: &StarContext, cands: &[CandidateVector]) -> Self {
        let m = cands.len();
        let repeat = ctx.mu_allows_duplicates();
        let mut compat = vec![FixedBitSet::with_capacity(m); m];
        let mut adjacent = vec![FixedBitSet::with_capacity(m); m];
        let rows: Vec<Vec<CompatLabel>> = (0..m)
            .into_par_iter()
            .map(|i| (0..m).map(|j| ctx.label(&cands[i], &cands[j])).collect())
            .collect();
        for (i, row) in rows.iter().enumerate() {
            for (j, label) in row.iter().enumerate() {
                if i == j && !repeat {
                    continue;
                }
                match label {
                    CompatLabel::Adjacent => {
                        compat[i].insert(j);
                        adjacent[i].insert(j);
                    }
                    CompatLabel::NonAdjacent => compat[i].insert(j),
                    CompatLabel::Incompatible => {}
                }
            }
        }
        Tables {
            repeat,
            compat,
            adjacent,
        }
    }
}

#[derive(Clone)]
struct State {
    chosen: Vec<usize>,
    need: Vec<i64>,
    deficit: Vec<i64>,
    available: FixedBitSet,
}

struct Regular<'a> {
    cands: &'a [CandidateVector],
    tables: Tables,
    cover: Vec<FixedBitSet>,
    r: i64,
    max_x: usize,
    limit: usize,
}

impl<'a> Regular<'a> {
    fn new(ctx: &StarContext, cands: &'a [CandidateVector], r: usize, max_x: usize, limit: usize) -> Self {
        let q = ctx.order();
        let m = cands.len();
        let mut cover = vec![FixedBitSet::with_capacity(m); q];
        for (i, c) in cands.iter().enumerate() {
            for v in c.vertices() {
                cover[v].insert(i);
            }
        }
        Regular {
            cands,
            tables: Tables::new(ctx, cands),
            cover,
            r: r as i64,
            max_x,
            limit,
        }
    }

    fn root(&self, ctx: &StarContext) -> Option<State> {
        let h = ctx.h();
        let need: Vec<i64> = (0..h.order()).map(|v| self.r - h.degree(v) as i64).collect();
        if need.iter().any(|&x| x < 0) {
            return None;
        }
        let mut available = FixedBitSet::with_capacity(self.cands.len());
        available.insert_range(..);
        for (v, &n) in need.iter().enumerate() {
            if n == 0 {
                available.difference_with(&self.cover[v]);
            }
        }
        Some(State {
            chosen: Vec::new(),
            need,
            deficit: Vec::new(),
            available,
        })
    }

    fn include(&self, st: &State, c: usize) -> Option<State> {
        let mut s = st.clone();
        for v in self.cands[c].vertices() {
            s.need[v] -= 1;
            match s.need[v] {
                n if n < 0 => return None,
                0 => s.available.difference_with(&self.cover[v]),
                _ => {}
            }
        }
        let mut dc = self.r - self.cands[c].weight() as i64;
        for (i, &x) in st.chosen.iter().enumerate() {
            if self.tables.adjacent[x].contains(c) {
                dc -= 1;
                s.deficit[i] -= 1;
                match s.deficit[i] {
                    d if d < 0 => return None,
                    0 => s.available.difference_with(&self.tables.adjacent[x]),
                    _ => {}
                }
            }
        }
        if dc < 0 {
            return None;
        }
        s.chosen.push(c);
        s.deficit.push(dc);
        if dc == 0 {
            s.available.difference_with(&self.tables.adjacent[c]);
        }
        s.available.intersect_with(&self.tables.compat[c]);
        if s.chosen.len() >= self.max_x {
            s.available.clear();
        }
        self.feasible(&s).then_some(s)
    }

    fn feasible(&self, s: &State) -> bool {
        let enough = |set: &FixedBitSet, want: i64| {
            let k = s.available.intersection(set).count() as i64;
            k > 0 && (self.tables.repeat || k >= want)
        };
        s.need
            .iter()
            .enumerate()
            .all(|(v, &n)| n == 0 || enough(&self.cover[v], n))
            && s.chosen
                .iter()
                .zip(&s.deficit)
                .all(|(&x, &d)| d == 0 || enough(&self.tables.adjacent[x], d))
    }

    fn dfs(&self, s: State, out: &mut Vec<Vec<usize>>) {
        if out.len() >= self.limit {
            return;
        }
        let branch = s
            .need
            .iter()
            .enumerate()
            .filter(|&(_, &n)| n > 0)
            .map(|(v, _)| (s.available.intersection(&self.cover[v]).count(), v))
            .min();
        let Some((_, v)) = branch else {
            if !s.chosen.is_empty() && s.deficit.iter().all(|&d| d == 0) {
                let mut x = s.chosen.clone();
                x.sort_unstable();
                out.push(x);
            }
            return;
        };
        let options: Vec<usize> = s.available.intersection(&self.cover[v]).collect();
        let mut st = s;
        for c in options {
            if let Some(next) = self.include(&st, c) {
                self.dfs(next, out);
                if out.len() >= self.limit {
                    return;
                }
            }
            st.available.set(c, false);
        }
    }
}

/// Orbits of candidates under the automorphisms of a tagged `K_{t,s}`:
/// one per type, with `(a, b)` and `(b, a)` merged when `t = s`.
fn orbits(ctx: &StarContext, cands: &[CandidateVector]) -> Vec<Vec<usize>> {
    let Some((t, s)) = ctx.tag() else {
        return vec![(0..cands.len()).collect()];
    };
    let mut keys: Vec<(usize, usize)> = Vec::new();
    let mut out: Vec<Vec<usize>> = Vec::new();
    for (i, c) in cands.iter().enumerate() {
        let (a, b) = c.type_ab.expect("tagged context");
        let key = if t == s { (a.min(b), a.max(b)) } else { (a, b) };
        match keys.iter().position(|&k| k == key) {
            Some(p) => out[p].push(i),
            None => {
                keys.push(key);
                out.push(vec![i]);
            }
        }
    }
    out
}

fn regular_raw(
    ctx: &StarContext,
    cands: &[CandidateVector],
    r: usize,
    max_x: usize,
    opts: &SearchOptions,
) -> Vec<Vec<CandidateVector>> {
    let fitting: Vec<CandidateVector> = cands.iter().filter(|c| c.weight() <= r).cloned().collect();
    let limit = opts.max_solutions.unwrap_or(usize::MAX);
    let problem = Regular::new(ctx, &fitting, r, max_x, limit);
    let Some(root) = problem.root(ctx) else {
        return Vec::new();
    };
    let tasks: Vec<(Option<usize>, FixedBitSet)> = if opts.symmetry && ctx.tag().is_some() {
        let mut excluded = FixedBitSet::with_capacity(fitting.len());
        let mut tasks = Vec::new();
        for orbit in orbits(ctx, &fitting) {
            tasks.push((Some(orbit[0]), excluded.clone()));
            for &i in &orbit {
                excluded.insert(i);
            }
        }
        tasks
    } else {
        vec![(None, FixedBitSet::with_capacity(fitting.len()))]
    };
    let found: Vec<Vec<Vec<usize>>> = tasks
        .into_par_iter()
        .map(|(forced, excluded)| {
            let mut st = root.clone();
            st.available.difference_with(&excluded);
            let mut out = Vec::new();
            match forced {
                Some(c) => {
                    if st.available.contains(c) {
                        if let Some(next) = problem.include(&st, c) {
                            problem.dfs(next, &mut out);
                        }
                    }
                }
                None => {
                    if problem.feasible(&st) {
                        problem.dfs(st, &mut out);
                    }
                }
            }
            out
        })
        .collect();
    found
        .into_iter()
        .flatten()
        .take(limit)
        .map(|x| x.into_iter().map(|i| fitting[i].clone()).collect())
        .collect()
}

/// Maximal compatible sets, each listed once in candidate order.
fn maximal_raw(
    ctx: &StarContext,
    cands: &[CandidateVector],
    max_x: usize,
    limit: usize,
) -> Vec<Vec<CandidateVector>> {
    let tables = Tables::new(ctx, cands);
    let m = cands.len();
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        tables: &Tables,
        ok: &FixedBitSet,
        start: usize,
        max_x: usize,
        limit: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if out.len() >= limit {
            return;
        }
        // `ok` holds every candidate compatible with all of `chosen`
        let extendable = ok.count_ones(..) > 0 && chosen.len() < max_x;
        if !extendable {
            if !chosen.is_empty() {
                out.push(chosen.clone());
            }
            return;
        }
        let next: Vec<usize> = ok.ones().filter(|&i| i >= start).collect();
        for i in next {
            let mut ok2 = ok.clone();
            ok2.intersect_with(&tables.compat[i]);
            chosen.push(i);
            let from = if tables.repeat { i } else { i + 1 };
            rec(tables, &ok2, from, max_x, limit, chosen, out);
            chosen.pop();
            if out.len() >= limit {
                return;
            }
        }
    }
    rec(&tables, &all, 0, max_x, limit, &mut chosen, &mut out);
    out.into_iter()
        .map(|x| x.into_iter().map(|i| cands[i].clone()).collect())
        .collect()
}

/// Enumerate graphs with `H` as a star complement for `μ`.
///
/// Results are deduplicated up to isomorphism when every graph has at most
/// [`CANONICAL_MAX_ORDER`] vertices, by labelled graph6 otherwise, and
/// sorted by order then by the deduplication key.
pub fn search_star_sets(ctx: &StarContext, opts: &SearchOptions) -> Result<Vec<StarSolution>> {
    let q = ctx.order();
    let max_x = if ctx.mu_allows_duplicates() {
        opts.max_x.ok_or(Error::Unbounded)?
    } else {
        opts.max_x.unwrap_or(usize::MAX).min(multiplicity_cap(q))
    };
    let raw = match opts.require_regular {
        None => {
            let cands = ctx.enumerate_candidates(opts.non_main)?;
            maximal_raw(ctx, &cands, max_x, opts.max_solutions.unwrap_or(usize::MAX))
        }
        Some(mode) => {
            let (lo, hi) = match mode {
                RegularMode::Degree(r) => (r, r),
                RegularMode::Sweep => {
                    let maxdeg = (0..q).map(|v| ctx.h().degree(v)).max().unwrap_or(0);
                    (maxdeg.max(1), q.saturating_add(max_x))
                }
            };
            let filtered = ctx.enumerate_candidates(true)?;
            let mu_int = ctx.mu().to_i64();
            let unfiltered = if (lo..=hi).any(|r| mu_int == Some(r as i64)) {
                Some(ctx.enumerate_candidates(false)?)
            } else {
                None
            };
            let per_r: Vec<Vec<Vec<CandidateVector>>> = (lo..=hi)
                .into_par_iter()
                .map(|r| {
                    let cands = if mu_int == Some(r as i64) {
                        unfiltered.as_deref().expect("computed above")
                    } else {
                        &filtered
                    };
                    regular_raw(ctx, cands, r, max_x, opts)
                })
                .collect();
            per_r.into_iter().flatten().collect()
        }
    };
    finish(ctx, raw)
}

fn finish(ctx: &StarContext, raw: Vec<Vec<CandidateVector>>) -> Result<Vec<StarSolution>> {
    let assembled: Vec<(Vec<CandidateVector>, Graph, Graph, Option<CanonicalForm>)> = raw
        .into_par_iter()
        .map(|x| {
            let (ax, g) = assemble(ctx, &x);
            let canon = (g.order() <= CANONICAL_MAX_ORDER).then(|| canonical(&g).expect("within cap"));
            (x, ax, g, canon)
        })
        .collect();
    let mut seen = HashSet::new();
    let unique: Vec<_> = assembled
        .into_iter()
        .filter(|(_, _, g, c)| {
            let key = match c {
                Some(c) => c.bytes.clone(),
                None => g.to_graph6().into_bytes(),
            };
            seen.insert(key)
        })
        .collect();
    let mut out: Vec<StarSolution> = unique
        .into_par_iter()
        .map(|(star_set, ax, graph, canonical)| {
            let certificate = verify_star_pair(&graph, &star_vertices(ctx.order(), star_set.len()), ctx.mu());
            StarSolution {
                star_set,
                ax,
                graph,
                canonical,
                certificate,
            }
        })
        .collect();
    out.sort_by_cached_key(|s| (s.order(), s.key()));
    Ok(out)
}

fn star_vertices(q: usize, k: usize) -> Vec<usize> {
    (q..q + k).collect()
}

/// `"canonical"` when every solution was deduplicated up to isomorphism.
pub fn dedupe_kind(solutions: &[StarSolution]) -> &'static str {
    if solutions.iter().all(|s| s.canonical.is_some()) {
        "canonical"
    } else {
        "labelled"
    }
}
