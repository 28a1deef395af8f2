//! Named graphs with their expected spectra and star complements.
//!
//! `G1`, `G2`, `G3` and `Clebsch` have no edge list to copy; they are the
//! search results for `K_{3,3}` and `K_{1,5}` at `μ = 1`, picked by order.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::Serialize;

use crate::algebra::{AlgebraicNumber, IntPolynomial, RootSign};
use crate::engine::{complete_bipartite, make_context, search_star_sets, SearchOptions, StarSolution};
use crate::error::{Error, Result};
use crate::graph::{Graph, SrgParams};
use crate::kts::build_gr;

/// Eigenvalues with multiplicities; all irrational entries share one field.
pub type Spectrum = Vec<(AlgebraicNumber, usize)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphName {
    G1,
    G2,
    G3,
    G4,
    G5,
    C3,
    C5,
    Petersen,
    Knn(usize),
    Kts(usize, usize),
    Gr(usize, usize, usize),
    Clebsch,
}

/// Every parameter-free name, plus one representative of each family.
pub const FIXTURE_NAMES: &[&str] = &[
    "G1", "G2", "G3", "G4", "G5", "C3", "C5", "Petersen", "Knn(4)", "Kts(2,3)", "Gr(2,3,4)", "Clebsch",
];

impl fmt::Display for GraphName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphName::Knn(n) => write!(f, "Knn({n})"),
            GraphName::Kts(t, s) => write!(f, "Kts({t},{s})"),
            GraphName::Gr(t, s, r) => write!(f, "Gr({t},{s},{r})"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for GraphName {
    type Err = Error;

    /// `G1`…`G5`, `C3`, `C5`, `Petersen`, `Clebsch`, `Knn(n)`, `Kts(t,s)`,
    /// `Gr(t,s,r)`.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownName(s.clone());
        let plain = match s.as_str() {
            "G1" => Some(GraphName::G1),
            "G2" => Some(GraphName::G2),
            "G3" => Some(GraphName::G3),
            "G4" => Some(GraphName::G4),
            "G5" => Some(GraphName::G5),
            "C3" => Some(GraphName::C3),
            "C5" => Some(GraphName::C5),
            "Petersen" => Some(GraphName::Petersen),
            "Clebsch" => Some(GraphName::Clebsch),
            _ => None,
        };
        if let Some(p) = plain {
            return Ok(p);
        }
        let (head, rest) = s.split_once('(').ok_or_else(unknown)?;
        let args: Vec<usize> = rest
            .strip_suffix(')')
            .ok_or_else(unknown)?
            .split(',')
            .map(|a| a.parse().map_err(|_| unknown()))
            .collect::<Result<_>>()?;
        match (head, args.as_slice()) {
            ("Knn", &[n]) if n >= 1 => Ok(GraphName::Knn(n)),
            ("Kts", &[t, s]) if s >= t && t >= 1 => Ok(GraphName::Kts(t, s)),
            ("Gr", &[t, s, r]) => Ok(GraphName::Gr(t, s, r)),
            _ => Err(unknown()),
        }
    }
}

/// A star complement `H = G − X` for `μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StarData {
    pub h: String,
    pub mu: AlgebraicNumber,
    pub star_set: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct NamedGraphEntry {
    pub name: String,
    #[serde(skip)]
    pub graph: Graph,
    pub graph6: String,
    pub order: usize,
    pub degree: Option<usize>,
    /// `None` for `Gr`, whose spectrum is not given in closed form.
    pub expected_spectrum: Option<Spectrum>,
    pub expected_srg: Option<SrgParams>,
    pub star_data: StarData,
}

fn int(n: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_int(n)
}

fn ints(spec: &[(i64, usize)]) -> Spectrum {
    spec.iter().map(|&(l, m)| (int(l), m)).collect()
}

fn golden() -> AlgebraicNumber {
    AlgebraicNumber::quadratic_root(-1, 1, RootSign::Pos).expect("real root")
}

fn k33_sweep() -> &'static [StarSolution] {
    static CELL: OnceLock<Vec<StarSolution>> = OnceLock::new();
    CELL.get_or_init(|| {
        let ctx = make_context(complete_bipartite(3, 3), int(1), Some((3, 3))).expect("valid context");
        search_star_sets(&ctx, &SearchOptions::sweep()).expect("bounded search")
    })
}

fn k15_sweep() -> &'static [StarSolution] {
    static CELL: OnceLock<Vec<StarSolution>> = OnceLock::new();
    CELL.get_or_init(|| {
        let ctx = make_context(complete_bipartite(1, 5), int(1), Some((1, 5))).expect("valid context");
        search_star_sets(&ctx, &SearchOptions::sweep()).expect("bounded search")
    })
}

fn by_order(sols: &[StarSolution], n: usize) -> Graph {
    sols.iter()
        .find(|s| s.order() == n)
        .unwrap_or_else(|| panic!("no search result of order {n}"))
        .graph
        .clone()
}

fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, i + 5);
    }
    g
}

/// `K_{6,6}` on `v1..v6 = 0..6`, `w1..w6 = 6..12`, then `u1, u2, …` with
/// `N_H(u)` listed by index `i` meaning both `v_i` and `w_i`.
fn k66_extension(neighbourhoods: &[[usize; 4]], x_edges: &[(usize, usize)]) -> Graph {
    let mut g = Graph::empty(12 + neighbourhoods.len());
    for v in 0..6 {
        for w in 6..12 {
            g.add_edge(v, w);
        }
    }
    for (k, nb) in neighbourhoods.iter().enumerate() {
        for &i in nb {
            g.add_edge(12 + k, i - 1);
            g.add_edge(12 + k, 6 + i - 1);
        }
    }
    for &(a, b) in x_edges {
        g.add_edge(12 + a - 1, 12 + b - 1);
    }
    g
}

fn g4() -> Graph {
    k66_extension(&[[1, 2, 3, 4], [3, 4, 5, 6], [1, 2, 5, 6]], &[])
}

fn g5() -> Graph {
    k66_extension(
        &[
            [1, 2, 3, 4],
            [2, 3, 4, 5],
            [3, 4, 5, 6],
            [1, 4, 5, 6],
            [1, 2, 5, 6],
            [1, 2, 3, 6],
        ],
        &[(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 1)],
    )
}

pub fn named_graph(name: &str) -> Result<Graph> {
    Ok(entry(name)?.graph)
}

pub fn expected_spectrum(name: &str) -> Result<Option<Spectrum>> {
    Ok(entry(name)?.expected_spectrum)
}

pub fn entry(name: &str) -> Result<NamedGraphEntry> {
    build(name.parse()?)
}

fn star(h: &str, mu: AlgebraicNumber, star_set: impl IntoIterator<Item = usize>) -> StarData {
    StarData {
        h: h.to_string(),
        mu,
        star_set: star_set.into_iter().collect(),
    }
}

pub fn build(name: GraphName) -> Result<NamedGraphEntry> {
    use GraphName::*;
    let (graph, spectrum, srg, star_data) = match name {
        G1 => (
            by_order(k33_sweep(), 9),
            Some(ints(&[(-3, 1), (-2, 2), (0, 2), (1, 3), (4, 1)])),
            None,
            star("K_{3,3}", int(1), 6..9),
        ),
        G2 => (
            by_order(k33_sweep(), 12),
            Some(ints(&[(-3, 3), (-1, 2), (1, 6), (5, 1)])),
            None,
            star("K_{3,3}", int(1), 6..12),
        ),
        G3 => (
            by_order(k33_sweep(), 15),
            Some(ints(&[(-3, 5), (1, 9), (6, 1)])),
            Some(SrgParams { n: 15, r: 6, e: 1, f: 3 }),
            star("K_{3,3}", int(1), 6..15),
        ),
        G4 => (
            g4(),
            Some(ints(&[(-6, 1), (-2, 3), (0, 8), (2, 2), (8, 1)])),
            None,
            star("K_{6,6}", int(-2), 12..15),
        ),
        G5 => (
            g5(),
            Some(ints(&[(-6, 1), (-2, 6), (0, 6), (1, 2), (3, 2), (10, 1)])),
            None,
            star("K_{6,6}", int(-2), 12..18),
        ),
        C3 => (
            Graph::complete(3),
            Some(ints(&[(-1, 2), (2, 1)])),
            None,
            star("K_1", int(-1), 1..3),
        ),
        C5 => {
            let phi = golden();
            let psi = &int(-1) - &phi;
            (
                Graph::cycle(5),
                Some(vec![(int(2), 1), (phi.clone(), 2), (psi, 2)]),
                Some(SrgParams { n: 5, r: 2, e: 0, f: 1 }),
                star("K_{1,2}", phi, 3..5),
            )
        }
        Petersen => (
            petersen(),
            Some(ints(&[(-2, 4), (1, 5), (3, 1)])),
            Some(SrgParams { n: 10, r: 3, e: 0, f: 1 }),
            star("C_5", int(1), 5..10),
        ),
        Knn(n) => (
            complete_bipartite(n, n),
            Some(if n == 1 {
                ints(&[(-1, 1), (1, 1)])
            } else {
                ints(&[(-(n as i64), 1), (0, 2 * n - 2), (n as i64, 1)])
            }),
            (n >= 2).then_some(SrgParams { n: 2 * n, r: n, e: 0, f: n }),
            star("K_2", int(0), (1..2 * n).filter(|&v| v != n)),
        ),
        Kts(t, s) => {
            let root = AlgebraicNumber::quadratic_root(-((t * s) as i64), 0, RootSign::Pos)?;
            let mut spec = vec![(-&root, 1), (root, 1)];
            if t + s > 2 {
                spec.insert(1, (int(0), t + s - 2));
            }
            (
                complete_bipartite(t, s),
                Some(spec),
                (t == s && t >= 2).then_some(SrgParams { n: 2 * t, r: t, e: 0, f: t }),
                star("K_2", int(0), (1..t + s).filter(|&v| v != t)),
            )
        }
        Gr(t, s, r) => {
            let sol = build_gr(t, s, r)?;
            let x = sol.star_vertices();
            (sol.graph, None, None, star(&format!("K_{{{t},{s}}}"), int(-1), x))
        }
        Clebsch => (
            by_order(k15_sweep(), 16),
            Some(ints(&[(-3, 5), (1, 10), (5, 1)])),
            Some(SrgParams { n: 16, r: 5, e: 0, f: 2 }),
            star("K_{1,5}", int(1), 6..16),
        ),
    };
    Ok(NamedGraphEntry {
        name: name.to_string(),
        graph6: graph.to_graph6(),
        order: graph.order(),
        degree: graph.regular_degree(),
        graph,
        expected_spectrum: spectrum,
        expected_srg: srg,
        star_data,
    })
}

/// `∏ (x − λ)^m` compared coefficientwise with an integer polynomial.
pub fn spectrum_matches(poly: &IntPolynomial, spectrum: &Spectrum) -> bool {
    let mut prod = vec![AlgebraicNumber::one()];
    for (lambda, m) in spectrum {
        for _ in 0..*m {
            let mut next = vec![AlgebraicNumber::zero(); prod.len() + 1];
            for (i, c) in prod.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &(c * lambda);
            }
            prod = next;
        }
    }
    let coeffs = poly.coeffs();
    prod.len() == coeffs.len()
        && prod
            .iter()
            .zip(coeffs)
            .all(|(p, c)| *p == AlgebraicNumber::from_bigint(c.clone()))
}
