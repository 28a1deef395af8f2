use serde::Serialize;

use crate::algebra::{char_polynomial, field_rank, scaled_resolvent, AlgebraicNumber, FieldMatrix, IntPolynomial};
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub mu_not_eigenvalue_of_complement: bool,
    pub multiplicity: usize,
    pub star_set_size: usize,
    pub regular_degree: Option<usize>,
    pub char_poly: IntPolynomial,
    pub reconstruction_ok: bool,
    pub pass: bool,
}

/// Check that `X` is a star set for `μ` in `G`: `μ` is not an eigenvalue of
/// `G − X`, its multiplicity in `G` is `|X|`, and
/// `m(μ)(μI − A_X) = Bᵀ N B` holds exactly.
pub fn verify_star_pair(g: &Graph, x: &[usize], mu: &AlgebraicNumber) -> Certificate {
    let n = g.order();
    let mut xs = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    let well_formed = xs.len() == x.len() && xs.iter().all(|&v| v < n);
    xs.retain(|&v| v < n);
    let hv: Vec<usize> = (0..n).filter(|v| xs.binary_search(v).is_err()).collect();

    let a = g.adjacency_matrix();
    let char_poly = char_polynomial(&a);
    let multiplicity = n - field_rank(&FieldMatrix::shifted(&a, mu));

    let h = g.induced_subgraph(&hv);
    let (not_eigen, reconstruction_ok) = match scaled_resolvent(&h.adjacency_matrix(), mu) {
        Err(_) => (false, false),
        Ok((nmat, mval)) => {
            let field = mu.field();
            let mut b = FieldMatrix::zeros(hv.len(), xs.len(), field);
            for (i, &hvx) in hv.iter().enumerate() {
                for (j, &xv) in xs.iter().enumerate() {
                    if g.has_edge(hvx, xv) {
                        b.set(i, j, AlgebraicNumber::one());
                    }
                }
            }
            let rhs = b.transpose().mul(&nmat).mul(&b);
            let ax = g.induced_subgraph(&xs).adjacency_matrix();
            let lhs = FieldMatrix::shifted(&ax, mu).scale(&mval);
            let ok = (0..xs.len()).all(|i| (0..xs.len()).all(|j| lhs.get(i, j) == rhs.get(i, j)));
            (true, ok)
        }
    };
    Certificate {
        mu_not_eigenvalue_of_complement: not_eigen,
        multiplicity,
        star_set_size: xs.len(),
        regular_degree: g.regular_degree(),
        char_poly,
        reconstruction_ok,
        pass: well_formed && not_eigen && multiplicity == xs.len() && reconstruction_ok,
    }
}
