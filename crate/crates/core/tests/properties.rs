use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use starcomp::algebra::{char_polynomial, field_rank, scaled_resolvent, RootSign};
use starcomp::engine::make_context;
use starcomp::graph::{canonical, decode_graph6};
use starcomp::{AlgebraicNumber, FieldMatrix, Graph, IntMatrix};

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for j in 1..n {
                for i in 0..j {
                    if bits[k] {
                        g.add_edge(i, j);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn mu_strategy() -> impl Strategy<Value = AlgebraicNumber> {
    prop_oneof![
        (-4i64..=4).prop_map(AlgebraicNumber::from_int),
        Just(AlgebraicNumber::quadratic_root(-1, 1, RootSign::Pos).unwrap()),
        Just(AlgebraicNumber::quadratic_root(-2, 0, RootSign::Neg).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_is_transpose_invariant(rows in (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
    }), mu in mu_strategy()) {
        let m = FieldMatrix::from_int(&IntMatrix::from_rows(&rows), mu.field()).scale(&mu);
        prop_assert_eq!(field_rank(&m), field_rank(&m.transpose()));
    }

    #[test]
    fn resolvent_is_two_sided(g in graph_strategy(7), mu in mu_strategy()) {
        let a = g.adjacency_matrix();
        if let Ok((n, mval)) = scaled_resolvent(&a, &mu) {
            let shifted = FieldMatrix::shifted(&a, &mu);
            let left = n.mul(&shifted);
            let right = shifted.mul(&n);
            let k = g.order();
            for i in 0..k {
                for j in 0..k {
                    let want = if i == j { mval.clone() } else { AlgebraicNumber::zero() };
                    prop_assert_eq!(left.get(i, j), &want);
                    prop_assert_eq!(right.get(i, j), &want);
                }
            }
        } else {
            // μ is an eigenvalue: μI − A is singular
            prop_assert!(field_rank(&FieldMatrix::shifted(&a, &mu)) < g.order());
        }
    }

    #[test]
    fn pairing_is_symmetric(g in graph_strategy(8), mu in mu_strategy(), x in any::<u64>(), y in any::<u64>()) {
        if let Ok(ctx) = make_context(g.clone(), mu, None) {
            let mask = (1u64 << g.order()) - 1;
            prop_assert_eq!(ctx.pairing(x & mask, y & mask), ctx.pairing(y & mask, x & mask));
        }
    }

    #[test]
    fn canonical_form_ignores_labelling(g in graph_strategy(12), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm.shuffle(&mut StdRng::seed_from_u64(seed));
        let h = g.permuted(&perm);
        prop_assert_eq!(canonical(&g).unwrap(), canonical(&h).unwrap());
        prop_assert_eq!(char_polynomial(&g.adjacency_matrix()), char_polynomial(&h.adjacency_matrix()));
    }

    #[test]
    fn graph6_round_trips(g in graph_strategy(20)) {
        prop_assert_eq!(decode_graph6(&g.to_graph6()).unwrap(), g);
    }
}

/// Labelled 4-regular graphs on 9 vertices with `N(0) = {1, 2, 3, 4}`.
fn quartic_on_nine(g: &mut Graph, pairs: &[(usize, usize)], k: usize, out: &mut Vec<Graph>) {
    let deg = |g: &Graph, v: usize| g.degree(v);
    if k == pairs.len() {
        if (0..9).all(|v| deg(g, v) == 4) {
            out.push(g.clone());
        }
        return;
    }
    let (i, j) = pairs[k];
    // once every pair at vertex i has been decided, its degree is final
    let closes_i = pairs.get(k + 1).is_none_or(|&(ni, _)| ni != i);
    if deg(g, i) < 4 && deg(g, j) < 4 {
        g.add_edge(i, j);
        if !closes_i || deg(g, i) == 4 {
            quartic_on_nine(g, pairs, k + 1, out);
        }
        g.remove_edge(i, j);
    }
    if !closes_i || deg(g, i) == 4 {
        quartic_on_nine(g, pairs, k + 1, out);
    }
}

#[test]
fn sixteen_quartic_graphs_on_nine_vertices() {
    let mut g = Graph::empty(9);
    for v in 1..=4 {
        g.add_edge(0, v);
    }
    let pairs: Vec<(usize, usize)> = (1..9).flat_map(|i| (i + 1..9).map(move |j| (i, j))).collect();
    let mut labelled = Vec::new();
    quartic_on_nine(&mut g, &pairs, 0, &mut labelled);
    let mut forms: Vec<String> = labelled
        .iter()
        .filter(|g| g.is_connected())
        .map(|g| canonical(g).unwrap().graph6().to_string())
        .collect();
    forms.sort();
    forms.dedup();
    assert_eq!(forms.len(), 16);
}
