//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if the set of failures differs from `KNOWN_FAILURES`.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use starcomp::algebra::{char_polynomial, RootSign};
use starcomp::catalog::{self, spectrum_matches, Spectrum};
use starcomp::engine::{complete_bipartite, make_context, search_star_sets, verify_star_pair};
use starcomp::graph::{canonical, srg_check};
use starcomp::kts::{analyze, build_gr, family_type0b, gr_params, solve_types_parametric, srg_gap, VertexType};
use starcomp::{AlgebraicNumber, Error, Graph, Rational, SearchOptions, SrgParams, StarSolution};

/// The printed `ρ` values for two same-type vertices at `K_{3,18}`, `μ = 2`
/// disagree with the pairing equation they are derived from; see README.
const KNOWN_FAILURES: &[u32] = &[10];

fn int(n: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_int(n)
}

fn frac(n: i64, d: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_rational(Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn ints(spec: &[(i64, usize)]) -> Spectrum {
    spec.iter().map(|&(l, m)| (int(l), m)).collect()
}

/// Every solution produced anywhere, for the reconstruction sweep.
struct Emitted {
    label: String,
    graph: Graph,
    star_set: Vec<usize>,
    mu: AlgebraicNumber,
}

#[derive(Default)]
struct Suite {
    results: Vec<(u32, bool, String)>,
    emitted: Vec<Emitted>,
}

impl Suite {
    fn record(&mut self, id: u32, ok: bool, detail: String) {
        println!("criterion {id:>2}: {} - {detail}", if ok { "PASS" } else { "FAIL" });
        self.results.push((id, ok, detail));
    }

    fn keep(&mut self, label: &str, mu: &AlgebraicNumber, sols: &[StarSolution]) {
        for s in sols {
            self.emitted.push(Emitted {
                label: label.to_string(),
                graph: s.graph.clone(),
                star_set: s.star_vertices(),
                mu: mu.clone(),
            });
        }
    }

    fn search(&mut self, label: &str, t: usize, s: usize, mu: &AlgebraicNumber, opts: &SearchOptions) -> Vec<StarSolution> {
        let ctx = make_context(complete_bipartite(t, s), mu.clone(), Some((t, s))).expect("context");
        let sols = search_star_sets(&ctx, opts).expect("search");
        self.keep(label, mu, &sols);
        sols
    }
}

fn criterion_1(suite: &mut Suite) {
    let sols = suite.search("K33 mu=1 sweep", 3, 3, &int(1), &SearchOptions::sweep());
    let orders: Vec<usize> = sols.iter().map(|s| s.order()).collect();
    let degrees: Vec<Option<usize>> = sols.iter().map(|s| s.graph.regular_degree()).collect();
    let spectra = [
        ints(&[(-3, 1), (-2, 2), (0, 2), (1, 3), (4, 1)]),
        ints(&[(-3, 3), (-1, 2), (1, 6), (5, 1)]),
        ints(&[(-3, 5), (1, 9), (6, 1)]),
    ];
    let spectra_ok = sols.len() == 3
        && sols
            .iter()
            .zip(&spectra)
            .all(|(s, spec)| spectrum_matches(&s.certificate.char_poly, spec));
    let ok = orders == [9, 12, 15] && degrees == [Some(4), Some(5), Some(6)] && spectra_ok;
    suite.record(1, ok, format!("orders {orders:?}, degrees {degrees:?}, spectra exact: {spectra_ok}"));
}

fn criterion_2(suite: &mut Suite) {
    let srg: Vec<Option<SrgParams>> = ["G1", "G2", "G3"]
        .iter()
        .map(|n| srg_check(&catalog::named_graph(n).unwrap()))
        .collect();
    let gaps: Vec<AlgebraicNumber> = [(9, 6), (3, 4), (6, 5)]
        .iter()
        .map(|&(k, r)| srg_gap(k, 3, 3, r, &int(1)).unwrap())
        .collect();
    let ok = srg == [None, None, Some(SrgParams { n: 15, r: 6, e: 1, f: 3 })]
        && gaps[0].is_zero()
        && gaps[1] > int(0)
        && gaps[2] > int(0);
    let gap_text: Vec<String> = gaps.iter().map(|g| g.to_string()).collect();
    suite.record(2, ok, format!("srg_check G1..G3 {srg:?}, gaps {gap_text:?}"));
}

fn criterion_3(suite: &mut Suite) -> Vec<StarSolution> {
    let mu = int(-2);
    let mut detail = Vec::new();
    let mut ok = true;
    let mut all = Vec::new();
    for (r, name, spec) in [
        (8, "G4", ints(&[(-6, 1), (-2, 3), (0, 8), (2, 2), (8, 1)])),
        (10, "G5", ints(&[(-6, 1), (-2, 6), (0, 6), (1, 2), (3, 2), (10, 1)])),
    ] {
        let start = Instant::now();
        let sols = suite.search(&format!("K66 mu=-2 r={r}"), 6, 6, &mu, &SearchOptions::regular(r));
        let target = canonical(&catalog::named_graph(name).unwrap()).unwrap();
        let hit = sols.iter().find(|s| s.canonical.as_ref() == Some(&target));
        let spec_ok = hit.is_some_and(|s| spectrum_matches(&s.certificate.char_poly, &spec));
        ok &= spec_ok;
        detail.push(format!(
            "r={r}: {} graphs, contains {name}: {}, spectrum exact: {spec_ok} ({:.1?})",
            sols.len(),
            hit.is_some(),
            start.elapsed()
        ));
        all.extend(sols);
    }
    suite.record(3, ok, detail.join("; "));
    all
}

fn criterion_4(suite: &mut Suite) {
    // μ = −1 admits co-duplicate vertices, so the t = 1 cases run to a cap.
    const DUPLICATE_CAP: usize = 12;
    let mut found = Vec::new();
    let mut cases = 0;
    for t in 1..=3usize {
        for s in t + 1..=5usize {
            let mu = int(-(t as i64));
            let mut opts = SearchOptions::sweep();
            if t == 1 {
                opts = opts.with_max_x(DUPLICATE_CAP);
            }
            let sols = suite.search(&format!("K{t},{s} mu=-{t}"), t, s, &mu, &opts);
            cases += 1;
            if !sols.is_empty() {
                found.push(((t, s), sols.len()));
            }
        }
    }
    suite.record(
        4,
        found.is_empty(),
        format!("{cases} cases (t = 1 capped at |X| <= {DUPLICATE_CAP}), nonempty: {found:?}"),
    );
}

fn criterion_5(suite: &mut Suite) {
    let mut ok = true;
    let mut detail = Vec::new();
    for (t, s, r) in [(2, 3, 4), (3, 3, 7), (2, 2, 5)] {
        let p = gr_params(t, s, r).unwrap();
        let sol = build_gr(t, s, r).unwrap();
        let expected = t * p.vi_size + s * p.wi_size;
        let good = sol.graph.regular_degree() == Some(r)
            && sol.certificate.pass
            && sol.certificate.multiplicity == expected;
        ok &= good;
        detail.push(format!("({t},{s},{r}) n={} k={}", sol.order(), sol.certificate.multiplicity));
        suite.keep(&format!("G({t},{s},{r})"), &int(-1), std::slice::from_ref(&sol));
    }
    let div = gr_params(3, 4, 5);
    ok &= matches!(div, Err(Error::DivisibilityViolation { .. }));
    detail.push(format!("(3,4,5) -> {div:?}"));
    suite.record(5, ok, detail.join(", "));
}

fn criterion_6(suite: &mut Suite) {
    let sols = suite.search("K15 mu=1 sweep", 1, 5, &int(1), &SearchOptions::sweep());
    let fam = family_type0b(1, &int(1));
    let srg: Vec<Option<SrgParams>> = sols.iter().map(|s| srg_check(&s.graph)).collect();
    let ok = sols.len() == 1
        && sols[0].order() == 16
        && srg[0] == Some(SrgParams { n: 16, r: 5, e: 0, f: 2 })
        && fam.order == int(16)
        && fam.r == int(5)
        && fam.srg_params == srg[0];
    suite.record(6, ok, format!("{} graph(s), srg {srg:?}, formula order {}", sols.len(), fam.order));
}

fn criterion_7(suite: &mut Suite) {
    let phi = AlgebraicNumber::quadratic_root(-1, 1, RootSign::Pos).unwrap();
    let golden = suite.search("K12 golden", 1, 2, &phi, &SearchOptions::sweep());
    let c5 = canonical(&Graph::cycle(5)).unwrap();
    let golden_ok = golden.len() == 1 && golden[0].canonical.as_ref() == Some(&c5);
    let minus2 = suite.search("K12 mu=-2", 1, 2, &int(-2), &SearchOptions::sweep());
    let k22 = canonical(&complete_bipartite(2, 2)).unwrap();
    let k22_ok = minus2.len() == 1 && minus2[0].canonical.as_ref() == Some(&k22);
    suite.record(
        7,
        golden_ok && k22_ok,
        format!(
            "golden: {} graph(s), C5: {golden_ok}; mu=-2: {} graph(s), K22: {k22_ok}",
            golden.len(),
            minus2.len()
        ),
    );
}

fn criterion_8(suite: &mut Suite, k66: &[StarSolution]) {
    let mut checked = 0;
    let mut violations = Vec::new();
    let mut tight = Vec::new();
    let mut k33_all_tight = true;
    let mut judge = |s: usize, m: i64, sol: &StarSolution| {
        let r = sol.graph.regular_degree().expect("regular");
        let k = sol.star_set.len();
        let bound = s * (r - s);
        checked += 1;
        if k > bound {
            violations.push((s, m, r, k));
        }
        if k == bound {
            tight.push((s, m, r));
        } else if (s, m) == (3, 1) {
            k33_all_tight = false;
        }
    };
    for s in 2..=5usize {
        for m in -(s as i64) + 1..s as i64 {
            if m == 0 || m == -1 {
                continue;
            }
            let sols = suite.search(&format!("K{s},{s} mu={m}"), s, s, &int(m), &SearchOptions::sweep());
            for sol in &sols {
                judge(s, m, sol);
            }
        }
    }
    for sol in k66 {
        judge(6, -2, sol);
    }
    let only_k33 = tight.iter().all(|&(s, m, _)| (s, m) == (3, 1));
    let k33_count = tight.len();
    let ok = violations.is_empty() && only_k33 && k33_all_tight && k33_count == 3;
    suite.record(
        8,
        ok,
        format!("{checked} results, violations {violations:?}, equality at {tight:?}"),
    );
}

fn criterion_9(suite: &mut Suite) {
    let mut bad = Vec::new();
    for e in &suite.emitted {
        let c = verify_star_pair(&e.graph, &e.star_set, &e.mu);
        if !(c.reconstruction_ok && c.pass) {
            bad.push(e.label.clone());
        }
    }
    let n = suite.emitted.len();
    suite.record(9, bad.is_empty() && n > 0, format!("{n} solutions re-verified, failures {bad:?}"));
}

fn rho_lookup(rows: &[starcomp::kts::RhoRow], u: VertexType, v: VertexType, adjacent: bool) -> Option<(AlgebraicNumber, bool)> {
    rows.iter()
        .find(|r| r.u == u && r.v == v && r.adjacent == adjacent)
        .map(|r| (r.rho.clone(), r.feasible))
}

fn criterion_10(suite: &mut Suite) {
    let ty = VertexType::new;
    let mut notes = Vec::new();

    // μ = −1: types (1,s), (t,1) and the feasible ρ rows.
    let mut t1 = true;
    for (t, s) in [(2usize, 3usize), (3, 4), (2, 5)] {
        let rep = analyze(t, s, &int(-1)).unwrap();
        t1 &= rep.fixed_types == vec![ty(1, s), ty(t, 1)];
        let feasible: Vec<(VertexType, VertexType, bool, AlgebraicNumber)> = rep
            .rho_rows
            .iter()
            .filter(|r| r.feasible)
            .map(|r| (r.u, r.v, r.adjacent, r.rho.clone()))
            .collect();
        let expected = vec![
            (ty(1, s), ty(1, s), false, int(s as i64)),
            (ty(1, s), ty(1, s), true, int(s as i64 + 1)),
            (ty(1, s), ty(t, 1), true, int(2)),
            (ty(t, 1), ty(t, 1), false, int(t as i64)),
            (ty(t, 1), ty(t, 1), true, int(t as i64 + 1)),
        ];
        t1 &= feasible == expected;
    }
    notes.push(format!("mu=-1 rows: {t1}"));

    // t = 3 parametric types against the closed forms in μ.
    let mut t2 = true;
    for m in [1i64, 2, 3, 4, 5, -2, -4, -5] {
        let mu = int(m);
        let rows = solve_types_parametric(3, &mu);
        let i_b = int(m * m + 3 * m);
        let i_s = frac(m * (m * m + 7 * m + 9), 3);
        let ii_b = int(m * m + 2 * m - 2);
        let ii_s = frac((m + 2) * (m * m + 4 * m - 3), 2);
        let by_a = |a: usize| rows.iter().find(|r| r.a == a);
        t2 &= by_a(0).is_some_and(|r| r.b == i_b && r.s.as_ref() == Some(&i_s));
        t2 &= by_a(1).is_some_and(|r| r.b == ii_b && r.s.as_ref() == Some(&ii_s));
        if m != -2 {
            let iii_b = frac(m * m * m + 3 * m * m - 2, m + 2);
            let iii_s = frac(m.pow(4) + 7 * m.pow(3) + 13 * m * m + 2 * m - 6, m + 2);
            t2 &= by_a(2).is_some_and(|r| r.b == iii_b && r.s.as_ref() == Some(&iii_s));
        } else {
            t2 &= by_a(2).is_none();
        }
    }
    let at1 = solve_types_parametric(3, &int(1));
    t2 &= at1.len() == 3 && !at1[2].feasible && at1[2].b == frac(2, 3);
    notes.push(format!("t=3 parametric rows: {t2}"));

    // K_{3,18}, μ = 2, against the printed table.
    let rep = analyze(3, 18, &int(2)).unwrap();
    let (a, b) = (ty(0, 10), ty(1, 6));
    let printed = [
        (a, b, false, int(4), true),
        (a, b, true, int(2), true),
        (a, a, false, int(2), true),
        (a, a, true, int(0), true),
        (b, b, false, frac(-11, 5), false),
        (b, b, true, frac(-21, 5), false),
    ];
    let mut t3 = rep.fixed_types == vec![a, b];
    let mut mismatches = Vec::new();
    for (u, v, adj, rho, feasible) in printed {
        let got = rho_lookup(&rep.rho_rows, u, v, adj);
        if got.as_ref() != Some(&(rho.clone(), feasible)) {
            t3 = false;
            let shown = got.map_or("missing".to_string(), |(r, f)| format!("{r} feasible={f}"));
            mismatches.push(format!("{u}{v} a_uv={} expected {rho} got {shown}", adj as u8));
        }
    }
    notes.push(format!("K3,18 mu=2 rows: {t3}"));
    if !mismatches.is_empty() {
        notes.push(format!("mismatches [{}]", mismatches.join("; ")));
    }
    suite.record(10, t1 && t2 && t3, notes.join(", "));
}

/// `(μI − C)^{-1}` by Gauss-Jordan elimination.
fn inverse(c: &Graph, mu: &AlgebraicNumber) -> Vec<Vec<AlgebraicNumber>> {
    let n = c.order();
    let mut m: Vec<Vec<AlgebraicNumber>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        if i == j {
                            mu.clone()
                        } else if c.has_edge(i, j) {
                            int(-1)
                        } else {
                            int(0)
                        }
                    } else if j - n == i {
                        int(1)
                    } else {
                        int(0)
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("invertible");
        m.swap(col, p);
        let inv = m[col][col].inverse().unwrap();
        for x in m[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                let pivot = m[col].clone();
                for (x, pv) in m[r].iter_mut().zip(&pivot) {
                    *x -= &(&f * pv);
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

/// Masks `b ≠ 0` with `bᵀ(μI − C)^{-1}b = μ`, and optionally
/// `bᵀ(μI − C)^{-1}j = −1`, by direct evaluation.
fn brute_force(h: &Graph, mu: &AlgebraicNumber, non_main: bool) -> Vec<u64> {
    let q = h.order();
    let inv = inverse(h, mu);
    let row_sums: Vec<AlgebraicNumber> = inv
        .iter()
        .map(|row| row.iter().fold(int(0), |acc, x| &acc + x))
        .collect();
    let rational = inv.iter().flatten().all(|x| x.is_rational());
    let mut out = Vec::new();
    if rational {
        // scale to integers
        let den = inv
            .iter()
            .flatten()
            .fold(BigInt::from(1), |l, x| l.lcm(x.to_rational().unwrap().denom()));
        let scale = |x: &AlgebraicNumber| -> i128 {
            let r = x.to_rational().unwrap() * Rational::from_integer(den.clone());
            r.to_integer().to_i128().unwrap()
        };
        let mi: Vec<Vec<i128>> = inv.iter().map(|row| row.iter().map(scale).collect()).collect();
        let ri: Vec<i128> = row_sums.iter().map(scale).collect();
        let target = scale(mu);
        let ones_target = scale(&int(-1));
        for x in 1u64..1 << q {
            let bits: Vec<usize> = (0..q).filter(|i| x >> i & 1 == 1).collect();
            let quad: i128 = bits.iter().flat_map(|&i| bits.iter().map(move |&j| (i, j))).map(|(i, j)| mi[i][j]).sum();
            let lin: i128 = bits.iter().map(|&i| ri[i]).sum();
            if quad == target && (!non_main || lin == ones_target) {
                out.push(x);
            }
        }
    } else {
        for x in 1u64..1 << q {
            let bits: Vec<usize> = (0..q).filter(|i| x >> i & 1 == 1).collect();
            let mut quad = int(0);
            for &i in &bits {
                for &j in &bits {
                    quad += &inv[i][j];
                }
            }
            let lin = bits.iter().fold(int(0), |acc, &i| &acc + &row_sums[i]);
            if quad == *mu && (!non_main || lin == int(-1)) {
                out.push(x);
            }
        }
    }
    out
}

fn criterion_11(suite: &mut Suite) {
    let phi = AlgebraicNumber::quadratic_root(-1, 1, RootSign::Pos).unwrap();
    let sqrt2 = AlgebraicNumber::quadratic_root(-2, 0, RootSign::Pos).unwrap();
    let mut contexts = 0;
    let mut mismatches = Vec::new();
    for t in 1..=6usize {
        for s in t..=12 - t {
            let mut mus: Vec<AlgebraicNumber> = [-3i64, -2, -1, 1, 2, 3].iter().map(|&m| int(m)).collect();
            if t + s <= 8 {
                mus.push(phi.clone());
                mus.push(sqrt2.clone());
            }
            for mu in mus {
                if &mu * &mu == int((t * s) as i64) {
                    continue;
                }
                let h = complete_bipartite(t, s);
                let ctx = make_context(h.clone(), mu.clone(), Some((t, s))).unwrap();
                assert!(ctx.closed_form());
                contexts += 1;
                for non_main in [false, true] {
                    let mut fast: Vec<u64> = ctx
                        .enumerate_candidates(non_main)
                        .unwrap()
                        .iter()
                        .map(|c| c.bits)
                        .collect();
                    fast.sort_unstable();
                    if fast != brute_force(&h, &mu, non_main) {
                        mismatches.push(format!("K{t},{s} mu={mu} non_main={non_main}"));
                    }
                }
            }
        }
    }
    suite.record(
        11,
        mismatches.is_empty(),
        format!("{contexts} tagged contexts with q <= 12, mismatches {mismatches:?}"),
    );
}

fn criterion_12(suite: &mut Suite) {
    let g = catalog::named_graph("Petersen").unwrap();
    let x = [5, 6, 7, 8, 9];
    let c = verify_star_pair(&g, &x, &int(1));
    let complement = g.induced_subgraph(&[0, 1, 2, 3, 4]);
    let is_c5 = canonical(&complement).unwrap() == canonical(&Graph::cycle(5)).unwrap();
    suite.record(
        12,
        c.pass && c.multiplicity == 5 && is_c5,
        format!("pass {}, multiplicity {}, complement is C5: {is_c5}", c.pass, c.multiplicity),
    );
    // also a sanity check on the char poly route the catalog uses
    assert!(spectrum_matches(&char_polynomial(&g.adjacency_matrix()), &ints(&[(-2, 4), (1, 5), (3, 1)])));
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut suite = Suite::default();
    criterion_1(&mut suite);
    criterion_2(&mut suite);
    let k66 = criterion_3(&mut suite);
    criterion_4(&mut suite);
    criterion_5(&mut suite);
    criterion_6(&mut suite);
    criterion_7(&mut suite);
    criterion_8(&mut suite, &k66);
    criterion_10(&mut suite);
    criterion_11(&mut suite);
    criterion_12(&mut suite);
    criterion_9(&mut suite);
    suite.results.sort_by_key(|r| r.0);

    let failed: Vec<u32> = suite.results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    let passed = suite.results.len() - failed.len();
    println!(
        "acceptance: {passed}/{} passed in {:.1?}; failing {failed:?}, expected failing {KNOWN_FAILURES:?}",
        suite.results.len(),
        start.elapsed()
    );
    if suite.results.len() == 12 && failed == KNOWN_FAILURES {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
