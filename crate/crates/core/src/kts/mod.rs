//! Closed-form theory for `H = K_{t,s}`: vertex types, `ρ` tables, the
//! type-`(0,b)` family, the strongly regular gap and the `K_{s,s}` analysis.

mod gr;

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::algebra::{AlgebraicNumber, Rational};
use crate::engine::complete_bipartite;
use crate::error::{Error, Result};
use crate::graph::{Graph, SrgParams};

pub use gr::{build_gr, gr_params, GrParams};

fn int(n: i64) -> AlgebraicNumber {
    AlgebraicNumber::from_int(n)
}

fn uint(n: usize) -> AlgebraicNumber {
    AlgebraicNumber::from_int(n as i64)
}

/// `K_{t,s}` with the `t`-part on vertices `0..t`.
pub fn make_kts(t: usize, s: usize) -> Graph {
    assert!(s >= t && t >= 1, "need s >= t >= 1");
    complete_bipartite(t, s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VertexType {
    pub a: usize,
    pub b: usize,
}

impl VertexType {
    pub fn new(a: usize, b: usize) -> Self {
        VertexType { a, b }
    }
}

impl fmt::Display for VertexType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

fn check_mu(t: usize, s: usize, mu: &AlgebraicNumber) -> Result<()> {
    if mu.is_zero() || mu * mu == uint(t * s) {
        return Err(Error::MuIsEigenvalue);
    }
    Ok(())
}

/// `(μ² − ts)(a+b) + a²s + tb² + 2abμ`, to be compared with `μ²(μ² − ts)`.
pub fn self_pairing_lhs(t: usize, s: usize, mu: &AlgebraicNumber, ty: VertexType) -> AlgebraicNumber {
    let VertexType { a, b } = ty;
    let shift = &(mu * mu) - &uint(t * s);
    &(&(&shift * &uint(a + b)) + &uint(a * a * s + t * b * b)) + &(&uint(2 * a * b) * mu)
}

/// `μ²(a+b) + μ(as + tb)`, to be compared with `−μ(μ² − ts)`.
pub fn non_main_lhs(t: usize, s: usize, mu: &AlgebraicNumber, ty: VertexType) -> AlgebraicNumber {
    let VertexType { a, b } = ty;
    &(&(mu * mu) * &uint(a + b)) + &(mu * &uint(a * s + t * b))
}

/// Types `(a, b) ≠ (0, 0)` meeting both the self-pairing and the non-main
/// condition, ascending.
pub fn solve_types_fixed(t: usize, s: usize, mu: &AlgebraicNumber) -> Vec<VertexType> {
    let shift = &(mu * mu) - &uint(t * s);
    let self_rhs = &(mu * mu) * &shift;
    let ones_rhs = -&(mu * &shift);
    let mut out = Vec::new();
    for a in 0..=t {
        for b in 0..=s {
            let ty = VertexType::new(a, b);
            if (a, b) != (0, 0)
                && self_pairing_lhs(t, s, mu, ty) == self_rhs
                && non_main_lhs(t, s, mu, ty) == ones_rhs
            {
                out.push(ty);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamRow {
    pub a: usize,
    pub b: AlgebraicNumber,
    /// Absent when the defining denominator vanishes.
    pub s: Option<AlgebraicNumber>,
    pub feasible: bool,
}

fn nonneg_integer(x: &AlgebraicNumber) -> Option<usize> {
    x.to_i64().and_then(|v| usize::try_from(v).ok())
}

/// Types as functions of `s`: for each `a` in `0..t` with `a ≠ −μ`,
/// `b = (μ³ + tμ² − ta + a²)/(μ + a)` and the `s` forced by the
/// self-pairing condition. A row is feasible when `b` and `s` are integers
/// with `s ≥ t` and `0 ≤ b ≤ s`.
pub fn solve_types_parametric(t: usize, mu: &AlgebraicNumber) -> Vec<ParamRow> {
    let mu2 = mu * mu;
    let mu3 = &mu2 * mu;
    let mu4 = &mu3 * mu;
    let ti = t as i64;
    let mut out = Vec::new();
    for a in 0..t {
        let ai = a as i64;
        let den_b = mu + &int(ai);
        if den_b.is_zero() {
            continue;
        }
        let num_b = &(&(&mu3 + &(&int(ti) * &mu2)) - &int(ti * ai)) + &int(ai * ai);
        let b = num_b.checked_div(&den_b).expect("nonzero");
        let num_s = &(&(&(&(&mu4 + &(&int(2 * ti + 1) * &mu3)) + &(&int(2 * ai + ti * ti) * &mu2))
            + &(&int(2 * ai * ai - ai * ti) * mu))
            + &int(ai * ai * ti))
            - &int(ai * ti * ti);
        let den_s = &(&int(ti - ai) * mu) + &int(ai * ti - ai * ai);
        let s = num_s.checked_div(&den_s);
        let feasible = match (&s, nonneg_integer(&b)) {
            (Some(s), Some(bv)) => nonneg_integer(s).is_some_and(|sv| sv >= t && bv <= sv),
            _ => false,
        };
        out.push(ParamRow { a, b, s, feasible });
    }
    out
}

/// The `ρ` solving `(μ² − ts)ρ + acs + bdt + μ(ad + bc) = −μ(μ² − ts)·a_uv`.
pub fn rho_value(
    t: usize,
    s: usize,
    mu: &AlgebraicNumber,
    u: VertexType,
    v: VertexType,
    adjacent: bool,
) -> Option<AlgebraicNumber> {
    let shift = &(mu * mu) - &uint(t * s);
    let (VertexType { a, b }, VertexType { a: c, b: d }) = (u, v);
    let rhs = if adjacent { -&(mu * &shift) } else { int(0) };
    let known = &uint(a * c * s + b * d * t) + &(mu * &uint(a * d + b * c));
    (&rhs - &known).checked_div(&shift)
}

/// Attainable `|N_H(u) ∩ N_H(v)|` for types `u`, `v` in `K_{t,s}`.
pub fn rho_range(t: usize, s: usize, u: VertexType, v: VertexType) -> (usize, usize) {
    let lo = (u.a + v.a).saturating_sub(t) + (u.b + v.b).saturating_sub(s);
    let hi = u.a.min(v.a) + u.b.min(v.b);
    (lo, hi)
}

/// `ρ` if it is an integer that two such neighbourhoods can realise.
pub fn rho_of_pair(
    t: usize,
    s: usize,
    mu: &AlgebraicNumber,
    u: VertexType,
    v: VertexType,
    adjacent: bool,
) -> Option<usize> {
    let rho = nonneg_integer(&rho_value(t, s, mu, u, v, adjacent)?)?;
    let (lo, hi) = rho_range(t, s, u, v);
    (lo..=hi).contains(&rho).then_some(rho)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoRow {
    pub u: VertexType,
    pub v: VertexType,
    pub adjacent: bool,
    pub rho: AlgebraicNumber,
    pub feasible: bool,
}

/// Both adjacency values for every unordered pair of `types`.
pub fn rho_table(t: usize, s: usize, mu: &AlgebraicNumber, types: &[VertexType]) -> Vec<RhoRow> {
    let mut out = Vec::new();
    for (i, &u) in types.iter().enumerate() {
        for &v in &types[i..] {
            for adjacent in [false, true] {
                let Some(rho) = rho_value(t, s, mu, u, v, adjacent) else {
                    continue;
                };
                let feasible = rho_of_pair(t, s, mu, u, v, adjacent).is_some();
                out.push(RhoRow {
                    u,
                    v,
                    adjacent,
                    rho,
                    feasible,
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FamilyRecord {
    pub t: usize,
    pub mu: AlgebraicNumber,
    pub s: AlgebraicNumber,
    pub r: AlgebraicNumber,
    pub order: AlgebraicNumber,
    pub x_size: Option<AlgebraicNumber>,
    pub feasible: bool,
    pub srg_params: Option<SrgParams>,
    pub note: Option<String>,
}

/// Parameters of the regular graphs whose star set is all of type `(0, b)`:
/// `r = s = μ(μ² + 2tμ + μ + t²)/t`,
/// order `μ(μ + 2t + 1)(μ² + 2tμ + μ + t² − t)/t²` and
/// `|X| = s(r − t)/(μ² + tμ)`.
pub fn family_type0b(t: usize, mu: &AlgebraicNumber) -> FamilyRecord {
    assert!(t >= 1);
    let ti = t as i64;
    let mu2 = mu * mu;
    let inner = &(&(&mu2 + &(&int(2 * ti) * mu)) + mu) + &int(ti * ti);
    let tq = AlgebraicNumber::from_rational(Rational::new(BigInt::from(1), BigInt::from(ti)));
    let r = &(mu * &inner) * &tq;
    let order = &(&(&(mu * &(mu + &int(2 * ti + 1))) * &(&inner - &int(ti))) * &tq) * &tq;
    let x_size = (&r * &(&r - &int(ti))).checked_div(&(&mu2 + &(&int(ti) * mu)));
    let excluded = matches!(mu.to_i64(), Some(0 | -1)) || mu == &int(-ti);
    let feasible = !excluded
        && [&r, &order]
            .into_iter()
            .chain(x_size.as_ref())
            .all(|x| x.is_integer() && !x.is_negative() && !x.is_zero());
    let srg_params = (feasible && t == 1)
        .then(|| {
            let m = mu.to_i64()?;
            let n = usize::try_from((m * m + 3 * m) * (m * m + 3 * m)).ok()?;
            Some(SrgParams {
                n,
                r: usize::try_from(m * (m * m + 3 * m + 1)).ok()?,
                e: 0,
                f: usize::try_from(m * (m + 1)).ok()?,
            })
        })
        .flatten();
    let note = (t == 2 && mu == &int(1)).then(|| {
        "mu = 1 is excluded for t = 2; values reported as a cross-check of the prior t = 2 classification".to_string()
    });
    FamilyRecord {
        t,
        mu: mu.clone(),
        s: r.clone(),
        r,
        order,
        x_size,
        feasible: feasible && note.is_none(),
        srg_params,
        note,
    }
}

/// `(k+t+s)r − r² − kμ² − (kμ + r)²/(s+t−1)`, zero exactly for strongly
/// regular graphs. Requires `k + t + s − 1 > r`.
pub fn srg_gap(k: usize, t: usize, s: usize, r: usize, mu: &AlgebraicNumber) -> Result<AlgebraicNumber> {
    if k + t + s < r + 2 {
        return Err(Error::HypothesisViolated);
    }
    let k_ = uint(k);
    let r_ = uint(r);
    let lead = &(&uint((k + t + s) * r) - &uint(r * r)) - &(&k_ * &(mu * mu));
    let sq = &(&k_ * mu) + &r_;
    let tail = (&sq * &sq).checked_div(&uint(s + t - 1)).expect("s + t - 1 > 0");
    Ok(&lead - &tail)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KssReport {
    pub s: usize,
    pub mu: AlgebraicNumber,
    pub discriminant: AlgebraicNumber,
    /// `(x₁, x₂) = ((s − μ ± √D)/2)` when `D` is a rational square.
    pub roots: Option<(AlgebraicNumber, AlgebraicNumber)>,
    /// `μ ∈ ℤ` and `|μ| < s`.
    pub mu_integral: bool,
    /// `s(r − s)`.
    pub bound: Option<usize>,
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    (&n * &n == *q.numer() && &d * &d == *q.denom()).then(|| Rational::new(n, d))
}

pub fn kss_analysis(s: usize, mu: &AlgebraicNumber, r: Option<usize>) -> KssReport {
    let s_ = uint(s);
    let disc = -&(&(&s_ + mu) * &(&(&(&int(2) * &(mu * mu)) + mu) - &s_));
    let roots = disc.to_rational().and_then(|d| rational_sqrt(&d)).map(|root| {
        let root = AlgebraicNumber::from_rational(root);
        let half = AlgebraicNumber::from_rational(Rational::new(BigInt::from(1), BigInt::from(2)));
        let base = &s_ - mu;
        (&(&base + &root) * &half, &(&base - &root) * &half)
    });
    let mu_integral = mu.to_i64().is_some_and(|m| m.unsigned_abs() < s as u64);
    KssReport {
        s,
        mu: mu.clone(),
        discriminant: disc,
        roots,
        mu_integral,
        bound: r.map(|r| s * r.saturating_sub(s)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub t: usize,
    pub s: usize,
    pub mu: AlgebraicNumber,
    pub mval: AlgebraicNumber,
    pub fixed_types: Vec<VertexType>,
    pub parametric: Vec<ParamRow>,
    pub rho_rows: Vec<RhoRow>,
}

/// Types for fixed `(t, s, μ)`, the parametric rows for `t`, and the `ρ`
/// table of the fixed types.
pub fn analyze(t: usize, s: usize, mu: &AlgebraicNumber) -> Result<AnalysisReport> {
    if t == 0 || s < t {
        return Err(Error::Invalid(format!("need s >= t >= 1, got t={t}, s={s}")));
    }
    check_mu(t, s, mu)?;
    let fixed_types = solve_types_fixed(t, s, mu);
    let parametric = if mu == &int(-1) || mu == &int(-(t as i64)) {
        Vec::new()
    } else {
        solve_types_parametric(t, mu)
    };
    let rho_rows = rho_table(t, s, mu, &fixed_types);
    let mval = mu * &(&(mu * mu) - &uint(t * s));
    Ok(AnalysisReport {
        t,
        s,
        mu: mu.clone(),
        mval,
        fixed_types,
        parametric,
        rho_rows,
    })
}
