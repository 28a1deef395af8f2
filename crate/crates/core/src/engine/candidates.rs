use rayon::prelude::*;
use serde::Serialize;

use super::context::{add, bits, sub, Pair, StarContext};
use crate::algebra::AlgebraicNumber;
use crate::error::{Error, Result};

/// Exhaustive scan limit for complements without a bipartite tag.
pub const UNTAGGED_MAX_ORDER: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CompatLabel {
    Adjacent,
    NonAdjacent,
    Incompatible,
}

/// An admissible `H`-neighbourhood `b` with `bᵀNb = m(μ)·μ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateVector {
    pub bits: u64,
    pub self_pair: AlgebraicNumber,
    pub ones_pair: AlgebraicNumber,
    pub type_ab: Option<(usize, usize)>,
    pub(crate) nb: Vec<Pair>,
}

impl CandidateVector {
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn vertices(&self) -> Vec<usize> {
        bits(self.bits).collect()
    }
}

/// `k`-subsets of `0..n` as ascending masks.
fn subsets(n: usize, k: usize) -> Vec<u64> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    if k == 64 {
        return vec![u64::MAX];
    }
    let mut out = Vec::new();
    let mut x: u64 = (1u64 << k) - 1;
    let limit: u128 = 1u128 << n;
    while (x as u128) < limit {
        out.push(x);
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x.wrapping_add(c);
        if r == 0 {
            break;
        }
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

impl StarContext {
    fn type_of(&self, x: u64) -> Option<(usize, usize)> {
        self.tag().map(|(t, _)| {
            let vmask = (1u64 << t) - 1;
            ((x & vmask).count_ones() as usize, (x & !vmask).count_ones() as usize)
        })
    }

    fn self_scaled(&self, x: u64, nx: &[Pair]) -> Pair {
        bits(x).fold((0, 0), |acc, k| add(acc, nx[k]))
    }

    /// Candidate record for an arbitrary 0/1 vector, without checking the
    /// self-pairing condition.
    pub fn candidate(&self, x: u64) -> CandidateVector {
        let nb = self.apply(x);
        CandidateVector {
            bits: x,
            self_pair: self.unscale(self.self_scaled(x, &nb)),
            ones_pair: self.unscale(self.ones_scaled(x)),
            type_ab: self.type_of(x),
            nb,
        }
    }

    fn passes(&self, x: u64, non_main: bool) -> bool {
        let sc = &self.scaled;
        let nx = self.apply(x);
        Some(self.self_scaled(x, &nx)) == sc.self_target
            && (!non_main || Some(self.ones_scaled(x)) == sc.ones_target)
    }

    /// Closed forms for `bᵀNb` and `bᵀNj` of a type-`(a, b)` vector over
    /// `K_{t,s}` with `N = C² + μC + (μ² − ts)I`.
    pub fn type_pairings(&self, a: usize, b: usize) -> Option<(AlgebraicNumber, AlgebraicNumber)> {
        let (t, s) = self.tag()?;
        if !self.closed_form() {
            return None;
        }
        let int = |n: usize| AlgebraicNumber::from_int(n as i64);
        let mu = self.mu();
        let mu2 = mu * mu;
        let shift = &mu2 - &int(t * s);
        let selfp = &(&(&shift * &int(a + b)) + &int(a * a * s + t * b * b)) + &(&int(2 * a * b) * mu);
        let ones = &(&mu2 * &int(a + b)) + &(mu * &int(a * s + t * b));
        Some((selfp, ones))
    }

    /// All admissible neighbourhoods, by type then ascending mask.
    pub fn enumerate_candidates(&self, non_main: bool) -> Result<Vec<CandidateVector>> {
        let masks = match self.tag() {
            Some(tag) => self.tagged_masks(tag, non_main),
            None => self.scan_masks(non_main)?,
        };
        Ok(masks.into_iter().map(|x| self.candidate(x)).collect())
    }

    /// Exhaustive scan ignoring any bipartite tag.
    pub fn enumerate_candidates_generic(&self, non_main: bool) -> Result<Vec<CandidateVector>> {
        let mut masks = self.scan_masks(non_main)?;
        if let Some((t, _)) = self.tag() {
            let vmask = (1u64 << t) - 1;
            masks.sort_by_key(|&x| ((x & vmask).count_ones(), (x & !vmask).count_ones(), x));
        }
        Ok(masks.into_iter().map(|x| self.candidate(x)).collect())
    }

    fn tagged_masks(&self, (t, s): (usize, usize), non_main: bool) -> Vec<u64> {
        let mval_mu = self.mval() * self.mu();
        let neg_m = -self.mval();
        let mut out = Vec::new();
        for a in 0..=t {
            for b in 0..=s {
                let rep = ((1u64 << a) - 1) | (((1u64 << b) - 1) << t);
                let ok = match self.type_pairings(a, b) {
                    Some((selfp, ones)) => {
                        let ok = selfp == mval_mu && (!non_main || ones == neg_m);
                        assert_eq!(ok, self.passes(rep, non_main), "closed-form type test disagrees");
                        ok
                    }
                    None => self.passes(rep, non_main),
                };
                if !ok {
                    continue;
                }
                let vs = subsets(t, a);
                let ws = subsets(s, b);
                let start = out.len();
                for &v in &vs {
                    for &w in &ws {
                        out.push(v | (w << t));
                    }
                }
                out[start..].sort_unstable();
            }
        }
        out
    }

    fn scan_masks(&self, non_main: bool) -> Result<Vec<u64>> {
        let q = self.order();
        if q > UNTAGGED_MAX_ORDER {
            return Err(Error::TooLarge(format!(
                "exhaustive candidate scan limited to order {UNTAGGED_MAX_ORDER}, complement has {q}"
            )));
        }
        let Some(target) = self.scaled.self_target else {
            return Ok(Vec::new());
        };
        let hb = q.min(10);
        let lb = q - hb;
        let mut out: Vec<u64> = (0..1u64 << hb)
            .into_par_iter()
            .flat_map_iter(|hi| {
                let mut mask = hi << lb;
                let mut nb = self.apply(mask);
                let mut sp = self.self_scaled(mask, &nb);
                let mut found = Vec::new();
                let mut check = |mask: u64, sp: Pair| {
                    if sp == target
                        && (!non_main || Some(self.ones_scaled(mask)) == self.scaled.ones_target)
                    {
                        found.push(mask);
                    }
                };
                check(mask, sp);
                for i in 1..1u64 << lb {
                    // reflected Gray code: flip the lowest set bit of i
                    let k = i.trailing_zeros() as usize;
                    let diag = self.entry(k, k);
                    if mask >> k & 1 == 0 {
                        sp = add(add(sp, nb[k]), add(nb[k], diag));
                        for (j, e) in nb.iter_mut().enumerate() {
                            *e = add(*e, self.entry(j, k));
                        }
                        mask |= 1 << k;
                    } else {
                        for (j, e) in nb.iter_mut().enumerate() {
                            *e = sub(*e, self.entry(j, k));
                        }
                        sp = sub(sp, add(add(nb[k], nb[k]), diag));
                        mask &= !(1 << k);
                    }
                    check(mask, sp);
                }
                found
            })
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Label from the scaled pairing alone.
    pub(crate) fn label(&self, u: &CandidateVector, v: &CandidateVector) -> CompatLabel {
        let p = bits(v.bits).fold((0, 0), |acc, k| add(acc, u.nb[k]));
        if Some(p) == self.scaled.adj_target {
            CompatLabel::Adjacent
        } else if p == (0, 0) {
            CompatLabel::NonAdjacent
        } else {
            CompatLabel::Incompatible
        }
    }

    /// Forced relation between two star-set vertices with neighbourhoods
    /// `u` and `v`.
    pub fn classify_pair(&self, u: &CandidateVector, v: &CandidateVector) -> Result<CompatLabel> {
        if u.bits == v.bits && !self.mu_allows_duplicates() {
            return Err(Error::DuplicateNeighbourhood(u.bits));
        }
        let label = self.label(u, v);
        if let (Some((t, s)), true) = (self.tag(), self.closed_form()) {
            let (a, b) = u.type_ab.expect("tagged");
            let (c, d) = v.type_ab.expect("tagged");
            let rho = (u.bits & v.bits).count_ones() as usize;
            let closed = pair_condition_lhs(self.mu(), t, s, (a, b), (c, d), rho);
            assert_eq!(closed, self.pairing(u.bits, v.bits), "closed-form pairing disagrees");
        }
        Ok(label)
    }
}

/// `(μ² − ts)ρ + acs + bdt + μ(ad + bc)`.
pub(crate) fn pair_condition_lhs(
    mu: &AlgebraicNumber,
    t: usize,
    s: usize,
    (a, b): (usize, usize),
    (c, d): (usize, usize),
    rho: usize,
) -> AlgebraicNumber {
    let int = |n: usize| AlgebraicNumber::from_int(n as i64);
    let shift = &(mu * mu) - &int(t * s);
    &(&(&shift * &int(rho)) + &int(a * c * s + b * d * t)) + &(mu * &int(a * d + b * c))
}
