use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::algebra::{scaled_resolvent, AlgebraicNumber, FieldMatrix, IntMatrix, NumberField, Rational};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// A value `(p0 + p1·θ) / den` with the context's common denominator.
pub(crate) type Pair = (i128, i128);

pub(crate) fn add(a: Pair, b: Pair) -> Pair {
    (a.0 + b.0, a.1 + b.1)
}

pub(crate) fn sub(a: Pair, b: Pair) -> Pair {
    (a.0 - b.0, a.1 - b.1)
}

/// Largest magnitude allowed for a scaled resolvent entry, so that sums over
/// at most 64 × 64 entries cannot overflow.
const ENTRY_LIMIT: i128 = 1 << 100;

/// Integer image of `N`, `N·j` and the three comparison targets.
#[derive(Clone, Debug)]
pub(crate) struct Scaled {
    pub den: BigInt,
    pub n: Vec<Pair>,
    pub nj: Vec<Pair>,
    pub self_target: Option<Pair>,
    pub adj_target: Option<Pair>,
    pub ones_target: Option<Pair>,
}

/// Star complement `H`, eigenvalue `μ` and the scaled resolvent
/// `N = m(μ)(μI − C)⁻¹` with `mval = m(μ)`.
#[derive(Clone, Debug)]
pub struct StarContext {
    h: Graph,
    mu: AlgebraicNumber,
    n: FieldMatrix,
    mval: AlgebraicNumber,
    nj: Vec<AlgebraicNumber>,
    tag: Option<(usize, usize)>,
    closed_form: bool,
    pub(crate) scaled: Scaled,
}

/// `K_{t,s}` with the `t`-part on vertices `0..t`.
pub fn complete_bipartite(t: usize, s: usize) -> Graph {
    let mut g = Graph::empty(t + s);
    for i in 0..t {
        for j in t..t + s {
            g.add_edge(i, j);
        }
    }
    g
}

/// `C² + μC + (μ² − ts)I` and `μ(μ² − ts)`.
fn kts_resolvent(c: &IntMatrix, mu: &AlgebraicNumber, ts: i64) -> (FieldMatrix, AlgebraicNumber) {
    let q = c.rows();
    let c2 = c.mul(c);
    let shift = &(mu * mu) - &AlgebraicNumber::from_int(ts);
    let mut out = FieldMatrix::zeros(q, q, mu.field());
    for i in 0..q {
        for j in 0..q {
            let mut v = AlgebraicNumber::from_bigint(c2.get(i, j).clone());
            v += &(mu * &AlgebraicNumber::from_bigint(c.get(i, j).clone()));
            if i == j {
                v += &shift;
            }
            out.set(i, j, v);
        }
    }
    (out, mu * &shift)
}

fn to_pair(x: &AlgebraicNumber, den: &BigInt) -> Option<Pair> {
    let (a, b) = x.coords();
    let d = Rational::from_integer(den.clone());
    let (a, b) = (a * &d, b * &d);
    if !a.is_integer() || !b.is_integer() {
        return None;
    }
    let p0 = a.to_integer().to_i128()?;
    let p1 = b.to_integer().to_i128()?;
    (p0.abs() < ENTRY_LIMIT && p1.abs() < ENTRY_LIMIT).then_some((p0, p1))
}

impl StarContext {
    pub fn new(h: Graph, mu: AlgebraicNumber, tag: Option<(usize, usize)>) -> Result<Self> {
        let q = h.order();
        if q > 64 {
            return Err(Error::TooLarge(format!("star complement of order {q} exceeds 64")));
        }
        if let Some((t, s)) = tag {
            if t == 0 || s < t || h != complete_bipartite(t, s) {
                return Err(Error::BadTag { t, s });
            }
        }
        let c = h.adjacency_matrix();
        let (gen_n, gen_m) = scaled_resolvent(&c, &mu)?;
        let (n, mval, closed_form) = match tag {
            Some((t, s)) => {
                let (fast_n, fast_m) = kts_resolvent(&c, &mu, (t * s) as i64);
                if fast_m.is_zero() {
                    (gen_n, gen_m, false)
                } else {
                    // the two resolvents agree up to the ratio of their m(μ)
                    assert!(
                        fast_n.scale(&gen_m) == gen_n.scale(&fast_m),
                        "closed-form resolvent disagrees with the generic one"
                    );
                    (fast_n, fast_m, true)
                }
            }
            None => (gen_n, gen_m, false),
        };
        let nj: Vec<AlgebraicNumber> = (0..q)
            .map(|i| (0..q).fold(AlgebraicNumber::zero(), |acc, j| &acc + n.get(i, j)))
            .collect();
        let scaled = Self::scale_down(&n, &nj, &mu, &mval)?;
        Ok(StarContext {
            h,
            mu,
            n,
            mval,
            nj,
            tag,
            closed_form,
            scaled,
        })
    }

    fn scale_down(
        n: &FieldMatrix,
        nj: &[AlgebraicNumber],
        mu: &AlgebraicNumber,
        mval: &AlgebraicNumber,
    ) -> Result<Scaled> {
        let q = n.rows();
        let mut den = BigInt::one();
        let entries = (0..q).flat_map(|i| (0..q).map(move |j| (i, j)));
        for (i, j) in entries {
            let (a, b) = n.get(i, j).coords();
            den = den.lcm(a.denom()).lcm(b.denom());
        }
        let too_large = || Error::TooLarge("scaled resolvent entries exceed the integer fast path".into());
        let mut flat = Vec::with_capacity(q * q);
        for i in 0..q {
            for j in 0..q {
                flat.push(to_pair(n.get(i, j), &den).ok_or_else(too_large)?);
            }
        }
        let nj = nj
            .iter()
            .map(|x| to_pair(x, &den).ok_or_else(too_large))
            .collect::<Result<Vec<_>>>()?;
        let neg_m = -mval;
        Ok(Scaled {
            self_target: to_pair(&(mval * mu), &den),
            adj_target: to_pair(&neg_m, &den),
            ones_target: to_pair(&neg_m, &den),
            den,
            n: flat,
            nj,
        })
    }

    pub fn h(&self) -> &Graph {
        &self.h
    }

    pub fn order(&self) -> usize {
        self.h.order()
    }

    pub fn mu(&self) -> &AlgebraicNumber {
        &self.mu
    }

    pub fn resolvent(&self) -> &FieldMatrix {
        &self.n
    }

    pub fn mval(&self) -> &AlgebraicNumber {
        &self.mval
    }

    /// Cached `N·j`.
    pub fn ones_pairing(&self) -> &[AlgebraicNumber] {
        &self.nj
    }

    pub fn tag(&self) -> Option<(usize, usize)> {
        self.tag
    }

    /// Whether `N` is the closed form `C² + μC + (μ² − ts)I`.
    pub fn closed_form(&self) -> bool {
        self.closed_form
    }

    /// `μ ∈ {−1, 0}`, where star sets may repeat neighbourhoods.
    pub fn mu_allows_duplicates(&self) -> bool {
        matches!(self.mu.to_i64(), Some(-1 | 0))
    }

    pub(crate) fn field(&self) -> NumberField {
        self.mu.field()
    }

    pub(crate) fn unscale(&self, p: Pair) -> AlgebraicNumber {
        let d = &self.scaled.den;
        AlgebraicNumber::from_coords(
            if p.1 == 0 { NumberField::Rational } else { self.field() },
            Rational::new(BigInt::from(p.0), d.clone()),
            Rational::new(BigInt::from(p.1), d.clone()),
        )
    }

    pub(crate) fn entry(&self, i: usize, j: usize) -> Pair {
        self.scaled.n[i * self.order() + j]
    }

    /// `N·x` in scaled integer form.
    pub(crate) fn apply(&self, x: u64) -> Vec<Pair> {
        let q = self.order();
        (0..q)
            .map(|i| bits(x).fold((0, 0), |acc, k| add(acc, self.entry(i, k))))
            .collect()
    }

    pub(crate) fn ones_scaled(&self, x: u64) -> Pair {
        bits(x).fold((0, 0), |acc, k| add(acc, self.scaled.nj[k]))
    }

    /// `xᵀ N y`.
    pub fn pairing(&self, x: u64, y: u64) -> AlgebraicNumber {
        let nx = self.apply(x);
        self.unscale(bits(y).fold((0, 0), |acc, k| add(acc, nx[k])))
    }
}

/// Set bit positions of a mask, ascending.
pub(crate) fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let k = x.trailing_zeros() as usize;
            x &= x - 1;
            k
        })
    })
}

pub fn make_context(h: Graph, mu: AlgebraicNumber, tag: Option<(usize, usize)>) -> Result<StarContext> {
    StarContext::new(h, mu, tag)
}
