use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::number::AlgebraicNumber;

/// Dense polynomial with integer coefficients, lowest degree first.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has an
/// empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x − root`
    pub fn linear(root: i64) -> Self {
        Self::from_i64(&[-root, 1])
    }

    /// `∏ (x − λ)^m` over integer roots.
    pub fn from_integer_roots(roots: &[(i64, usize)]) -> Self {
        roots.iter().fold(Self::one(), |acc, &(r, m)| {
            (0..m).fold(acc, |p, _| &p * &Self::linear(r))
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &AlgebraicNumber) -> AlgebraicNumber {
        self.coeffs.iter().rev().fold(AlgebraicNumber::zero(), |acc, c| {
            &(&acc * x) + &AlgebraicNumber::from_bigint(c.clone())
        })
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (IntPolynomial::default(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Exact quotient by a monic divisor, `None` if it does not divide.
    pub fn exact_div(&self, divisor: &IntPolynomial) -> Option<IntPolynomial> {
        let (q, r) = self.div_rem_monic(divisor);
        r.is_zero().then_some(q)
    }

    /// Integer roots with multiplicities, ascending, and the cofactor left
    /// after dividing them out.
    pub fn integer_roots(&self) -> (Vec<(i64, usize)>, IntPolynomial) {
        let mut rest = self.clone();
        let mut roots = Vec::new();
        if !self.is_monic() {
            return (roots, rest);
        }
        let mut zero_mult = 0;
        while rest.coeffs.first().is_some_and(|c| c.is_zero()) {
            rest.coeffs.remove(0);
            zero_mult += 1;
        }
        let bound = rest.root_bound();
        let constant = rest.coeffs.first().cloned().unwrap_or_default();
        let mut found: Vec<(i64, usize)> = Vec::new();
        if zero_mult > 0 {
            found.push((0, zero_mult));
        }
        if rest.degree().unwrap_or(0) > 0 {
            for cand in 1..=bound {
                for r in [cand, -cand] {
                    if !constant.is_multiple_of(&BigInt::from(r)) {
                        continue;
                    }
                    let lin = IntPolynomial::linear(r);
                    let mut m = 0;
                    while let Some(q) = rest.exact_div(&lin) {
                        rest = q;
                        m += 1;
                    }
                    if m > 0 {
                        found.push((r, m));
                    }
                }
            }
        }
        found.sort();
        roots.extend(found);
        (roots, rest)
    }

    /// Fujiwara bound on the absolute value of any root of a monic polynomial.
    fn root_bound(&self) -> i64 {
        let d = match self.degree() {
            Some(d) if d > 0 => d,
            _ => return 0,
        };
        let mut best = BigInt::zero();
        for k in 1..=d {
            let c = self.coeffs[d - k].abs();
            if c.is_zero() {
                continue;
            }
            let mut r: BigInt = c.nth_root(k as u32);
            if r.pow(k as u32) < c {
                r += 1;
            }
            if r > best {
                best = r;
            }
        }
        (best * 2u32).to_i64().unwrap_or(i64::MAX)
    }

    /// Coefficients as decimal strings, lowest degree first.
    pub fn to_string_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl<'a> std::ops::Mul<&'a IntPolynomial> for &'a IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || k == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string_coeffs().serialize(s)
    }
}
