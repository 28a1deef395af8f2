//! Exact matrices over the integers and over a number field.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::number::{AlgebraicNumber, NumberField, Rational};
use super::poly::IntPolynomial;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.data.clone();
        let mut sign = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    m.swap(k * n + j, p * n + j);
                }
                sign = !sign;
            }
            let pivot = m[k * n + k].clone();
            for i in k + 1..n {
                let lead = m[i * n + k].clone();
                for j in k + 1..n {
                    let v = &pivot * &m[i * n + j] - &lead * &m[k * n + j];
                    m[i * n + j] = v / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = pivot;
        }
        let d = m[n * n - 1].clone();
        if sign {
            -d
        } else {
            d
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `det(xI − A)`.
///
/// Evaluates `det(kI − A)` for `k = 0..=n` with Bareiss elimination and
/// recovers the coefficients by Newton interpolation over the rationals.
pub fn char_polynomial(a: &IntMatrix) -> IntPolynomial {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    let n = a.rows;
    let values: Vec<BigInt> = (0..=n)
        .into_par_iter()
        .map(|k| {
            let mut m = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    let v = if i == j {
                        BigInt::from(k) - a.get(i, j)
                    } else {
                        -a.get(i, j)
                    };
                    m.set(i, j, v);
                }
            }
            m.determinant()
        })
        .collect();
    interpolate_integer_points(&values)
}

/// Polynomial of degree ≤ len−1 through `(k, values[k])`, `k = 0, 1, …`.
fn interpolate_integer_points(values: &[BigInt]) -> IntPolynomial {
    let n = values.len();
    // divided differences at nodes 0..n−1
    let mut dd: Vec<Rational> = values.iter().map(|v| Rational::from_integer(v.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / Rational::from_integer(BigInt::from(level));
        }
    }
    // Horner on the Newton basis: p = dd0 + (x−0)(dd1 + (x−1)(dd2 + …))
    let mut coeffs: Vec<Rational> = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        // coeffs ← coeffs·(x − i) + dd[i]
        let mut next = vec![Rational::zero(); n];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k + 1 < n {
                next[k + 1] += c;
            }
            next[k] -= c * Rational::from_integer(BigInt::from(i));
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    IntPolynomial::new(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "characteristic polynomial coefficient not integral");
                c.to_integer()
            })
            .collect(),
    )
}

/// Monic minimal polynomial of an integer matrix over the rationals.
///
/// Finds the first power `A^d` that is a rational combination of
/// `I, A, …, A^{d−1}` by incremental elimination on the flattened powers.
pub fn minimal_polynomial(a: &IntMatrix) -> IntPolynomial {
    assert!(a.is_square(), "minimal polynomial of a non-square matrix");
    let n = a.rows;
    if n == 0 {
        return IntPolynomial::one();
    }
    // Each basis row: (vector, pivot column, combination of powers it equals).
    let mut basis: Vec<(Vec<Rational>, usize, Vec<Rational>)> = Vec::new();
    let mut power = IntMatrix::identity(n);
    for d in 0..=n {
        let mut v: Vec<Rational> = power.data.iter().map(|x| Rational::from_integer(x.clone())).collect();
        let mut combo = vec![Rational::zero(); d + 1];
        combo[d] = Rational::one();
        for (bv, pivot, bc) in &basis {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = &v[*pivot] / &bv[*pivot];
            for (x, y) in v.iter_mut().zip(bv) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (k, y) in bc.iter().enumerate() {
                combo[k] -= &f * y;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                basis.push((v, pivot, combo));
                power = power.mul(a);
            }
            None => {
                // combo is monic in A^d with rational lower coefficients;
                // the minimal polynomial of an integer matrix is integral.
                return IntPolynomial::new(
                    combo
                        .into_iter()
                        .map(|c| {
                            assert!(c.is_integer(), "minimal polynomial coefficient not integral");
                            c.to_integer()
                        })
                        .collect(),
                );
            }
        }
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

/// Dense matrix over one number field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    field: NumberField,
    data: Vec<AlgebraicNumber>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize, field: NumberField) -> Self {
        FieldMatrix {
            rows,
            cols,
            field,
            data: vec![AlgebraicNumber::zero(); rows * cols],
        }
    }

    pub fn from_int(m: &IntMatrix, field: NumberField) -> Self {
        FieldMatrix {
            rows: m.rows,
            cols: m.cols,
            field,
            data: m.data.iter().map(|x| AlgebraicNumber::from_bigint(x.clone())).collect(),
        }
    }

    /// `c·I − m` for a square integer matrix.
    pub fn shifted(m: &IntMatrix, c: &AlgebraicNumber) -> Self {
        assert!(m.is_square());
        let mut out = FieldMatrix::from_int(m, c.field());
        for x in out.data.iter_mut() {
            *x = -&*x;
        }
        for i in 0..m.rows {
            let k = i * m.cols + i;
            out.data[k] = &out.data[k] + c;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraicNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: AlgebraicNumber) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = FieldMatrix::zeros(self.cols, self.rows, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = FieldMatrix::zeros(self.rows, rhs.cols, join(self.field, rhs.field));
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * rhs.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &AlgebraicNumber) -> FieldMatrix {
        FieldMatrix {
            rows: self.rows,
            cols: self.cols,
            field: join(self.field, c.field()),
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// `true` iff the matrix equals `c·I`.
    pub fn is_scalar(&self, c: &AlgebraicNumber) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v == c
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Rank by exact Gaussian elimination, pivoting on the first nonzero entry.
    pub fn rank(&self) -> usize {
        let mut m = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
                continue;
            };
            if p != rank {
                for j in 0..cols {
                    m.swap(p * cols + j, rank * cols + j);
                }
            }
            let inv = m[rank * cols + col].inverse().expect("nonzero pivot");
            for r in rank + 1..rows {
                let lead = &m[r * cols + col];
                if lead.is_zero() {
                    continue;
                }
                let f = lead * &inv;
                for j in col..cols {
                    let sub = &f * &m[rank * cols + j];
                    if !sub.is_zero() {
                        m[r * cols + j] = &m[r * cols + j] - &sub;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

fn join(f: NumberField, g: NumberField) -> NumberField {
    match (f, g) {
        (NumberField::Rational, x) | (x, NumberField::Rational) => x,
        (x, y) => {
            assert_eq!(x, y, "matrices over different fields");
            x
        }
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Rank over the field of the matrix entries.
pub fn field_rank(m: &FieldMatrix) -> usize {
    m.rank()
}

/// `N = m(μ)(μI − C)^{-1}` as a polynomial in `C`, together with `m(μ)`.
///
/// `m` is the minimal polynomial of `C`. With `m(x) = Σ c_k x^k`, `N = q(C)`
/// where `q(x) = (m(x) − m(μ))/(x − μ)`; its coefficients are
/// `a_d = 1`, `a_{d−i} = μ^i + c_d μ^{i−1} + … + c_{d−i+1}`.
pub fn scaled_resolvent(c: &IntMatrix, mu: &AlgebraicNumber) -> Result<(FieldMatrix, AlgebraicNumber)> {
    let m = minimal_polynomial(c);
    let mval = m.eval(mu);
    if mval.is_zero() {
        return Err(Error::MuIsEigenvalue);
    }
    let coeffs = resolvent_coefficients(&m, mu);
    let n = c.rows();
    let field = mu.field();
    let mut out = FieldMatrix::zeros(n, n, field);
    let mut power = IntMatrix::identity(n);
    for (k, a) in coeffs.iter().enumerate() {
        if k > 0 {
            power = power.mul(c);
        }
        if a.is_zero() {
            continue;
        }
        for (dst, p) in out.data.iter_mut().zip(&power.data) {
            if !p.is_zero() {
                *dst = &*dst + &(a * &AlgebraicNumber::from_bigint(p.clone()));
            }
        }
    }
    let check = out.mul(&FieldMatrix::shifted(c, mu));
    assert!(check.is_scalar(&mval), "resolvent identity N(muI - C) = m(mu)I failed");
    Ok((out, mval))
}

/// Coefficients `a_0..a_d` (ascending) of `(m(x) − m(μ))/(x − μ)`.
pub fn resolvent_coefficients(m: &IntPolynomial, mu: &AlgebraicNumber) -> Vec<AlgebraicNumber> {
    let c = m.coeffs();
    let deg = c.len() - 1;
    // synthetic division from the top
    let mut out = vec![AlgebraicNumber::zero(); deg];
    let mut acc = AlgebraicNumber::zero();
    for k in (1..=deg).rev() {
        acc = &(&acc * mu) + &AlgebraicNumber::from_bigint(c[k].clone());
        out[k - 1] = acc.clone();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kts(t: usize, s: usize) -> IntMatrix {
        let n = t + s;
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..t {
            for j in t..n {
                m.set(i, j, BigInt::one());
                m.set(j, i, BigInt::one());
            }
        }
        m
    }

    fn cycle(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            let j = (i + 1) % n;
            m.set(i, j, BigInt::one());
            m.set(j, i, BigInt::one());
        }
        m
    }

    /// Brute-force determinant by permutation expansion (test oracle).
    fn leibniz(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = 0i64;
        fn rec(k: usize, perm: &mut Vec<usize>, m: &[Vec<i64>], total: &mut i64) {
            let n = perm.len();
            if k == n {
                let mut inv = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        if perm[i] > perm[j] {
                            inv += 1;
                        }
                    }
                }
                let prod: i64 = (0..n).map(|i| m[i][perm[i]]).product();
                *total += if inv % 2 == 0 { prod } else { -prod };
                return;
            }
            for i in k..n {
                perm.swap(k, i);
                rec(k + 1, perm, m, total);
                perm.swap(k, i);
            }
        }
        rec(0, &mut perm, m, &mut total);
        total
    }

    #[test]
    fn bareiss_matches_leibniz() {
        let rows = vec![
            vec![2, -1, 0, 3, 1],
            vec![1, 0, 4, -2, 2],
            vec![0, 5, -3, 1, 0],
            vec![3, 2, 1, 0, -1],
            vec![-2, 0, 1, 1, 4],
        ];
        assert_eq!(IntMatrix::from_rows(&rows).determinant(), BigInt::from(leibniz(&rows)));
        let singular = vec![vec![1, 2], vec![2, 4]];
        assert!(IntMatrix::from_rows(&singular).determinant().is_zero());
        let needs_swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(IntMatrix::from_rows(&needs_swap).determinant(), BigInt::from(-1));
    }

    #[test]
    fn char_poly_examples() {
        assert_eq!(char_polynomial(&kts(3, 3)), IntPolynomial::from_i64(&[0, 0, 0, 0, -9, 0, 1]));
        assert_eq!(char_polynomial(&IntMatrix::zeros(1, 1)), IntPolynomial::from_i64(&[0, 1]));
        assert_eq!(char_polynomial(&IntMatrix::zeros(0, 0)), IntPolynomial::one());
        assert_eq!(char_polynomial(&cycle(5)), IntPolynomial::from_i64(&[-2, 5, 0, -5, 0, 1]));
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(minimal_polynomial(&kts(3, 4)), IntPolynomial::from_i64(&[0, -12, 0, 1]));
        assert_eq!(minimal_polynomial(&IntMatrix::identity(4)), IntPolynomial::from_i64(&[-1, 1]));
        // (x − 2)(x² + x − 1): the char poly divided by (x − 2) is (x² + x − 1)²
        let c5 = minimal_polynomial(&cycle(5));
        assert_eq!(c5, IntPolynomial::from_i64(&[2, -3, -1, 1]));
        let cp = char_polynomial(&cycle(5));
        assert!(cp.exact_div(&c5).is_some());
    }

    #[test]
    fn resolvent_kts_matches_closed_form() {
        // K_{3,3}, μ = 1: N = C² + C − 8I, m(1) = −8
        let c = kts(3, 3);
        let mu = AlgebraicNumber::from_int(1);
        let (n, mval) = scaled_resolvent(&c, &mu).unwrap();
        assert_eq!(mval, AlgebraicNumber::from_int(-8));
        let c2 = c.mul(&c);
        for i in 0..6 {
            for j in 0..6 {
                let expect = c2.get(i, j) + c.get(i, j) - if i == j { BigInt::from(8) } else { BigInt::zero() };
                assert_eq!(n.get(i, j), &AlgebraicNumber::from_bigint(expect));
            }
        }
        assert_eq!(scaled_resolvent(&c, &AlgebraicNumber::from_int(3)), Err(Error::MuIsEigenvalue));
    }

    #[test]
    fn resolvent_single_vertex() {
        let (n, mval) = scaled_resolvent(&IntMatrix::zeros(1, 1), &AlgebraicNumber::from_int(2)).unwrap();
        assert_eq!(mval, AlgebraicNumber::from_int(2));
        assert_eq!(n.get(0, 0), &AlgebraicNumber::one());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(FieldMatrix::zeros(3, 3, NumberField::Rational).rank(), 0);
        let phi: AlgebraicNumber = "root(-1,1):pos".parse().unwrap();
        let m = FieldMatrix::shifted(&cycle(5), &phi);
        assert_eq!(m.rank(), 3);
    }
}
