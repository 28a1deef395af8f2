//! Exact scalars: rationals and elements of a real quadratic field.
//!
//! An [`AlgebraicNumber`] is stored as `a + b·θ` where `θ` is one chosen real
//! root of a monic integer quadratic `x² + c1·x + c0`. Rational numbers live in
//! the degree-one field and always have `b = 0`. Numbers from the rational
//! field mix freely with numbers from any quadratic field; mixing two
//! different quadratic fields is a logic error and panics.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational with a positive, coprime denominator.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Which real root of the defining quadratic is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootSign {
    Neg,
    Pos,
}

/// `Q(θ)` with `θ² + c1·θ + c0 = 0`, `θ = (−c1 ± √D)/2`, `D = c1² − 4c0`.
///
/// Construction guarantees `D > 0` and `D` is not a perfect square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct QuadField {
    c0: i64,
    c1: i64,
    sign: RootSign,
}

impl QuadField {
    pub fn c0(&self) -> i64 {
        self.c0
    }

    pub fn c1(&self) -> i64 {
        self.c1
    }

    pub fn sign(&self) -> RootSign {
        self.sign
    }

    pub fn discriminant(&self) -> i64 {
        self.c1 * self.c1 - 4 * self.c0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NumberField {
    Rational,
    Quadratic(QuadField),
}

impl NumberField {
    /// The field containing both operands.
    fn join(self, other: NumberField) -> NumberField {
        match (self, other) {
            (NumberField::Rational, f) | (f, NumberField::Rational) => f,
            (f, g) if f == g => f,
            (f, g) => panic!("arithmetic across distinct number fields: {f:?} and {g:?}"),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            NumberField::Rational => 1,
            NumberField::Quadratic(_) => 2,
        }
    }

    /// Monic minimal polynomial of the generator, ascending coefficients.
    /// For the rational field this is `x`.
    pub fn min_poly(&self) -> Vec<i64> {
        match self {
            NumberField::Rational => vec![0, 1],
            NumberField::Quadratic(q) => vec![q.c0, q.c1, 1],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraicNumber {
    field: NumberField,
    a: Rational,
    b: Rational,
}

impl AlgebraicNumber {
    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(Rational::from_integer(n))
    }

    pub fn from_rational(q: Rational) -> Self {
        AlgebraicNumber {
            field: NumberField::Rational,
            a: q,
            b: Rational::zero(),
        }
    }

    /// The chosen real root of `x² + c1·x + c0`.
    ///
    /// Rational roots are returned in the rational field; a negative
    /// discriminant is rejected.
    pub fn quadratic_root(c0: i64, c1: i64, sign: RootSign) -> Result<Self, Error> {
        let disc = c1
            .checked_mul(c1)
            .and_then(|s| c0.checked_mul(4).and_then(|f| s.checked_sub(f)))
            .ok_or_else(|| Error::Parse(format!("coefficients too large: root({c0},{c1})")))?;
        if disc < 0 {
            return Err(Error::NotReal { c0, c1 });
        }
        let sq = disc.sqrt();
        if sq * sq == disc {
            let s = match sign {
                RootSign::Pos => sq,
                RootSign::Neg => -sq,
            };
            return Ok(Self::from_rational(Rational::new(
                BigInt::from(-c1 + s),
                BigInt::from(2),
            )));
        }
        Ok(AlgebraicNumber {
            field: NumberField::Quadratic(QuadField { c0, c1, sign }),
            a: Rational::zero(),
            b: Rational::one(),
        })
    }

    /// Embed a rational into `field`. Elements with no `θ` part are stored in
    /// the rational field so equality is representation-independent.
    pub fn in_field(field: NumberField, q: Rational) -> Self {
        AlgebraicNumber {
            field,
            a: q,
            b: Rational::zero(),
        }
        .normalized()
    }

    /// `a + b·θ` in `field`; `b` must be zero for the rational field.
    pub fn from_coords(field: NumberField, a: Rational, b: Rational) -> Self {
        assert!(
            field != NumberField::Rational || b.is_zero(),
            "rational field has no θ coordinate"
        );
        AlgebraicNumber { field, a, b }.normalized()
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    /// Coordinates `(a, b)` of `a + b·θ`.
    pub fn coords(&self) -> (&Rational, &Rational) {
        (&self.a, &self.b)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.a.clone())
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.a.to_integer())
    }

    pub fn to_i64(&self) -> Option<i64> {
        self.to_integer().and_then(|n| n.to_i64())
    }

    /// Exact sign of the real number.
    pub fn signum(&self) -> Ordering {
        match self.field {
            NumberField::Rational => self.a.cmp(&Rational::zero()),
            NumberField::Quadratic(q) => {
                // a + bθ = p + s·√D with p = a − b·c1/2 and s = ±b/2.
                let half = Rational::new(BigInt::from(1), BigInt::from(2));
                let p = &self.a - &self.b * rat(q.c1) * &half;
                let mut s = &self.b * &half;
                if q.sign == RootSign::Neg {
                    s = -s;
                }
                let sp = p.cmp(&Rational::zero());
                let ss = s.cmp(&Rational::zero());
                if ss == Ordering::Equal {
                    return sp;
                }
                if sp == Ordering::Equal || sp == ss {
                    return ss;
                }
                let lhs = &p * &p;
                let rhs = &s * &s * rat(q.discriminant());
                if lhs > rhs {
                    sp
                } else {
                    ss
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        match self.field {
            NumberField::Rational => Some(Self::from_rational(self.a.recip())),
            NumberField::Quadratic(q) => {
                // conj(a + bθ) = (a − b·c1) − bθ, norm = a² − ab·c1 + b²·c0
                let c0 = rat(q.c0);
                let c1 = rat(q.c1);
                let norm = &self.a * &self.a - &self.a * &self.b * &c1 + &self.b * &self.b * &c0;
                let ca = (&self.a - &self.b * &c1) / &norm;
                let cb = -(&self.b) / &norm;
                Some(AlgebraicNumber {
                    field: self.field,
                    a: ca,
                    b: cb,
                })
            }
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.inverse().map(|inv| self * &inv)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = AlgebraicNumber::in_field(self.field, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Galois conjugate; identity on rationals.
    pub fn conjugate(&self) -> Self {
        match self.field {
            NumberField::Rational => self.clone(),
            NumberField::Quadratic(q) => {
                let field = NumberField::Quadratic(QuadField {
                    sign: match q.sign {
                        RootSign::Pos => RootSign::Neg,
                        RootSign::Neg => RootSign::Pos,
                    },
                    ..q
                });
                AlgebraicNumber {
                    field,
                    a: self.a.clone(),
                    b: self.b.clone(),
                }
            }
        }
    }

    /// Monic minimal polynomial over the rationals, ascending coefficients.
    pub fn min_poly(&self) -> Vec<Rational> {
        match self.field {
            NumberField::Quadratic(q) if !self.b.is_zero() => {
                // (x − α)(x − ᾱ) with α + ᾱ = 2a − b·c1, αᾱ = a² − ab·c1 + b²·c0
                let c0 = rat(q.c0);
                let c1 = rat(q.c1);
                let trace = rat(2) * &self.a - &self.b * &c1;
                let norm = &self.a * &self.a - &self.a * &self.b * &c1 + &self.b * &self.b * &c0;
                vec![norm, -trace, Rational::one()]
            }
            _ => vec![-self.a.clone(), Rational::one()],
        }
    }

    fn normalized(mut self) -> Self {
        if self.b.is_zero() {
            self.field = NumberField::Rational;
        }
        self
    }
}

impl Default for AlgebraicNumber {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for AlgebraicNumber {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for AlgebraicNumber {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl PartialOrd for AlgebraicNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraicNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn add(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.join(rhs.field),
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
        .normalized()
    }
}

impl<'a> Sub<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn sub(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field.join(rhs.field),
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
        .normalized()
    }
}

impl<'a> Mul<&'a AlgebraicNumber> for &'a AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn mul(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
        let field = self.field.join(rhs.field);
        match field {
            NumberField::Rational => AlgebraicNumber {
                field,
                a: &self.a * &rhs.a,
                b: Rational::zero(),
            },
            NumberField::Quadratic(q) => {
                // θ² = −c1·θ − c0
                let bd = &self.b * &rhs.b;
                let a = &self.a * &rhs.a - &bd * rat(q.c0);
                let b = &self.a * &rhs.b + &self.b * &rhs.a - &bd * rat(q.c1);
                AlgebraicNumber { field, a, b }.normalized()
            }
        }
    }
}

impl Neg for &AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        AlgebraicNumber {
            field: self.field,
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for AlgebraicNumber {
    type Output = AlgebraicNumber;
    fn neg(self) -> AlgebraicNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a AlgebraicNumber> for AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: &AlgebraicNumber) -> AlgebraicNumber {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<AlgebraicNumber> for &'a AlgebraicNumber {
            type Output = AlgebraicNumber;
            fn $m(self, rhs: AlgebraicNumber) -> AlgebraicNumber {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&AlgebraicNumber> for AlgebraicNumber {
    fn add_assign(&mut self, rhs: &AlgebraicNumber) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&AlgebraicNumber> for AlgebraicNumber {
    fn sub_assign(&mut self, rhs: &AlgebraicNumber) {
        *self = &*self - rhs;
    }
}

/// Serialized as its display string, e.g. `"-11/5"` or `"-1/2 + 1/2*sqrt(5)"`.
impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Display for AlgebraicNumber {
    /// Rationals print as `p` or `p/q`; quadratic elements as `p + s*sqrt(D)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            NumberField::Quadratic(q) if !self.b.is_zero() => {
                let half = Rational::new(BigInt::from(1), BigInt::from(2));
                let p = &self.a - &self.b * rat(q.c1) * &half;
                let mut s = &self.b * &half;
                if q.sign == RootSign::Neg {
                    s = -s;
                }
                let d = q.discriminant();
                let sqrt = if s.is_one() {
                    format!("sqrt({d})")
                } else if s == -Rational::one() {
                    format!("-sqrt({d})")
                } else {
                    format!("{s}*sqrt({d})")
                };
                if p.is_zero() {
                    write!(f, "{sqrt}")
                } else if s.is_negative() {
                    write!(f, "{p} - {}", sqrt.trim_start_matches('-'))
                } else {
                    write!(f, "{p} + {sqrt}")
                }
            }
            _ => write!(f, "{}", self.a),
        }
    }
}

impl FromStr for AlgebraicNumber {
    type Err = Error;

    /// Accepts `-2`, `3/4` or `root(c0,c1):pos|neg` (a real root of
    /// `x² + c1·x + c0`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse number `{s}`"));
        if let Some(rest) = s.strip_prefix("root(") {
            let (args, sign) = rest.split_once("):").ok_or_else(bad)?;
            let (c0, c1) = args.split_once(',').ok_or_else(bad)?;
            let c0: i64 = c0.trim().parse().map_err(|_| bad())?;
            let c1: i64 = c1.trim().parse().map_err(|_| bad())?;
            let sign = match sign.trim() {
                "pos" => RootSign::Pos,
                "neg" => RootSign::Neg,
                _ => return Err(bad()),
            };
            return AlgebraicNumber::quadratic_root(c0, c1, sign);
        }
        if let Some((p, q)) = s.split_once('/') {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            return Ok(AlgebraicNumber::from_rational(Rational::new(p, q)));
        }
        let n: BigInt = s.parse().map_err(|_| bad())?;
        Ok(AlgebraicNumber::from_bigint(n))
    }
}
