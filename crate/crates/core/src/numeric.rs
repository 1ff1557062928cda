//! Exact scalar arithmetic: arbitrary-precision rationals in canonical
//! lowest-terms form, plus the constrained numeric types (proportions and
//! finite probability simplexes) everything else consumes.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number, always stored in lowest terms with a positive
/// denominator, so equality is structural.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `num/den` in canonical form. The sign is carried by the
    /// numerator.
    pub fn new(num: i64, den: i64) -> Result<Rational> {
        if den == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Rational> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn from_int(n: i64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_nat(n: u64) -> Rational {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Rational {
        Rational(BigRational::zero())
    }

    pub fn one() -> Rational {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    /// `Some(n)` when the value is the integer `n` with 0 <= n.
    pub fn to_natural(&self) -> Option<u64> {
        use num::ToPrimitive;
        if self.0.is_integer() && !self.is_negative() {
            self.0.numer().to_u64()
        } else {
            None
        }
    }

    pub fn to_integer(&self) -> Option<i64> {
        use num::ToPrimitive;
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Display for Rational {
    /// Lowest-terms text: `-55/68`, integers without the `/1` suffix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Parses `-?digits(/digits)?`; the result is renormalized, so `6/10`
    /// parses to `3/5`.
    fn from_str(s: &str) -> Result<Rational> {
        let bad = || Error::BadRationalLiteral(s.to_string());
        let (num_text, den_text) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let valid = |t: &str| {
            let t = t.strip_prefix('-').unwrap_or(t);
            !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(num_text) || den_text.is_some_and(|d| d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit())) {
            return Err(bad());
        }
        let num = BigInt::from_str(num_text).map_err(|_| bad())?;
        let den = match den_text {
            Some(d) => BigInt::from_str(d).map_err(|_| bad())?,
            None => BigInt::one(),
        };
        Rational::from_big(num, den)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
    };
}

rational_binop!(Add, add);
rational_binop!(Sub, sub);
rational_binop!(Mul, mul);

impl Div for &Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Rational::recip`] when zero is possible.
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

/// A rational constrained to `[0, 1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize)]
#[serde(transparent)]
pub struct Proportion(Rational);

impl Proportion {
    pub fn new(value: Rational) -> Result<Proportion> {
        if value.is_negative() || value > Rational::one() {
            return Err(Error::NotAProportion(value.to_string()));
        }
        Ok(Proportion(value))
    }

    pub fn zero() -> Proportion {
        Proportion(Rational::zero())
    }

    pub fn one() -> Proportion {
        Proportion(Rational::one())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    /// `1 - p`.
    pub fn complement(&self) -> Proportion {
        Proportion(&Rational::one() - &self.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0 == Rational::one()
    }
}

impl fmt::Display for Proportion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<'de> Deserialize<'de> for Proportion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Proportion, D::Error> {
        let q = Rational::deserialize(deserializer)?;
        Proportion::new(q).map_err(|e| D::Error::custom(format!("{e}")))
    }
}

/// A nonempty vector of nonnegative rationals summing to exactly one.
/// Zero weights are allowed; distribution canonicalization drops the
/// branches they would select.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Simplex(Vec<Rational>);

impl Simplex {
    pub fn new(weights: Vec<Rational>) -> Result<Simplex> {
        if weights.is_empty() {
            return Err(Error::EmptySimplex);
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::NegativeWeight(w.to_string()));
        }
        let total = weights.iter().fold(Rational::zero(), |acc, w| &acc + w);
        if total != Rational::one() {
            return Err(Error::MassNotOne(total.to_string()));
        }
        Ok(Simplex(weights))
    }

    /// `k` equal weights `1/k`.
    pub fn uniform(k: u64) -> Result<Simplex> {
        if k == 0 {
            return Err(Error::EmptySimplex);
        }
        let w = Rational::new(1, k as i64).expect("k > 0");
        Ok(Simplex(vec![w; k as usize]))
    }

    /// The two-point simplex `[p, 1-p]`.
    pub fn from_proportion(p: &Proportion) -> Simplex {
        Simplex(vec![p.value().clone(), p.complement().value().clone()])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }
}

/// `m/(m+n)`, the success proportion of an urn with `m` marked and `n`
/// unmarked items.
pub fn count_ratio(m: u64, n: u64) -> Result<Proportion> {
    if m == 0 && n == 0 {
        return Err(Error::UndefinedRatio);
    }
    let q = Rational::from_big(BigInt::from(m), BigInt::from(m) + BigInt::from(n))?;
    Proportion::new(q)
}

/// Compares consistently with subtraction: `cmp(a, b) == (a - b).cmp(0)`.
pub fn rational_cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}
