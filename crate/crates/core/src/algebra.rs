//! The codomain of random variables: scalar and fixed-dimension vector
//! measurement values over the rational field, with componentwise algebra,
//! a trace back to scalars, and a seminorm.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::Rational;

/// Shape of a measurement value: a scalar or a vector of fixed dimension.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlgebraShape {
    Scalar,
    Vector(usize),
}

impl AlgebraShape {
    pub fn vector(dim: usize) -> Result<AlgebraShape> {
        if dim == 0 {
            return Err(Error::ShapeError("vector dimension must be at least 1".into()));
        }
        Ok(AlgebraShape::Vector(dim))
    }
}

impl fmt::Display for AlgebraShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraShape::Scalar => write!(f, "scalar"),
            AlgebraShape::Vector(d) => write!(f, "vector[{d}]"),
        }
    }
}

/// A measurement value. Vector entries are componentwise in every
/// operation; the multiplicative unit is the all-ones vector.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MValue {
    Scalar(Rational),
    Vector(Vec<Rational>),
}

impl MValue {
    pub fn scalar(q: Rational) -> MValue {
        MValue::Scalar(q)
    }

    pub fn vector(entries: Vec<Rational>) -> Result<MValue> {
        if entries.is_empty() {
            return Err(Error::ShapeError("vector dimension must be at least 1".into()));
        }
        Ok(MValue::Vector(entries))
    }

    pub fn shape(&self) -> AlgebraShape {
        match self {
            MValue::Scalar(_) => AlgebraShape::Scalar,
            MValue::Vector(v) => AlgebraShape::Vector(v.len()),
        }
    }

    /// The additive identity of the given shape.
    pub fn zero(shape: AlgebraShape) -> MValue {
        match shape {
            AlgebraShape::Scalar => MValue::Scalar(Rational::zero()),
            AlgebraShape::Vector(d) => MValue::Vector(vec![Rational::zero(); d]),
        }
    }

    /// The multiplicative identity: 1, or the all-ones vector.
    pub fn one(shape: AlgebraShape) -> MValue {
        match shape {
            AlgebraShape::Scalar => MValue::Scalar(Rational::one()),
            AlgebraShape::Vector(d) => MValue::Vector(vec![Rational::one(); d]),
        }
    }

    pub fn as_scalar(&self) -> Option<&Rational> {
        match self {
            MValue::Scalar(q) => Some(q),
            MValue::Vector(_) => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[Rational]> {
        match self {
            MValue::Vector(v) => Some(v),
            MValue::Scalar(_) => None,
        }
    }

    fn zip(&self, other: &MValue, op: impl Fn(&Rational, &Rational) -> Rational) -> Result<MValue> {
        match (self, other) {
            (MValue::Scalar(a), MValue::Scalar(b)) => Ok(MValue::Scalar(op(a, b))),
            (MValue::Vector(a), MValue::Vector(b)) if a.len() == b.len() => {
                Ok(MValue::Vector(a.iter().zip(b).map(|(x, y)| op(x, y)).collect()))
            }
            _ => Err(Error::ShapeError(format!("{} vs {}", self.shape(), other.shape()))),
        }
    }

    pub fn add(&self, other: &MValue) -> Result<MValue> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &MValue) -> Result<MValue> {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &MValue) -> Result<MValue> {
        self.zip(other, |a, b| a * b)
    }

    pub fn neg(&self) -> MValue {
        match self {
            MValue::Scalar(a) => MValue::Scalar(-a),
            MValue::Vector(v) => MValue::Vector(v.iter().map(|x| -x).collect()),
        }
    }

    /// The scalar action `c * v`, defined for every shape.
    pub fn scale(&self, c: &Rational) -> MValue {
        match self {
            MValue::Scalar(a) => MValue::Scalar(c * a),
            MValue::Vector(v) => MValue::Vector(v.iter().map(|x| c * x).collect()),
        }
    }

    /// Componentwise partial order.
    pub fn le(&self, other: &MValue) -> Result<bool> {
        match (self, other) {
            (MValue::Scalar(a), MValue::Scalar(b)) => Ok(a <= b),
            (MValue::Vector(a), MValue::Vector(b)) if a.len() == b.len() => {
                Ok(a.iter().zip(b).all(|(x, y)| x <= y))
            }
            _ => Err(Error::ShapeError(format!("{} vs {}", self.shape(), other.shape()))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self == &MValue::zero(self.shape())
    }

    /// Linear positive functional back to scalars with `trace(one) = 1`:
    /// the identity on scalars, the arithmetic mean of the components on
    /// vectors.
    pub fn trace(&self) -> Rational {
        match self {
            MValue::Scalar(a) => a.clone(),
            MValue::Vector(v) => {
                let sum = v.iter().fold(Rational::zero(), |acc, x| &acc + x);
                let dim = Rational::from_nat(v.len() as u64);
                &sum / &dim
            }
        }
    }

    /// Magnitude: absolute value on scalars, max of componentwise absolute
    /// values on vectors.
    pub fn seminorm(&self) -> Rational {
        match self {
            MValue::Scalar(a) => a.abs(),
            MValue::Vector(v) => v
                .iter()
                .map(|x| x.abs())
                .max()
                .expect("vectors are nonempty"),
        }
    }
}

impl fmt::Display for MValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MValue::Scalar(q) => write!(f, "{q}"),
            MValue::Vector(v) => {
                write!(f, "[")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
        }
    }
}
