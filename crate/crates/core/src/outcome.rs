//! The closed universe of sample-space points: unit, tagged sums, pairs,
//! tuples, bounded finite indices, naturals, integers, rationals, and
//! proportions. Every carrier has decidable structural equality and a
//! canonical total order, which is what makes distribution canonicalization
//! possible.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{Proportion, Rational};

/// Which side of a binary sum an outcome was injected into. `L` orders
/// before `R`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

/// A single sample-space point.
///
/// The derived ordering is lexicographic on composites, `L < R` on tags,
/// and numeric on the ground carriers, giving a total order consistent
/// with structural equality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Unit,
    Tag(Side, Box<Outcome>),
    Pair(Box<Outcome>, Box<Outcome>),
    Tuple(Vec<Outcome>),
    Fin { bound: u64, index: u64 },
    Nat(u64),
    Int(i64),
    Rat(Rational),
    Prop(Proportion),
}

impl Outcome {
    pub fn tag_left(inner: Outcome) -> Outcome {
        Outcome::Tag(Side::L, Box::new(inner))
    }

    pub fn tag_right(inner: Outcome) -> Outcome {
        Outcome::Tag(Side::R, Box::new(inner))
    }

    pub fn pair(fst: Outcome, snd: Outcome) -> Outcome {
        Outcome::Pair(Box::new(fst), Box::new(snd))
    }

    pub fn fin(bound: u64, index: u64) -> Result<Outcome> {
        if index >= bound {
            return Err(Error::NotInSpace(format!("index {index}"), format!("fin({bound})")));
        }
        Ok(Outcome::Fin { bound, index })
    }

    /// The boolean success value, `inl ()` of the two-point space.
    pub fn success() -> Outcome {
        Outcome::tag_left(Outcome::Unit)
    }

    /// The boolean failure value, `inr ()`.
    pub fn failure() -> Outcome {
        Outcome::tag_right(Outcome::Unit)
    }

    pub fn is_success(&self) -> bool {
        self == &Outcome::success()
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Unit => write!(f, "()"),
            Outcome::Tag(Side::L, inner) => write!(f, "L({inner})"),
            Outcome::Tag(Side::R, inner) => write!(f, "R({inner})"),
            Outcome::Pair(a, b) => write!(f, "({a}, {b})"),
            Outcome::Tuple(items) => {
                write!(f, "(")?;
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            Outcome::Fin { index, .. } => write!(f, "{index}"),
            Outcome::Nat(n) => write!(f, "{n}"),
            Outcome::Int(z) => write!(f, "{z}"),
            Outcome::Rat(q) => write!(f, "{q}"),
            Outcome::Prop(p) => write!(f, "{p}"),
        }
    }
}

/// Descriptor of the carrier a distribution lives on.
#[derive(Clone, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeSpace {
    Unit,
    Fin(u64),
    Nat,
    Int,
    Rat,
    Prop,
    Sum(Box<OutcomeSpace>, Box<OutcomeSpace>),
    Pair(Box<OutcomeSpace>, Box<OutcomeSpace>),
    Tuple(Vec<OutcomeSpace>),
}

impl OutcomeSpace {
    /// The two-point boolean space, `unit + unit`.
    pub fn bool2() -> OutcomeSpace {
        OutcomeSpace::sum(OutcomeSpace::Unit, OutcomeSpace::Unit)
    }

    pub fn sum(left: OutcomeSpace, right: OutcomeSpace) -> OutcomeSpace {
        OutcomeSpace::Sum(Box::new(left), Box::new(right))
    }

    pub fn pair(fst: OutcomeSpace, snd: OutcomeSpace) -> OutcomeSpace {
        OutcomeSpace::Pair(Box::new(fst), Box::new(snd))
    }

    /// `n`-fold power, carried by tuples of length `n` (not nested pairs).
    pub fn power(space: OutcomeSpace, n: usize) -> Result<OutcomeSpace> {
        if n == 0 {
            return Err(Error::ArityError("power exponent must be at least 1".into()));
        }
        Ok(OutcomeSpace::Tuple(vec![space; n]))
    }

    pub fn tuple(items: Vec<OutcomeSpace>) -> Result<OutcomeSpace> {
        if items.is_empty() {
            return Err(Error::ArityError("tuple space needs at least one component".into()));
        }
        Ok(OutcomeSpace::Tuple(items))
    }

    pub fn is_bool2(&self) -> bool {
        self == &OutcomeSpace::bool2()
    }

    /// Structural membership test.
    pub fn contains(&self, outcome: &Outcome) -> bool {
        match (self, outcome) {
            (OutcomeSpace::Unit, Outcome::Unit) => true,
            (OutcomeSpace::Fin(bound), Outcome::Fin { bound: b, index }) => b == bound && index < bound,
            (OutcomeSpace::Nat, Outcome::Nat(_)) => true,
            (OutcomeSpace::Int, Outcome::Int(_)) => true,
            (OutcomeSpace::Rat, Outcome::Rat(_)) => true,
            (OutcomeSpace::Prop, Outcome::Prop(_)) => true,
            (OutcomeSpace::Sum(l, _), Outcome::Tag(Side::L, inner)) => l.contains(inner),
            (OutcomeSpace::Sum(_, r), Outcome::Tag(Side::R, inner)) => r.contains(inner),
            (OutcomeSpace::Pair(s1, s2), Outcome::Pair(a, b)) => s1.contains(a) && s2.contains(b),
            (OutcomeSpace::Tuple(spaces), Outcome::Tuple(items)) => {
                spaces.len() == items.len()
                    && spaces.iter().zip(items).all(|(s, x)| s.contains(x))
            }
            _ => false,
        }
    }

    pub fn check_member(&self, outcome: &Outcome) -> Result<()> {
        if self.contains(outcome) {
            Ok(())
        } else {
            Err(Error::NotInSpace(outcome.to_string(), self.to_string()))
        }
    }
}

impl fmt::Display for OutcomeSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OutcomeSpace::Unit => write!(f, "unit"),
            OutcomeSpace::Fin(k) => write!(f, "fin({k})"),
            OutcomeSpace::Nat => write!(f, "nat"),
            OutcomeSpace::Int => write!(f, "int"),
            OutcomeSpace::Rat => write!(f, "rat"),
            OutcomeSpace::Prop => write!(f, "prop"),
            OutcomeSpace::Sum(l, r) => write!(f, "({l} + {r})"),
            OutcomeSpace::Pair(a, b) => write!(f, "({a} x {b})"),
            OutcomeSpace::Tuple(items) => {
                write!(f, "tuple(")?;
                for (i, s) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Structural equality of two members of `space`. Comparing values that do
/// not both belong to the space is a `SpaceMismatch` error.
pub fn outcome_eq(space: &OutcomeSpace, a: &Outcome, b: &Outcome) -> Result<bool> {
    outcome_cmp(space, a, b).map(|o| o == Ordering::Equal)
}

/// The canonical total order on members of `space`.
pub fn outcome_cmp(space: &OutcomeSpace, a: &Outcome, b: &Outcome) -> Result<Ordering> {
    for side in [a, b] {
        if !space.contains(side) {
            return Err(Error::SpaceMismatch {
                expected: space.to_string(),
                found: side.to_string(),
            });
        }
    }
    Ok(a.cmp(b))
}
