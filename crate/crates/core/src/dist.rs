//! Finitely-supported expectation spaces and the expectation operator.
//!
//! A [`Dist`] is a weighted set of outcomes with nonnegative rational
//! weights summing to exactly one, kept in canonical form (no zero weights,
//! strictly increasing points). Expectation of a [`RandomVariable`] is the
//! exact weighted sum of its values, and two distributions are equal
//! precisely when they assign the same expectation to every random
//! variable, which for finite support reduces to equality of canonical
//! forms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraShape, MValue};
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::outcome::{Outcome, OutcomeSpace};

/// One canonical support entry.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SupportEntry {
    #[serde(rename = "w")]
    pub weight: Rational,
    pub point: Outcome,
}

/// A finitely-supported distribution over an outcome space, always held in
/// canonical form.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Dist {
    space: OutcomeSpace,
    support: Vec<SupportEntry>,
}

impl Dist {
    /// Canonicalizes a raw weighted outcome list: merges equal points,
    /// drops zero weights, sorts by the canonical outcome order, and
    /// validates that the weights are nonnegative and sum to one.
    pub fn from_weighted(space: OutcomeSpace, weighted: Vec<(Rational, Outcome)>) -> Result<Dist> {
        let mut merged: BTreeMap<Outcome, Rational> = BTreeMap::new();
        let mut total = Rational::zero();
        for (w, point) in weighted {
            if w.is_negative() {
                return Err(Error::NegativeWeight(w.to_string()));
            }
            space.check_member(&point)?;
            total = &total + &w;
            if w.is_zero() {
                continue;
            }
            match merged.remove(&point) {
                Some(seen) => {
                    merged.insert(point, &seen + &w);
                }
                None => {
                    merged.insert(point, w);
                }
            }
        }
        if total != Rational::one() {
            return Err(Error::MassNotOne(total.to_string()));
        }
        let support = merged
            .into_iter()
            .map(|(point, weight)| SupportEntry { weight, point })
            .collect();
        Ok(Dist { space, support })
    }

    /// Point mass at `point`.
    pub fn dirac(space: OutcomeSpace, point: Outcome) -> Result<Dist> {
        Dist::from_weighted(space, vec![(Rational::one(), point)])
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn support(&self) -> &[SupportEntry] {
        &self.support
    }

    /// Mass assigned to a single point (zero off the support).
    pub fn mass_at(&self, point: &Outcome) -> Result<Rational> {
        self.space.check_member(point)?;
        Ok(self
            .support
            .iter()
            .find(|e| &e.point == point)
            .map(|e| e.weight.clone())
            .unwrap_or_else(Rational::zero))
    }

    /// The expectation operator: the exact weighted sum of `rv` over the
    /// support.
    pub fn expect(&self, rv: &RandomVariable) -> Result<MValue> {
        if self.space != *rv.space() {
            return Err(Error::SpaceMismatch {
                expected: self.space.to_string(),
                found: rv.space().to_string(),
            });
        }
        let mut acc = MValue::zero(rv.shape());
        for entry in &self.support {
            acc = acc.add(&rv.at(&entry.point).scale(&entry.weight))?;
        }
        Ok(acc)
    }

    /// Decides denotational equivalence: same space and identical
    /// canonical form.
    pub fn dist_eq(&self, other: &Dist) -> Result<bool> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                expected: self.space.to_string(),
                found: other.space.to_string(),
            });
        }
        Ok(self.support == other.support)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("distributions serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Dist> {
        #[derive(Deserialize)]
        struct Raw {
            space: OutcomeSpace,
            support: Vec<SupportEntry>,
        }
        let raw: Raw = serde_json::from_value(value.clone()).map_err(|e| Error::BadEncoding(e.to_string()))?;
        Dist::from_weighted(
            raw.space,
            raw.support.into_iter().map(|e| (e.weight, e.point)).collect(),
        )
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.support.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {}", e.weight, e.point)?;
        }
        Ok(())
    }
}

type EvalFn = dyn Fn(&Outcome) -> MValue + Send + Sync;

/// A total function from outcomes to measurement values of a fixed shape.
///
/// No measurability structure is carried; the mapping is opaque.
#[derive(Clone)]
pub struct RandomVariable {
    space: OutcomeSpace,
    shape: AlgebraShape,
    eval: Arc<EvalFn>,
}

impl fmt::Debug for RandomVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RandomVariable({} -> {})", self.space, self.shape)
    }
}

impl RandomVariable {
    pub fn new(
        space: OutcomeSpace,
        shape: AlgebraShape,
        eval: impl Fn(&Outcome) -> MValue + Send + Sync + 'static,
    ) -> RandomVariable {
        RandomVariable { space, shape, eval: Arc::new(eval) }
    }

    pub fn constant(space: OutcomeSpace, value: MValue) -> RandomVariable {
        let shape = value.shape();
        RandomVariable::new(space, shape, move |_| value.clone())
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn shape(&self) -> AlgebraShape {
        self.shape
    }

    pub fn at(&self, outcome: &Outcome) -> MValue {
        (self.eval)(outcome)
    }

    fn check_same(&self, other: &RandomVariable) -> Result<()> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch {
                expected: self.space.to_string(),
                found: other.space.to_string(),
            });
        }
        if self.shape != other.shape {
            return Err(Error::ShapeError(format!("{} vs {}", self.shape, other.shape)));
        }
        Ok(())
    }

    pub fn add(&self, other: &RandomVariable) -> Result<RandomVariable> {
        self.check_same(other)?;
        let (f, g) = (self.eval.clone(), other.eval.clone());
        Ok(RandomVariable::new(self.space.clone(), self.shape, move |w| {
            f(w).add(&g(w)).expect("shapes checked")
        }))
    }

    pub fn sub(&self, other: &RandomVariable) -> Result<RandomVariable> {
        self.check_same(other)?;
        let (f, g) = (self.eval.clone(), other.eval.clone());
        Ok(RandomVariable::new(self.space.clone(), self.shape, move |w| {
            f(w).sub(&g(w)).expect("shapes checked")
        }))
    }

    pub fn mul(&self, other: &RandomVariable) -> Result<RandomVariable> {
        self.check_same(other)?;
        let (f, g) = (self.eval.clone(), other.eval.clone());
        Ok(RandomVariable::new(self.space.clone(), self.shape, move |w| {
            f(w).mul(&g(w)).expect("shapes checked")
        }))
    }

    pub fn neg(&self) -> RandomVariable {
        let f = self.eval.clone();
        RandomVariable::new(self.space.clone(), self.shape, move |w| f(w).neg())
    }

    /// The scalar action `c * X`.
    pub fn scale(&self, c: &Rational) -> RandomVariable {
        let f = self.eval.clone();
        let c = c.clone();
        RandomVariable::new(self.space.clone(), self.shape, move |w| f(w).scale(&c))
    }

    /// Postcomposes with a pointwise transform of measurement values.
    pub fn map_values(
        &self,
        shape: AlgebraShape,
        f: impl Fn(MValue) -> MValue + Send + Sync + 'static,
    ) -> RandomVariable {
        let eval = self.eval.clone();
        RandomVariable::new(self.space.clone(), shape, move |w| f(eval(w)))
    }

    /// The canonical rational reading of a scalar-like outcome: finite
    /// indices, naturals, integers, rationals and proportions embed as
    /// themselves; booleans read success as 1 and failure as 0.
    pub fn rational_value(space: &OutcomeSpace) -> Result<RandomVariable> {
        check_scalar_like(space)?;
        Ok(RandomVariable::new(space.clone(), AlgebraShape::Scalar, |w| {
            MValue::Scalar(outcome_rational(w))
        }))
    }

    /// Rational value of the first component of a pair space.
    pub fn pair_fst_value(space: &OutcomeSpace) -> Result<RandomVariable> {
        let OutcomeSpace::Pair(fst, _) = space else {
            return Err(Error::SpaceMismatch {
                expected: "a pair space".into(),
                found: space.to_string(),
            });
        };
        check_scalar_like(fst)?;
        Ok(RandomVariable::new(space.clone(), AlgebraShape::Scalar, |w| match w {
            Outcome::Pair(a, _) => MValue::Scalar(outcome_rational(a)),
            other => panic!("pair component of {other}"),
        }))
    }

    /// Rational value of the second component of a pair space.
    pub fn pair_snd_value(space: &OutcomeSpace) -> Result<RandomVariable> {
        let OutcomeSpace::Pair(_, snd) = space else {
            return Err(Error::SpaceMismatch {
                expected: "a pair space".into(),
                found: space.to_string(),
            });
        };
        check_scalar_like(snd)?;
        Ok(RandomVariable::new(space.clone(), AlgebraShape::Scalar, |w| match w {
            Outcome::Pair(_, b) => MValue::Scalar(outcome_rational(b)),
            other => panic!("pair component of {other}"),
        }))
    }

    /// Rational value of the `i`-th component of a tuple space.
    pub fn tuple_component_value(space: &OutcomeSpace, i: usize) -> Result<RandomVariable> {
        let OutcomeSpace::Tuple(items) = space else {
            return Err(Error::SpaceMismatch {
                expected: "a tuple space".into(),
                found: space.to_string(),
            });
        };
        let component = items
            .get(i)
            .ok_or_else(|| Error::ArityError(format!("component {i} of a {}-tuple", items.len())))?;
        check_scalar_like(component)?;
        Ok(RandomVariable::new(space.clone(), AlgebraShape::Scalar, move |w| match w {
            Outcome::Tuple(xs) => MValue::Scalar(outcome_rational(&xs[i])),
            other => panic!("tuple component of {other}"),
        }))
    }

    /// The identity on a tuple of scalar-like components, read as a
    /// vector measurement value.
    pub fn tuple_vector(space: &OutcomeSpace) -> Result<RandomVariable> {
        let OutcomeSpace::Tuple(items) = space else {
            return Err(Error::SpaceMismatch {
                expected: "a tuple space".into(),
                found: space.to_string(),
            });
        };
        for item in items {
            check_scalar_like(item)?;
        }
        let dim = items.len();
        Ok(RandomVariable::new(space.clone(), AlgebraShape::Vector(dim), |w| match w {
            Outcome::Tuple(xs) => MValue::Vector(xs.iter().map(outcome_rational).collect()),
            other => panic!("tuple value of {other}"),
        }))
    }
}

fn check_scalar_like(space: &OutcomeSpace) -> Result<()> {
    let supported = matches!(
        space,
        OutcomeSpace::Fin(_) | OutcomeSpace::Nat | OutcomeSpace::Int | OutcomeSpace::Rat | OutcomeSpace::Prop
    ) || space.is_bool2();
    if supported {
        Ok(())
    } else {
        Err(Error::SpaceMismatch {
            expected: "a scalar-valued space".into(),
            found: space.to_string(),
        })
    }
}

/// The rational value of a ground outcome; booleans are 1/0.
pub(crate) fn outcome_rational(outcome: &Outcome) -> Rational {
    match outcome {
        Outcome::Fin { index, .. } => Rational::from_nat(*index),
        Outcome::Nat(n) => Rational::from_nat(*n),
        Outcome::Int(z) => Rational::from_int(*z),
        Outcome::Rat(q) => q.clone(),
        Outcome::Prop(p) => p.value().clone(),
        Outcome::Tag(crate::outcome::Side::L, _) => Rational::one(),
        Outcome::Tag(crate::outcome::Side::R, _) => Rational::zero(),
        other => panic!("outcome {other} has no rational value"),
    }
}

/// `X - E[X]`: subtracts the (constant) expectation pointwise.
pub fn center(d: &Dist, rv: &RandomVariable) -> Result<RandomVariable> {
    let mean = d.expect(rv)?;
    rv.sub(&RandomVariable::constant(rv.space().clone(), mean))
}

/// The product moment `E[X * Y]` in the measurement algebra.
pub fn product_moment(d: &Dist, x: &RandomVariable, y: &RandomVariable) -> Result<MValue> {
    d.expect(&x.mul(y)?)
}

/// `Cov(X, Y) = E[(X - EX)(Y - EY)]`.
pub fn cov(d: &Dist, x: &RandomVariable, y: &RandomVariable) -> Result<MValue> {
    product_moment(d, &center(d, x)?, &center(d, y)?)
}

/// `Var(X) = Cov(X, X)`.
pub fn var(d: &Dist, x: &RandomVariable) -> Result<MValue> {
    cov(d, x, x)
}

/// Checks the monotonicity consequence of positivity: requires `X <= Y`
/// pointwise on the support, then reports whether `E X <= E Y` (it always
/// is; the return value exists for the test suite).
pub fn expect_mono_check(d: &Dist, x: &RandomVariable, y: &RandomVariable) -> Result<bool> {
    for entry in d.support() {
        if !x.at(&entry.point).le(&y.at(&entry.point))? {
            return Err(Error::NotPointwiseOrdered);
        }
    }
    d.expect(x)?.le(&d.expect(y)?)
}
