//! Indicator random variables and the probability function they induce:
//! the probability of an event is the trace of the expectation of its
//! indicator.

use crate::algebra::{AlgebraShape, MValue};
use crate::dist::{Dist, RandomVariable};
use crate::error::{Error, Result};
use crate::numeric::{Proportion, Rational};
use crate::outcome::{Outcome, OutcomeSpace};

/// A scalar random variable whose value on every relevant outcome is 0
/// or 1. The indicator property is checked lazily over the support of
/// whichever distribution it is paired with, since random variables are
/// opaque mappings.
#[derive(Clone, Debug)]
pub struct Indicator {
    base: RandomVariable,
}

/// Direction of an inequality indicator on the magnitude of a random
/// variable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ThresholdDirection {
    Le,
    Ge,
}

impl Indicator {
    pub fn new(base: RandomVariable) -> Result<Indicator> {
        if base.shape() != AlgebraShape::Scalar {
            return Err(Error::ShapeError(format!(
                "indicators are scalar, got {}",
                base.shape()
            )));
        }
        Ok(Indicator { base })
    }

    pub fn from_predicate(
        space: OutcomeSpace,
        pred: impl Fn(&Outcome) -> bool + Send + Sync + 'static,
    ) -> Indicator {
        Indicator {
            base: RandomVariable::new(space, AlgebraShape::Scalar, move |w| {
                if pred(w) {
                    MValue::one(AlgebraShape::Scalar)
                } else {
                    MValue::zero(AlgebraShape::Scalar)
                }
            }),
        }
    }

    /// The indicator of the whole space.
    pub fn always_one(space: OutcomeSpace) -> Indicator {
        Indicator::from_predicate(space, |_| true)
    }

    /// Equality with a fixed point of the space.
    pub fn delta(space: OutcomeSpace, point: Outcome) -> Result<Indicator> {
        space.check_member(&point)?;
        Ok(Indicator::from_predicate(space, move |w| w == &point))
    }

    /// Equality of the `i`-th tuple component with a fixed point.
    pub fn component_delta(space: OutcomeSpace, i: usize, point: Outcome) -> Result<Indicator> {
        match &space {
            OutcomeSpace::Tuple(items) if i < items.len() => items[i].check_member(&point)?,
            OutcomeSpace::Tuple(items) => {
                return Err(Error::ArityError(format!("component {i} of a {}-tuple", items.len())))
            }
            other => {
                return Err(Error::SpaceMismatch {
                    expected: "a tuple space".into(),
                    found: other.to_string(),
                })
            }
        }
        Ok(Indicator::from_predicate(space, move |w| match w {
            Outcome::Tuple(items) => items.get(i) == Some(&point),
            _ => false,
        }))
    }

    /// `value <= bound` on the naturals.
    pub fn le_nat(bound: u64) -> Indicator {
        Indicator::from_predicate(OutcomeSpace::Nat, move |w| matches!(w, Outcome::Nat(n) if *n <= bound))
    }

    /// `value <= r` under the canonical rational reading of the space.
    pub fn le_value(space: &OutcomeSpace, r: Rational) -> Result<Indicator> {
        let value = RandomVariable::rational_value(space)?;
        Ok(Indicator::from_predicate(space.clone(), move |w| {
            value.at(w).as_scalar().expect("scalar embedding") <= &r
        }))
    }

    /// `value >= r` under the canonical rational reading of the space.
    pub fn ge_value(space: &OutcomeSpace, r: Rational) -> Result<Indicator> {
        let value = RandomVariable::rational_value(space)?;
        Ok(Indicator::from_predicate(space.clone(), move |w| {
            value.at(w).as_scalar().expect("scalar embedding") >= &r
        }))
    }

    /// Inequality indicator on the magnitude of `x`: 1 when
    /// `seminorm(x(w)) <= r` (or `>=` for [`ThresholdDirection::Ge`]).
    /// At an exact tie both directions fire.
    pub fn threshold(x: &RandomVariable, r: &Rational, direction: ThresholdDirection) -> Indicator {
        let x = x.clone();
        let r = r.clone();
        Indicator::from_predicate(x.space().clone(), move |w| {
            let norm = x.at(w).seminorm();
            match direction {
                ThresholdDirection::Le => norm <= r,
                ThresholdDirection::Ge => norm >= r,
            }
        })
    }

    pub fn base(&self) -> &RandomVariable {
        &self.base
    }

    pub fn space(&self) -> &OutcomeSpace {
        self.base.space()
    }

    pub fn at(&self, outcome: &Outcome) -> MValue {
        self.base.at(outcome)
    }

    /// Whether the event holds at `outcome` (indicator value is exactly 1).
    pub fn holds_at(&self, outcome: &Outcome) -> bool {
        self.at(outcome) == MValue::one(AlgebraShape::Scalar)
    }

    /// `1 - I`.
    pub fn complement(&self) -> Indicator {
        let ones = RandomVariable::constant(self.base.space().clone(), MValue::one(AlgebraShape::Scalar));
        Indicator {
            base: ones.sub(&self.base).expect("same space and shape"),
        }
    }

    /// Pointwise product of indicators (intersection of events).
    pub fn conjunction(&self, other: &Indicator) -> Result<Indicator> {
        Ok(Indicator { base: self.base.mul(&other.base)? })
    }

    /// Verifies the indicator property over the support of `d`.
    pub fn check_on(&self, d: &Dist) -> Result<()> {
        let zero = MValue::zero(AlgebraShape::Scalar);
        let one = MValue::one(AlgebraShape::Scalar);
        for entry in d.support() {
            let v = self.at(&entry.point);
            if v != zero && v != one {
                return Err(Error::NotIndicator);
            }
        }
        Ok(())
    }
}

/// Probability of the event: `trace(E[indicator])`, guaranteed to land in
/// `[0, 1]`.
pub fn pr(d: &Dist, event: &Indicator) -> Result<Proportion> {
    event.check_on(d)?;
    let expectation = d.expect(event.base())?;
    Proportion::new(expectation.trace())
}

/// Whether both the event and its complement carry strictly positive
/// probability, the precondition for conditioning.
pub fn satisfiable(d: &Dist, event: &Indicator) -> Result<bool> {
    let p = pr(d, event)?;
    Ok(!p.is_zero() && !p.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::numeric::Simplex;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn prop(n: i64, d: i64) -> Proportion {
        Proportion::new(q(n, d)).unwrap()
    }

    #[test]
    fn whole_space_has_probability_one() {
        let d = catalog::discrete_uniform(4).unwrap();
        let top = Indicator::always_one(d.space().clone());
        assert_eq!(pr(&d, &top).unwrap(), Proportion::one());
        // and it is not satisfiable: the complement is empty
        assert!(!satisfiable(&d, &top).unwrap());
    }

    #[test]
    fn delta_on_discrete_uniform() {
        let d = catalog::discrete_uniform(4).unwrap();
        let at2 = Indicator::delta(d.space().clone(), Outcome::fin(4, 2).unwrap()).unwrap();
        assert_eq!(pr(&d, &at2).unwrap().value(), &q(1, 4));
    }

    #[test]
    fn complement_sums_to_one() {
        let d = catalog::binomial(3, &prop(1, 3)).unwrap();
        let at1 = Indicator::delta(d.space().clone(), Outcome::Nat(1)).unwrap();
        let p = pr(&d, &at1).unwrap();
        let pc = pr(&d, &at1.complement()).unwrap();
        assert_eq!(p.value() + pc.value(), Rational::one());
        assert_eq!(p.value(), &q(4, 9));
    }

    #[test]
    fn conjunction_with_top_is_identity() {
        let d = catalog::binomial(2, &prop(1, 2)).unwrap();
        let at1 = Indicator::delta(d.space().clone(), Outcome::Nat(1)).unwrap();
        let top = Indicator::always_one(d.space().clone());
        let conj = at1.conjunction(&top).unwrap();
        for entry in d.support() {
            assert_eq!(conj.at(&entry.point), at1.at(&entry.point));
        }
    }

    #[test]
    fn non_indicator_is_rejected() {
        let d = catalog::discrete_uniform(2).unwrap();
        let two = Indicator {
            base: RandomVariable::constant(d.space().clone(), MValue::Scalar(q(2, 1))),
        };
        assert_eq!(pr(&d, &two).unwrap_err(), Error::NotIndicator);
    }

    #[test]
    fn satisfiability_examples() {
        let d = catalog::discrete_uniform_z(0, 6).unwrap();
        let le2 = Indicator::le_value(&OutcomeSpace::Int, q(2, 1)).unwrap();
        assert!(satisfiable(&d, &le2).unwrap());
        let off = Indicator::delta(OutcomeSpace::Int, Outcome::Int(77)).unwrap();
        assert!(!satisfiable(&d, &off).unwrap());
    }

    #[test]
    fn le_and_ge_thresholds_share_ties() {
        let x = RandomVariable::rational_value(&OutcomeSpace::Nat).unwrap();
        let le = Indicator::threshold(&x, &q(3, 1), ThresholdDirection::Le);
        let ge = Indicator::threshold(&x, &q(3, 1), ThresholdDirection::Ge);
        let tie = Outcome::Nat(3);
        assert!(le.holds_at(&tie) && ge.holds_at(&tie));
        assert!(le.holds_at(&Outcome::Nat(1)) && !ge.holds_at(&Outcome::Nat(1)));
        // away from ties, complement flips the direction
        assert_eq!(le.complement().holds_at(&Outcome::Nat(5)), ge.holds_at(&Outcome::Nat(5)));
    }

    #[test]
    fn constant_zero_rv_thresholds_everywhere() {
        let zero = RandomVariable::constant(OutcomeSpace::Nat, MValue::zero(AlgebraShape::Scalar));
        let le = Indicator::threshold(&zero, &Rational::one(), ThresholdDirection::Le);
        for n in 0..5 {
            assert!(le.holds_at(&Outcome::Nat(n)));
        }
    }

    /// Appendix-style decomposition: composing any scalar map with an
    /// indicator is the two-value combination f(1)*I + f(0)*Ic.
    #[test]
    fn scalar_maps_decompose_over_indicators() {
        let d = catalog::binomial(3, &prop(2, 5)).unwrap();
        let i = Indicator::le_nat(1);
        let ic = i.complement();
        let f = |v: &MValue| {
            let x = v.as_scalar().unwrap();
            MValue::Scalar(&(x * x) + &q(3, 7))
        };
        let f1 = f(&MValue::one(AlgebraShape::Scalar));
        let f0 = f(&MValue::zero(AlgebraShape::Scalar));
        for entry in d.support() {
            let w = &entry.point;
            let lhs = f(&i.at(w));
            let rhs = f1.mul(&i.at(w)).unwrap().add(&f0.mul(&ic.at(w)).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    /// An indicator's expectation is its probability times the unit, and
    /// the complement inherits the complementary identity.
    #[test]
    fn expectation_of_indicator_is_its_probability() {
        let d = catalog::binomial(3, &prop(1, 3)).unwrap();
        let i = Indicator::le_nat(1);
        let p = pr(&d, &i).unwrap();
        let one = MValue::one(AlgebraShape::Scalar);
        assert_eq!(d.expect(i.base()).unwrap(), one.scale(p.value()));
        let pc = pr(&d, &i.complement()).unwrap();
        assert_eq!(d.expect(i.complement().base()).unwrap(), one.scale(pc.value()));
    }

    #[test]
    fn indicator_algebra_pointwise() {
        let d = catalog::kparts(&Simplex::new(vec![q(2, 5), q(3, 5)]).unwrap()).unwrap();
        let i = Indicator::delta(d.space().clone(), Outcome::fin(2, 0).unwrap()).unwrap();
        let ic = i.complement();
        let zero = MValue::zero(AlgebraShape::Scalar);
        let one = MValue::one(AlgebraShape::Scalar);
        for entry in d.support() {
            let w = &entry.point;
            // I * Ic = 0, and the values oppose each other
            assert_eq!(i.at(w).mul(&ic.at(w)).unwrap(), zero);
            assert_eq!(i.at(w) == one, ic.at(w) == zero);
        }
    }
}
