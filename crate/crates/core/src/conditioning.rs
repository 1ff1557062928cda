//! Conditional random variables given a satisfiable indicator event: the
//! two-branch best predictor, its measurability and orthogonality
//! contracts, and the tower property.

use crate::algebra::{AlgebraShape, MValue};
use crate::dist::{Dist, RandomVariable};
use crate::error::{Error, Result};
use crate::indicator::{pr, satisfiable, Indicator};
use crate::numeric::Rational;
use crate::outcome::Outcome;

/// The conditional expectation of a scalar random variable given an
/// indicator event. The predictor takes the event-branch mean where the
/// indicator is 1 and the complement-branch mean elsewhere, so it depends
/// only on the indicator's value and the residual is orthogonal to every
/// function of it.
#[derive(Clone, Debug)]
pub struct ConditionalRV {
    predictor: RandomVariable,
    given: Indicator,
    over: Dist,
    mean_on_event: Rational,
    mean_off_event: Rational,
}

impl ConditionalRV {
    /// The predictor random variable `E[Y | I]`.
    pub fn predictor(&self) -> &RandomVariable {
        &self.predictor
    }

    pub fn given(&self) -> &Indicator {
        &self.given
    }

    pub fn over(&self) -> &Dist {
        &self.over
    }

    /// Conditional mean where the indicator holds.
    pub fn mean_on_event(&self) -> &Rational {
        &self.mean_on_event
    }

    /// Conditional mean on the complement.
    pub fn mean_off_event(&self) -> &Rational {
        &self.mean_off_event
    }

    /// Evaluates the predictor at an outcome of the underlying space.
    pub fn predict_at(&self, outcome: &Outcome) -> Rational {
        self.predictor
            .at(outcome)
            .as_scalar()
            .expect("predictor is scalar")
            .clone()
    }
}

/// Builds the conditional random variable of `y` given the event, scaling
/// the restricted expectations by the branch probabilities.
pub fn cond_on_indicator(d: &Dist, y: &RandomVariable, event: &Indicator) -> Result<ConditionalRV> {
    if y.shape() != AlgebraShape::Scalar {
        return Err(Error::ShapeError(format!(
            "conditioning is defined for scalar random variables, got {}",
            y.shape()
        )));
    }
    if !satisfiable(d, event)? {
        return Err(Error::NotSatisfiable);
    }
    let p = pr(d, event)?;
    let pc = p.complement();

    let masked = event.base().mul(y)?;
    let masked_c = event.complement().base().mul(y)?;
    let scale = p.value().recip().expect("satisfiable");
    let scale_c = pc.value().recip().expect("satisfiable");
    let mean_on_event = d.expect(&masked)?.trace() * scale;
    let mean_off_event = d.expect(&masked_c)?.trace() * scale_c;

    let on = mean_on_event.clone();
    let off = mean_off_event.clone();
    let gate = event.clone();
    let predictor = RandomVariable::new(y.space().clone(), AlgebraShape::Scalar, move |w| {
        if gate.holds_at(w) {
            MValue::Scalar(on.clone())
        } else {
            MValue::Scalar(off.clone())
        }
    });

    Ok(ConditionalRV {
        predictor,
        given: event.clone(),
        over: d.clone(),
        mean_on_event,
        mean_off_event,
    })
}

/// The two posterior means of `y` over a joint distribution, indexed by
/// whether the conditioning event was observed. The predictor is constant
/// in everything except the indicator value, so the pair of branch means
/// is the whole function.
pub fn posterior_eval(joint: &Dist, y: &RandomVariable, event: &Indicator) -> Result<(Rational, Rational)> {
    let c = cond_on_indicator(joint, y, event)?;
    Ok((c.mean_on_event.clone(), c.mean_off_event.clone()))
}

/// The law of total expectation: `E[E[Y|I]] = E[Y]`. Always true for a
/// well-formed conditional; exposed for the test suite.
pub fn tower_check(d: &Dist, c: &ConditionalRV, y: &RandomVariable) -> Result<bool> {
    Ok(d.expect(c.predictor())? == d.expect(y)?)
}

/// Measurability: support points with equal indicator values get equal
/// predictor values.
pub fn x_meas_check(d: &Dist, c: &ConditionalRV) -> Result<bool> {
    let entries = d.support();
    for a in entries {
        for b in entries {
            if c.given().at(&a.point) == c.given().at(&b.point)
                && c.predict_at(&a.point) != c.predict_at(&b.point)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Orthogonality of the residual against a function of the indicator,
/// given by its two values `g(1)` and `g(0)`.
pub fn orthogonality_check(
    d: &Dist,
    c: &ConditionalRV,
    y: &RandomVariable,
    g_at_one: &Rational,
    g_at_zero: &Rational,
) -> Result<bool> {
    let residual = y.sub(c.predictor())?;
    let (g1, g0) = (g_at_one.clone(), g_at_zero.clone());
    let gate = c.given().clone();
    let g_of_x = RandomVariable::new(y.space().clone(), AlgebraShape::Scalar, move |w| {
        if gate.holds_at(w) {
            MValue::Scalar(g1.clone())
        } else {
            MValue::Scalar(g0.clone())
        }
    });
    let inner = d.expect(&residual.mul(&g_of_x)?)?;
    Ok(inner == MValue::zero(AlgebraShape::Scalar))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::numeric::Proportion;
    use crate::outcome::OutcomeSpace;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn conditioning_on_the_integers() {
        let d = catalog::discrete_uniform_z(0, 6).unwrap();
        let y = RandomVariable::rational_value(&OutcomeSpace::Int).unwrap();
        let le2 = Indicator::le_value(&OutcomeSpace::Int, q(2, 1)).unwrap();
        let c = cond_on_indicator(&d, &y, &le2).unwrap();
        assert_eq!(c.predict_at(&Outcome::Int(2)), Rational::one());
        assert_eq!(c.predict_at(&Outcome::Int(-10)), Rational::one());
        assert_eq!(c.predict_at(&Outcome::Int(10)), q(4, 1));
        assert!(tower_check(&d, &c, &y).unwrap());
        assert!(x_meas_check(&d, &c).unwrap());
    }

    #[test]
    fn constant_variable_conditions_to_itself() {
        let d = catalog::discrete_uniform_z(0, 6).unwrap();
        let m = MValue::Scalar(q(7, 3));
        let y = RandomVariable::constant(OutcomeSpace::Int, m);
        let le2 = Indicator::le_value(&OutcomeSpace::Int, q(2, 1)).unwrap();
        let c = cond_on_indicator(&d, &y, &le2).unwrap();
        assert_eq!(c.mean_on_event(), &q(7, 3));
        assert_eq!(c.mean_off_event(), &q(7, 3));
    }

    #[test]
    fn unsatisfiable_events_are_rejected() {
        let d = catalog::discrete_uniform_z(0, 6).unwrap();
        let y = RandomVariable::rational_value(&OutcomeSpace::Int).unwrap();
        let everything = Indicator::le_value(&OutcomeSpace::Int, q(99, 1)).unwrap();
        assert_eq!(cond_on_indicator(&d, &y, &everything).unwrap_err(), Error::NotSatisfiable);
    }

    #[test]
    fn conditioning_on_itself_is_idempotent() {
        let d = catalog::discrete_uniform_z(0, 6).unwrap();
        let y = RandomVariable::rational_value(&OutcomeSpace::Int).unwrap();
        let le2 = Indicator::le_value(&OutcomeSpace::Int, q(2, 1)).unwrap();
        let c = cond_on_indicator(&d, &y, &le2).unwrap();
        let again = cond_on_indicator(&d, c.predictor(), &le2).unwrap();
        assert!(tower_check(&d, &again, c.predictor()).unwrap());
        for entry in d.support() {
            assert_eq!(again.predict_at(&entry.point), c.predict_at(&entry.point));
        }
    }

    #[test]
    fn degenerate_prior_posterior_is_the_point() {
        // a point prior pushed through the joint kernel conditions to itself
        let p = Proportion::new(q(2, 7)).unwrap();
        let prior = Dist::dirac(OutcomeSpace::Prop, Outcome::Prop(p)).unwrap();
        let joint = crate::combinators::bind(
            &prior,
            &crate::kernel::kernel_diag(
                &crate::kernel::Kernel::identity(OutcomeSpace::Prop),
                &catalog::bernoulli_kernel(),
            )
            .unwrap(),
        )
        .unwrap();
        let y = RandomVariable::pair_fst_value(joint.space()).unwrap();
        let observed = Indicator::from_predicate(joint.space().clone(), |w| match w {
            Outcome::Pair(_, b) => b.is_success(),
            _ => false,
        });
        let (on, off) = posterior_eval(&joint, &y, &observed).unwrap();
        assert_eq!(on, q(2, 7));
        assert_eq!(off, q(2, 7));
    }

    #[test]
    fn orthogonality_holds_for_arbitrary_two_point_functions() {
        let d = catalog::discrete_uniform_z(0, 6).unwrap();
        let y = RandomVariable::rational_value(&OutcomeSpace::Int).unwrap();
        let le2 = Indicator::le_value(&OutcomeSpace::Int, q(2, 1)).unwrap();
        let c = cond_on_indicator(&d, &y, &le2).unwrap();
        for (g1, g0) in [(q(1, 1), q(0, 1)), (q(-3, 2), q(7, 5)), (q(0, 1), q(0, 1))] {
            assert!(orthogonality_check(&d, &c, &y, &g1, &g0).unwrap());
        }
    }
}
