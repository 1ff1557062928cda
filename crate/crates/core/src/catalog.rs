//! The named-distribution catalog, built from the combinators and kernels:
//! finite choice, uniform laws, Bernoulli and urn models, repeated trials,
//! and the counting summaries that turn them into the classical discrete
//! distributions.

use crate::algebra::MValue;
use crate::combinators::{
    bind, convolution_fold, mix_n, product_n, pushforward, uniform_mixture, OutcomeMap,
    OutcomeMonoid,
};
use crate::dist::{Dist, RandomVariable};
use crate::error::{Error, Result};
use crate::kernel::{kernel_case, kernel_if, kernel_proj2, kernel_unfoldn, Kernel};
use crate::numeric::{count_ratio, Proportion, Simplex};
use crate::outcome::{Outcome, OutcomeSpace, Side};

/// Weighted choice among `k` alternatives: mass `s_i` at index `i`.
pub fn kparts(s: &Simplex) -> Result<Dist> {
    let k = s.len() as u64;
    let mixed = mix_n(&crate::combinators::unit_dist(), s)?;
    // reshape the tagged sum of units onto the canonical index space
    let to_fin = if k == 1 {
        OutcomeMap::new(OutcomeSpace::Unit, OutcomeSpace::Fin(1), move |w| match w {
            Outcome::Unit => Outcome::fin(1, 0).ok(),
            _ => None,
        })
    } else {
        OutcomeMap::new(
            OutcomeSpace::pair(OutcomeSpace::Fin(k), OutcomeSpace::Unit),
            OutcomeSpace::Fin(k),
            move |w| match w {
                Outcome::Pair(tag, _) => Some((**tag).clone()),
                _ => None,
            },
        )
    };
    pushforward(&to_fin, &mixed)
}

/// Uniform distribution over `fin(n)`.
pub fn discrete_uniform(n: u64) -> Result<Dist> {
    kparts(&Simplex::uniform(n)?)
}

/// Uniform distribution over the `n` consecutive integers starting at `a`.
pub fn discrete_uniform_z(a: i64, n: u64) -> Result<Dist> {
    let base = discrete_uniform(n)?;
    let shift = OutcomeMap::new(OutcomeSpace::Fin(n), OutcomeSpace::Int, move |w| match w {
        Outcome::Fin { index, .. } => Some(Outcome::Int(a + *index as i64)),
        _ => None,
    });
    pushforward(&shift, &base)
}

/// Mass `p` on success, `1 - p` on failure.
pub fn bernoulli(p: &Proportion) -> Dist {
    crate::combinators::binary_mixture(
        &crate::combinators::unit_dist(),
        p,
        &crate::combinators::unit_dist(),
    )
    .expect("unit mixture is well-formed")
}

/// The Bernoulli family as a kernel from the proportion space.
pub fn bernoulli_kernel() -> Kernel {
    Kernel::from_fn(OutcomeSpace::Prop, OutcomeSpace::bool2(), |w| match w {
        Outcome::Prop(p) => Ok(bernoulli(p)),
        other => Err(Error::MapDomainError(other.to_string())),
    })
}

/// A single draw from an urn with `s` success and `f` failure items.
pub fn binary_urn(s: u64, f: u64) -> Result<Dist> {
    if s == 0 && f == 0 {
        return Err(Error::EmptyUrn);
    }
    Ok(bernoulli(&count_ratio(s, f)?))
}

/// `n` independent Bernoulli draws as a tuple of booleans.
pub fn bernoulli_trials(n: u64, p: &Proportion) -> Result<Dist> {
    if n == 0 {
        return Err(Error::ArityError("trials need n >= 1".into()));
    }
    product_n(&vec![bernoulli(p); n as usize])
}

/// `n` independent `k`-way choices as a tuple of indices.
pub fn kparts_trials(n: u64, s: &Simplex) -> Result<Dist> {
    if n == 0 {
        return Err(Error::ArityError("trials need n >= 1".into()));
    }
    product_n(&vec![kparts(s)?; n as usize])
}

fn seq_space(n: u64) -> OutcomeSpace {
    OutcomeSpace::power(OutcomeSpace::bool2(), n as usize).expect("n >= 1")
}

/// Wraps a single draw into a length-one sequence.
fn singleton_seq() -> OutcomeMap {
    OutcomeMap::new(OutcomeSpace::bool2(), seq_space(1), |w| {
        Some(Outcome::Tuple(vec![w.clone()]))
    })
}

/// Prepends a fixed first draw to sequences of length `n`.
fn prepend_draw(first: Outcome, n: u64) -> OutcomeMap {
    OutcomeMap::new(seq_space(n), seq_space(n + 1), move |w| match w {
        Outcome::Tuple(items) => {
            let mut out = Vec::with_capacity(items.len() + 1);
            out.push(first.clone());
            out.extend(items.iter().cloned());
            Some(Outcome::Tuple(out))
        }
        _ => None,
    })
}

/// Draws `n` times from an urn without replacement; the urn loses the
/// drawn item before each recursive draw. Demanding a draw from an empty
/// urn is an error.
pub fn urn_trials(s: u64, f: u64, n: u64) -> Result<Dist> {
    if n == 0 {
        return Err(Error::ArityError("trials need n >= 1".into()));
    }
    if n == 1 {
        return pushforward(&singleton_seq(), &binary_urn(s, f)?);
    }
    match (s, f) {
        (0, 0) => Err(Error::EmptyUrn),
        (s, 0) => {
            // only successes left: the first draw is deterministic
            let rest = urn_trials(s - 1, 0, n - 1)?;
            pushforward(&prepend_draw(Outcome::success(), n - 1), &rest)
        }
        (0, f) => {
            let rest = urn_trials(0, f - 1, n - 1)?;
            pushforward(&prepend_draw(Outcome::failure(), n - 1), &rest)
        }
        (s, f) => {
            let draw = binary_urn(s, f)?;
            let after_success = pushforward(&prepend_draw(Outcome::success(), n - 1), &urn_trials(s - 1, f, n - 1)?)?;
            let after_failure = pushforward(&prepend_draw(Outcome::failure(), n - 1), &urn_trials(s, f - 1, n - 1)?)?;
            let route = kernel_case(
                &Kernel::constant(OutcomeSpace::Unit, after_success),
                &Kernel::constant(OutcomeSpace::Unit, after_failure),
            )?;
            bind(&draw, &route)
        }
    }
}

/// Number of successes in a boolean sequence.
pub fn count_successes_map(n: u64) -> OutcomeMap {
    OutcomeMap::new(seq_space(n), OutcomeSpace::Nat, |w| match w {
        Outcome::Tuple(items) => {
            let count = items.iter().filter(|x| x.is_success()).count() as u64;
            Some(Outcome::Nat(count))
        }
        _ => None,
    })
}

/// Number of successes clamped at `k`, landing in `fin(k + 1)`.
pub fn count_upto_k_map(k: u64, n: u64) -> OutcomeMap {
    OutcomeMap::new(seq_space(n), OutcomeSpace::Fin(k + 1), move |w| match w {
        Outcome::Tuple(items) => {
            let count = items.iter().filter(|x| x.is_success()).count() as u64;
            Outcome::fin(k + 1, count.min(k)).ok()
        }
        _ => None,
    })
}

/// Successes in `n` draws without replacement from a population of
/// `population` items of which `marked` are successes.
pub fn hypergeometric(population: u64, marked: u64, draws: u64) -> Result<Dist> {
    if marked > population || draws > population {
        return Err(Error::BadUrn(format!(
            "population {population}, marked {marked}, draws {draws}"
        )));
    }
    if draws == 0 {
        return Err(Error::ArityError("trials need n >= 1".into()));
    }
    let trials = urn_trials(marked, population - marked, draws)?;
    pushforward(&count_upto_k_map(marked, draws), &trials)
}

/// Category counts of `n` independent `k`-way choices, as convolution of
/// unit count-vectors.
pub fn multinomial(n: u64, s: &Simplex) -> Result<Dist> {
    let k = s.len();
    let monoid = OutcomeMonoid::count_vector_add(k)?;
    let choice = kparts(s)?;
    let to_unit_vector = OutcomeMap::new(
        OutcomeSpace::Fin(k as u64),
        monoid.space().clone(),
        move |w| match w {
            Outcome::Fin { index, .. } => {
                let mut counts = vec![Outcome::Nat(0); k];
                counts[*index as usize] = Outcome::Nat(1);
                Some(Outcome::Tuple(counts))
            }
            _ => None,
        },
    );
    let indicator_vectors = pushforward(&to_unit_vector, &choice)?;
    convolution_fold(&monoid, n as usize, |_| Ok(indicator_vectors.clone()))
}

/// Success count of `n` independent Bernoulli trials, as convolution of
/// 1/0 values.
pub fn binomial(n: u64, p: &Proportion) -> Result<Dist> {
    let monoid = OutcomeMonoid::nat_add();
    let to_count = OutcomeMap::new(OutcomeSpace::bool2(), OutcomeSpace::Nat, |w| match w {
        Outcome::Tag(Side::L, _) => Some(Outcome::Nat(1)),
        Outcome::Tag(Side::R, _) => Some(Outcome::Nat(0)),
        _ => None,
    });
    let trial = pushforward(&to_count, &bernoulli(p))?;
    convolution_fold(&monoid, n as usize, |_| Ok(trial.clone()))
}

fn nb_state_space() -> OutcomeSpace {
    OutcomeSpace::pair(OutcomeSpace::Nat, OutcomeSpace::Nat)
}

/// One trial of the negative-binomial process: a success decrements the
/// required-success count (terminating when it reaches zero), a failure
/// increments the failure count.
pub fn step_nb(p: &Proportion) -> Kernel {
    let state = nb_state_space();
    let step_target = OutcomeSpace::sum(state.clone(), OutcomeSpace::Nat);
    let test = Kernel::constant(state.clone(), bernoulli(p));
    let on_success = Kernel::pure_map(OutcomeMap::new(state.clone(), step_target.clone(), |w| match w {
        Outcome::Pair(need, fails) => match (&**need, &**fails) {
            (Outcome::Nat(1), fails) => Some(Outcome::tag_right(fails.clone())),
            (Outcome::Nat(need), fails) if *need >= 2 => Some(Outcome::tag_left(Outcome::pair(
                Outcome::Nat(need - 1),
                fails.clone(),
            ))),
            _ => None,
        },
        _ => None,
    }));
    let on_failure = Kernel::pure_map(OutcomeMap::new(state, step_target, |w| match w {
        Outcome::Pair(need, fails) => match (&**need, &**fails) {
            (need @ Outcome::Nat(_), Outcome::Nat(fails)) => Some(Outcome::tag_left(Outcome::pair(
                need.clone(),
                Outcome::Nat(fails + 1),
            ))),
            _ => None,
        },
        _ => None,
    }));
    kernel_if(&test, &on_success, &on_failure).expect("step spaces line up")
}

/// Number of failures before the `r`-th success, unfolded with bounded
/// fuel. Mass still in flight at exhaustion reports its failure count so
/// far through the tail.
pub fn negative_binomial_approx(fuel: u64, r: u64, p: &Proportion) -> Result<Dist> {
    if r == 0 {
        return Err(Error::ArityError("negative binomial needs r >= 1".into()));
    }
    let tail = kernel_proj2(OutcomeSpace::Nat, OutcomeSpace::Nat);
    let process = kernel_unfoldn(fuel, &tail, &step_nb(p))?;
    process.at(&Outcome::pair(Outcome::Nat(r), Outcome::Nat(0)))
}

/// Trial index of the first success, supported on {1, 2, ...}.
pub fn geometric_with_fuel(fuel: u64, p: &Proportion) -> Result<Dist> {
    let failures = negative_binomial_approx(fuel, 1, p)?;
    let succ = OutcomeMap::new(OutcomeSpace::Nat, OutcomeSpace::Nat, |w| match w {
        Outcome::Nat(n) => Some(Outcome::Nat(n + 1)),
        _ => None,
    });
    pushforward(&succ, &failures)
}

/// Geometric law at the catalog's default fuel of 10.
pub fn geometric(p: &Proportion) -> Result<Dist> {
    geometric_with_fuel(10, p)
}

/// Equal mass on a finite collection of observations.
pub fn empirical(space: OutcomeSpace, points: &[Outcome]) -> Result<Dist> {
    uniform_mixture(space, points)
}

/// Lifts samples to their empirical law: a kernel from length-`n` tuples
/// over `space` to `space` itself.
pub fn empirical_kernel(space: OutcomeSpace, n: u64) -> Result<Kernel> {
    if n == 0 {
        return Err(Error::ArityError("samples need n >= 1".into()));
    }
    let source = OutcomeSpace::power(space.clone(), n as usize)?;
    let target = space.clone();
    Ok(Kernel::from_fn(source, space, move |w| match w {
        Outcome::Tuple(items) => empirical(target.clone(), items),
        other => Err(Error::MapDomainError(other.to_string())),
    }))
}

/// The average of `x` under the empirical law of the sample.
pub fn sample_mean(space: OutcomeSpace, points: &[Outcome], x: &RandomVariable) -> Result<MValue> {
    empirical(space, points)?.expect(x)
}
