//! Markov kernels: functions from outcomes to distributions, with the
//! algebra that composes them into sequential, parallel, branching, and
//! fuel-bounded recursive models.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::combinators::{bind, product, pushforward, OutcomeMap};
use crate::dist::Dist;
use crate::error::{Error, Result};
use crate::numeric::Rational;
use crate::outcome::{Outcome, OutcomeSpace, Side};

type KernelFn = dyn Fn(&Outcome) -> Result<Dist> + Send + Sync;

/// A probabilistic transformation from one sample space to another. Every
/// evaluation yields a distribution over the target space.
#[derive(Clone)]
pub struct Kernel {
    source: OutcomeSpace,
    target: OutcomeSpace,
    eval: Arc<KernelFn>,
}

impl fmt::Debug for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Kernel({} -> {})", self.source, self.target)
    }
}

impl Kernel {
    pub fn from_fn(
        source: OutcomeSpace,
        target: OutcomeSpace,
        eval: impl Fn(&Outcome) -> Result<Dist> + Send + Sync + 'static,
    ) -> Kernel {
        Kernel { source, target, eval: Arc::new(eval) }
    }

    /// The deterministic kernel of an outcome map: a point mass at the
    /// image.
    pub fn pure_map(map: OutcomeMap) -> Kernel {
        let target = map.target().clone();
        Kernel::from_fn(map.source().clone(), map.target().clone(), move |w| {
            Dist::dirac(target.clone(), map.apply(w)?)
        })
    }

    /// The identity kernel: each outcome goes to its own point mass.
    pub fn identity(space: OutcomeSpace) -> Kernel {
        Kernel::pure_map(OutcomeMap::identity(space))
    }

    /// A kernel that ignores its input.
    pub fn constant(source: OutcomeSpace, d: Dist) -> Kernel {
        let target = d.space().clone();
        Kernel::from_fn(source, target, move |_| Ok(d.clone()))
    }

    pub fn source(&self) -> &OutcomeSpace {
        &self.source
    }

    pub fn target(&self) -> &OutcomeSpace {
        &self.target
    }

    pub fn at(&self, outcome: &Outcome) -> Result<Dist> {
        let d = (self.eval)(outcome)?;
        if d.space() != &self.target {
            return Err(Error::SpaceMismatch {
                expected: self.target.to_string(),
                found: d.space().to_string(),
            });
        }
        Ok(d)
    }
}

/// Sequential composition `f . g`: run `g`, then feed each outcome to `f`.
pub fn kernel_compose(f: &Kernel, g: &Kernel) -> Result<Kernel> {
    if g.target != f.source {
        return Err(Error::SpaceMismatch {
            expected: f.source.to_string(),
            found: g.target.to_string(),
        });
    }
    let (f, g) = (f.clone(), g.clone());
    Ok(Kernel::from_fn(g.source.clone(), f.target.clone(), move |w| {
        bind(&g.at(w)?, &f)
    }))
}

/// Pairing: both kernels applied to the same input, independently.
pub fn kernel_diag(f: &Kernel, g: &Kernel) -> Result<Kernel> {
    if f.source != g.source {
        return Err(Error::SpaceMismatch {
            expected: f.source.to_string(),
            found: g.source.to_string(),
        });
    }
    let target = OutcomeSpace::pair(f.target.clone(), g.target.clone());
    let (f, g) = (f.clone(), g.clone());
    Ok(Kernel::from_fn(f.source.clone(), target, move |w| {
        product(&f.at(w)?, &g.at(w)?)
    }))
}

/// Tensor: each kernel transforms its own component of a pair.
pub fn kernel_tensor(f: &Kernel, g: &Kernel) -> Kernel {
    let source = OutcomeSpace::pair(f.source.clone(), g.source.clone());
    let target = OutcomeSpace::pair(f.target.clone(), g.target.clone());
    let (f, g) = (f.clone(), g.clone());
    Kernel::from_fn(source, target, move |w| match w {
        Outcome::Pair(a, b) => product(&f.at(a)?, &g.at(b)?),
        other => Err(Error::ShapeError(format!("tensor kernel needs a pair, got {other}"))),
    })
}

/// First projection from a pair space, as a deterministic kernel.
pub fn kernel_proj1(s1: OutcomeSpace, s2: OutcomeSpace) -> Kernel {
    let space = OutcomeSpace::pair(s1.clone(), s2);
    let map = OutcomeMap::new(space, s1, |w| match w {
        Outcome::Pair(a, _) => Some((**a).clone()),
        _ => None,
    });
    Kernel::pure_map(map)
}

/// Second projection from a pair space.
pub fn kernel_proj2(s1: OutcomeSpace, s2: OutcomeSpace) -> Kernel {
    let space = OutcomeSpace::pair(s1, s2.clone());
    let map = OutcomeMap::new(space, s2, |w| match w {
        Outcome::Pair(_, b) => Some((**b).clone()),
        _ => None,
    });
    Kernel::pure_map(map)
}

/// Left injection into a sum space.
pub fn kernel_inj1(s1: OutcomeSpace, s2: OutcomeSpace) -> Kernel {
    let target = OutcomeSpace::sum(s1.clone(), s2);
    let map = OutcomeMap::new(s1, target, |w| Some(Outcome::tag_left(w.clone())));
    Kernel::pure_map(map)
}

/// Right injection into a sum space.
pub fn kernel_inj2(s1: OutcomeSpace, s2: OutcomeSpace) -> Kernel {
    let target = OutcomeSpace::sum(s1, s2.clone());
    let map = OutcomeMap::new(s2, target, |w| Some(Outcome::tag_right(w.clone())));
    Kernel::pure_map(map)
}

/// Sum of kernels: transforms each alternative independently and re-tags.
pub fn kernel_sum(f: &Kernel, g: &Kernel) -> Kernel {
    let source = OutcomeSpace::sum(f.source.clone(), g.source.clone());
    let target = OutcomeSpace::sum(f.target.clone(), g.target.clone());
    let (f, g) = (f.clone(), g.clone());
    let out = target.clone();
    Kernel::from_fn(source, target, move |w| match w {
        Outcome::Tag(Side::L, inner) => {
            let retag = OutcomeMap::new(f.target.clone(), out.clone(), |x| Some(Outcome::tag_left(x.clone())));
            pushforward(&retag, &f.at(inner)?)
        }
        Outcome::Tag(Side::R, inner) => {
            let retag = OutcomeMap::new(g.target.clone(), out.clone(), |x| Some(Outcome::tag_right(x.clone())));
            pushforward(&retag, &g.at(inner)?)
        }
        other => Err(Error::ShapeError(format!("sum kernel needs a tagged value, got {other}"))),
    })
}

/// Case analysis on a sum: route left inputs to `f`, right inputs to `g`.
pub fn kernel_case(f: &Kernel, g: &Kernel) -> Result<Kernel> {
    if f.target != g.target {
        return Err(Error::SpaceMismatch {
            expected: f.target.to_string(),
            found: g.target.to_string(),
        });
    }
    let source = OutcomeSpace::sum(f.source.clone(), g.source.clone());
    let (f, g) = (f.clone(), g.clone());
    Ok(Kernel::from_fn(source, f.target.clone(), move |w| match w {
        Outcome::Tag(Side::L, inner) => f.at(inner),
        Outcome::Tag(Side::R, inner) => g.at(inner),
        other => Err(Error::ShapeError(format!("case kernel needs a tagged value, got {other}"))),
    }))
}

/// Probabilistic branching: run the binary test on the input, then the
/// matching branch kernel on the same input, mixing by the test's masses.
pub fn kernel_if(test: &Kernel, then_k: &Kernel, else_k: &Kernel) -> Result<Kernel> {
    if !test.target.is_bool2() {
        return Err(Error::SpaceMismatch {
            expected: OutcomeSpace::bool2().to_string(),
            found: test.target.to_string(),
        });
    }
    if test.source != then_k.source || test.source != else_k.source || then_k.target != else_k.target {
        return Err(Error::SpaceMismatch {
            expected: format!("{} -> {}", then_k.source, then_k.target),
            found: format!("{} -> {}", else_k.source, else_k.target),
        });
    }
    let (test, then_k, else_k) = (test.clone(), then_k.clone(), else_k.clone());
    Ok(Kernel::from_fn(test.source.clone(), then_k.target.clone(), move |w| {
        let verdict = test.at(w)?;
        let mut out = Vec::new();
        for entry in verdict.support() {
            let branch = if entry.point.is_success() { &then_k } else { &else_k };
            for inner in branch.at(w)?.support() {
                out.push((&entry.weight * &inner.weight, inner.point.clone()));
            }
        }
        Dist::from_weighted(then_k.target.clone(), out)
    }))
}

/// Bounded fixed-point approximation: applies the kernel transformer
/// `step_transform` to `tail`, `fuel` times.
pub fn kernel_fix_approx(
    fuel: u64,
    tail: &Kernel,
    step_transform: impl Fn(&Kernel) -> Result<Kernel>,
) -> Result<Kernel> {
    let mut acc = tail.clone();
    for _ in 0..fuel {
        acc = step_transform(&acc)?;
    }
    Ok(acc)
}

/// The loop-body transformer of an iterative process: given the kernel
/// handling continuation states, run one `step` and either continue or
/// finish.
pub fn kernel_iterate(step: &Kernel, continue_k: &Kernel) -> Result<Kernel> {
    let finish = Kernel::identity(continue_k.target().clone());
    kernel_compose(&kernel_case(continue_k, &finish)?, step)
}

fn unfold_spaces(tail: &Kernel, step: &Kernel) -> Result<(OutcomeSpace, OutcomeSpace)> {
    let state = tail.source.clone();
    let result = tail.target.clone();
    let expected = OutcomeSpace::sum(state.clone(), result.clone());
    if step.source != state || step.target != expected {
        return Err(Error::SpaceMismatch {
            expected: format!("{state} -> {expected}"),
            found: format!("{} -> {}", step.source, step.target),
        });
    }
    Ok((state, result))
}

/// Fuel-bounded unfolding of a stepwise process.
///
/// `step` maps a state to a distribution over `state + result`; the
/// process repeats on the left summand up to `fuel` times, and any mass
/// still unfinished is resolved through `tail`. Equal to iterating
/// [`kernel_iterate`] under [`kernel_fix_approx`], but evaluated as a
/// forward frontier sweep so shared intermediate states are merged instead
/// of re-expanded path by path.
pub fn kernel_unfoldn(fuel: u64, tail: &Kernel, step: &Kernel) -> Result<Kernel> {
    let (state_space, result_space) = unfold_spaces(tail, step)?;
    let (tail, step) = (tail.clone(), step.clone());
    Ok(Kernel::from_fn(state_space, result_space.clone(), move |start| {
        let mut frontier: BTreeMap<Outcome, Rational> = BTreeMap::new();
        frontier.insert(start.clone(), Rational::one());
        let mut finished: Vec<(Rational, Outcome)> = Vec::new();
        for _ in 0..fuel {
            if frontier.is_empty() {
                break;
            }
            let mut next: BTreeMap<Outcome, Rational> = BTreeMap::new();
            for (state, mass) in &frontier {
                for entry in step.at(state)?.support() {
                    let w = mass * &entry.weight;
                    match &entry.point {
                        Outcome::Tag(Side::L, inner) => {
                            let slot = next.entry((**inner).clone()).or_insert_with(Rational::zero);
                            *slot = &*slot + &w;
                        }
                        Outcome::Tag(Side::R, inner) => finished.push((w, (**inner).clone())),
                        other => {
                            return Err(Error::ShapeError(format!(
                                "step kernel produced untagged outcome {other}"
                            )))
                        }
                    }
                }
            }
            frontier = next;
        }
        for (state, mass) in &frontier {
            for entry in tail.at(state)?.support() {
                finished.push((mass * &entry.weight, entry.point.clone()));
            }
        }
        Dist::from_weighted(result_space.clone(), finished)
    }))
}
