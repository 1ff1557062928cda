//! Primitive operations for building distributions (point masses,
//! pushforwards, function application, sequencing, mixtures) and the
//! derived operations on top of them: products, marginals, convolution,
//! and the mixture family.

use std::sync::Arc;

use crate::dist::{Dist, RandomVariable};
use crate::error::{Error, Result};
use crate::kernel::Kernel;
use crate::numeric::{Proportion, Rational, Simplex};
use crate::outcome::{Outcome, OutcomeSpace};

type MapFn = dyn Fn(&Outcome) -> Option<Outcome> + Send + Sync;
type Map2Fn = dyn Fn(&Outcome, &Outcome) -> Option<Outcome> + Send + Sync;

/// A (possibly partial) transformation between sample spaces. Partiality
/// surfaces as `MapDomainError` when a distribution is pushed through a
/// point the map does not cover.
#[derive(Clone)]
pub struct OutcomeMap {
    source: OutcomeSpace,
    target: OutcomeSpace,
    map: Arc<MapFn>,
}

impl std::fmt::Debug for OutcomeMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OutcomeMap({} -> {})", self.source, self.target)
    }
}

impl OutcomeMap {
    pub fn new(
        source: OutcomeSpace,
        target: OutcomeSpace,
        map: impl Fn(&Outcome) -> Option<Outcome> + Send + Sync + 'static,
    ) -> OutcomeMap {
        OutcomeMap { source, target, map: Arc::new(map) }
    }

    pub fn identity(space: OutcomeSpace) -> OutcomeMap {
        OutcomeMap::new(space.clone(), space, |w| Some(w.clone()))
    }

    pub fn source(&self) -> &OutcomeSpace {
        &self.source
    }

    pub fn target(&self) -> &OutcomeSpace {
        &self.target
    }

    pub fn apply(&self, outcome: &Outcome) -> Result<Outcome> {
        (self.map)(outcome).ok_or_else(|| Error::MapDomainError(outcome.to_string()))
    }

    /// `self` after `inner`.
    pub fn compose(&self, inner: &OutcomeMap) -> Result<OutcomeMap> {
        if inner.target != self.source {
            return Err(Error::SpaceMismatch {
                expected: self.source.to_string(),
                found: inner.target.to_string(),
            });
        }
        let (f, g) = (self.map.clone(), inner.map.clone());
        Ok(OutcomeMap::new(inner.source.clone(), self.target.clone(), move |w| {
            g(w).and_then(|mid| f(&mid))
        }))
    }
}

/// A binary transformation, used by `map2` and convolution.
#[derive(Clone)]
pub struct OutcomeMap2 {
    source1: OutcomeSpace,
    source2: OutcomeSpace,
    target: OutcomeSpace,
    map: Arc<Map2Fn>,
}

impl OutcomeMap2 {
    pub fn new(
        source1: OutcomeSpace,
        source2: OutcomeSpace,
        target: OutcomeSpace,
        map: impl Fn(&Outcome, &Outcome) -> Option<Outcome> + Send + Sync + 'static,
    ) -> OutcomeMap2 {
        OutcomeMap2 { source1, source2, target, map: Arc::new(map) }
    }

    /// The pairing map `(a, b) -> Pair(a, b)`.
    pub fn pairing(s1: OutcomeSpace, s2: OutcomeSpace) -> OutcomeMap2 {
        let target = OutcomeSpace::pair(s1.clone(), s2.clone());
        OutcomeMap2::new(s1, s2, target, |a, b| Some(Outcome::pair(a.clone(), b.clone())))
    }
}

/// A monoid structure on an outcome space, supplied by the caller; `op`
/// must be associative with `unit` as identity on the carrier.
#[derive(Clone)]
pub struct OutcomeMonoid {
    space: OutcomeSpace,
    unit: Outcome,
    op: Arc<Map2Fn>,
}

impl OutcomeMonoid {
    pub fn new(
        space: OutcomeSpace,
        unit: Outcome,
        op: impl Fn(&Outcome, &Outcome) -> Option<Outcome> + Send + Sync + 'static,
    ) -> OutcomeMonoid {
        OutcomeMonoid { space, unit, op: Arc::new(op) }
    }

    /// Additive naturals.
    pub fn nat_add() -> OutcomeMonoid {
        OutcomeMonoid::new(OutcomeSpace::Nat, Outcome::Nat(0), |a, b| match (a, b) {
            (Outcome::Nat(x), Outcome::Nat(y)) => Some(Outcome::Nat(x + y)),
            _ => None,
        })
    }

    /// Componentwise addition of `k`-tuples of naturals (count vectors).
    pub fn count_vector_add(k: usize) -> Result<OutcomeMonoid> {
        let space = OutcomeSpace::power(OutcomeSpace::Nat, k)?;
        let unit = Outcome::Tuple(vec![Outcome::Nat(0); k]);
        Ok(OutcomeMonoid::new(space, unit, |a, b| match (a, b) {
            (Outcome::Tuple(xs), Outcome::Tuple(ys)) if xs.len() == ys.len() => {
                let mut sum = Vec::with_capacity(xs.len());
                for (x, y) in xs.iter().zip(ys) {
                    match (x, y) {
                        (Outcome::Nat(u), Outcome::Nat(v)) => sum.push(Outcome::Nat(u + v)),
                        _ => return None,
                    }
                }
                Some(Outcome::Tuple(sum))
            }
            _ => None,
        }))
    }

    pub fn space(&self) -> &OutcomeSpace {
        &self.space
    }

    pub fn unit(&self) -> &Outcome {
        &self.unit
    }
}

/// Point mass: expectation evaluates every random variable at `point`.
pub fn dirac(space: OutcomeSpace, point: Outcome) -> Result<Dist> {
    Dist::dirac(space, point)
}

/// The degenerate distribution over the unit space.
pub fn unit_dist() -> Dist {
    Dist::dirac(OutcomeSpace::Unit, Outcome::Unit).expect("unit point mass")
}

/// Image distribution: transports mass through `f`, then canonicalizes.
/// Expectation against any `X` over the target equals expectation of
/// `X . f` over the source, definitionally.
pub fn pushforward(f: &OutcomeMap, d: &Dist) -> Result<Dist> {
    if d.space() != f.source() {
        return Err(Error::SpaceMismatch {
            expected: f.source().to_string(),
            found: d.space().to_string(),
        });
    }
    let mut mapped = Vec::with_capacity(d.support().len());
    for entry in d.support() {
        mapped.push((entry.weight.clone(), f.apply(&entry.point)?));
    }
    Dist::from_weighted(f.target().clone(), mapped)
}

/// Precomposition of a random variable with an outcome map: `X . f` over
/// the map's source. The map must be total on the points the result is
/// evaluated at.
pub fn compose_rv(x: &RandomVariable, f: &OutcomeMap) -> Result<RandomVariable> {
    if x.space() != f.target() {
        return Err(Error::SpaceMismatch {
            expected: f.target().to_string(),
            found: x.space().to_string(),
        });
    }
    let inner = f.clone();
    let x = x.clone();
    Ok(RandomVariable::new(f.source().clone(), x.shape(), move |w| {
        let mid = inner.apply(w).expect("map must be total where the composite is evaluated");
        x.at(&mid)
    }))
}

/// Applies a weighted family of transformations to a distribution: mass
/// `wf * wx` lands on `f(x)`. Equal to pushing `apply` over the product of
/// the function distribution and `dx`.
pub fn ap(df: &[(Rational, OutcomeMap)], dx: &Dist) -> Result<Dist> {
    if df.is_empty() {
        return Err(Error::EmptyMixture);
    }
    let mut total = Rational::zero();
    for (w, f) in df {
        if w.is_negative() {
            return Err(Error::NegativeWeight(w.to_string()));
        }
        total = &total + w;
        if f.source() != dx.space() || f.target() != df[0].1.target() {
            return Err(Error::SpaceMismatch {
                expected: dx.space().to_string(),
                found: f.source().to_string(),
            });
        }
    }
    if total != Rational::one() {
        return Err(Error::MassNotOne(total.to_string()));
    }
    let mut out = Vec::new();
    for (wf, f) in df {
        for entry in dx.support() {
            out.push((wf * &entry.weight, f.apply(&entry.point)?));
        }
    }
    Dist::from_weighted(df[0].1.target().clone(), out)
}

/// Sequential composition: distributes the mass of `d` through the kernel.
pub fn bind(d: &Dist, k: &Kernel) -> Result<Dist> {
    if d.space() != k.source() {
        return Err(Error::SpaceMismatch {
            expected: k.source().to_string(),
            found: d.space().to_string(),
        });
    }
    let mut out = Vec::new();
    for entry in d.support() {
        let stage = k.at(&entry.point)?;
        for inner in stage.support() {
            out.push((&entry.weight * &inner.weight, inner.point.clone()));
        }
    }
    Dist::from_weighted(k.target().clone(), out)
}

/// Convex combination of `k` branches over a shared space. For `k >= 2`
/// each branch outcome is wrapped with its index as `Pair(Fin(k, i), _)`;
/// a single branch is returned untagged.
pub fn mix(branches: &[Dist], simplex: &Simplex) -> Result<Dist> {
    if branches.len() != simplex.len() {
        return Err(Error::ArityError(format!(
            "{} branches vs {} weights",
            branches.len(),
            simplex.len()
        )));
    }
    let k = branches.len() as u64;
    if k == 1 {
        return Ok(branches[0].clone());
    }
    let space = branches[0].space().clone();
    for b in branches {
        if b.space() != &space {
            return Err(Error::SpaceMismatch {
                expected: space.to_string(),
                found: b.space().to_string(),
            });
        }
    }
    let tagged_space = OutcomeSpace::pair(OutcomeSpace::Fin(k), space);
    let mut out = Vec::new();
    for (i, (branch, s)) in branches.iter().zip(simplex.weights()).enumerate() {
        for entry in branch.support() {
            let tagged = Outcome::pair(Outcome::fin(k, i as u64)?, entry.point.clone());
            out.push((s * &entry.weight, tagged));
        }
    }
    Dist::from_weighted(tagged_space, out)
}

/// Mixture of `k` copies of one distribution, indexed by the simplex.
pub fn mix_n(d: &Dist, simplex: &Simplex) -> Result<Dist> {
    mix(&vec![d.clone(); simplex.len()], simplex)
}

/// Drops the index tag a `k >= 2` mixture added.
pub fn mix_untag(k: u64, space: OutcomeSpace) -> OutcomeMap {
    let tagged = OutcomeSpace::pair(OutcomeSpace::Fin(k), space.clone());
    OutcomeMap::new(tagged, space, |w| match w {
        Outcome::Pair(_, x) => Some((**x).clone()),
        _ => None,
    })
}

/// Lifts a binary transformation to distributions via the product.
pub fn map2(op: &OutcomeMap2, d1: &Dist, d2: &Dist) -> Result<Dist> {
    if d1.space() != &op.source1 || d2.space() != &op.source2 {
        return Err(Error::SpaceMismatch {
            expected: format!("{} and {}", op.source1, op.source2),
            found: format!("{} and {}", d1.space(), d2.space()),
        });
    }
    let mut out = Vec::new();
    for a in d1.support() {
        for b in d2.support() {
            let image = (op.map)(&a.point, &b.point)
                .ok_or_else(|| Error::MapDomainError(format!("({}, {})", a.point, b.point)))?;
            out.push((&a.weight * &b.weight, image));
        }
    }
    Dist::from_weighted(op.target.clone(), out)
}

/// Independent joint distribution; the weight of `(a, b)` is the product
/// of the marginal weights.
pub fn product(d1: &Dist, d2: &Dist) -> Result<Dist> {
    map2(&OutcomeMap2::pairing(d1.space().clone(), d2.space().clone()), d1, d2)
}

fn pair_components(space: &OutcomeSpace) -> Result<(OutcomeSpace, OutcomeSpace)> {
    match space {
        OutcomeSpace::Pair(a, b) => Ok(((**a).clone(), (**b).clone())),
        other => Err(Error::SpaceMismatch {
            expected: "a pair space".into(),
            found: other.to_string(),
        }),
    }
}

pub fn proj1_map(space: &OutcomeSpace) -> Result<OutcomeMap> {
    let (a, _) = pair_components(space)?;
    Ok(OutcomeMap::new(space.clone(), a, |w| match w {
        Outcome::Pair(x, _) => Some((**x).clone()),
        _ => None,
    }))
}

pub fn proj2_map(space: &OutcomeSpace) -> Result<OutcomeMap> {
    let (_, b) = pair_components(space)?;
    Ok(OutcomeMap::new(space.clone(), b, |w| match w {
        Outcome::Pair(_, y) => Some((**y).clone()),
        _ => None,
    }))
}

pub fn marginal1(d: &Dist) -> Result<Dist> {
    pushforward(&proj1_map(d.space())?, d)
}

pub fn marginal2(d: &Dist) -> Result<Dist> {
    pushforward(&proj2_map(d.space())?, d)
}

/// Independent product of one or more factors, exposed as flat tuples.
pub fn product_n(factors: &[Dist]) -> Result<Dist> {
    if factors.is_empty() {
        return Err(Error::ArityError("product of zero factors".into()));
    }
    let space = OutcomeSpace::tuple(factors.iter().map(|d| d.space().clone()).collect())?;
    let mut rows: Vec<(Rational, Vec<Outcome>)> = vec![(Rational::one(), Vec::new())];
    for factor in factors {
        let mut next = Vec::with_capacity(rows.len() * factor.support().len());
        for (w, row) in &rows {
            for entry in factor.support() {
                let mut extended = row.clone();
                extended.push(entry.point.clone());
                next.push((w * &entry.weight, extended));
            }
        }
        rows = next;
    }
    Dist::from_weighted(space, rows.into_iter().map(|(w, row)| (w, Outcome::Tuple(row))).collect())
}

/// Marginal of the `i`-th tuple component.
pub fn marginal_i(d: &Dist, i: usize) -> Result<Dist> {
    let spaces = match d.space() {
        OutcomeSpace::Tuple(items) => items.clone(),
        other => {
            return Err(Error::SpaceMismatch {
                expected: "a tuple space".into(),
                found: other.to_string(),
            })
        }
    };
    if i >= spaces.len() {
        return Err(Error::ArityError(format!("component {i} of a {}-tuple", spaces.len())));
    }
    let component = spaces[i].clone();
    let map = OutcomeMap::new(d.space().clone(), component, move |w| match w {
        Outcome::Tuple(items) => items.get(i).cloned(),
        _ => None,
    });
    pushforward(&map, d)
}

/// Distribution of the monoid operation applied to independent draws.
pub fn convolution(monoid: &OutcomeMonoid, d1: &Dist, d2: &Dist) -> Result<Dist> {
    let op = monoid.op.clone();
    let lifted = OutcomeMap2::new(
        monoid.space.clone(),
        monoid.space.clone(),
        monoid.space.clone(),
        move |a, b| op(a, b),
    );
    map2(&lifted, d1, d2)
}

/// Left-to-right convolution of `n` factors; zero factors give the unit
/// point mass.
pub fn convolution_fold(
    monoid: &OutcomeMonoid,
    n: usize,
    branch: impl Fn(usize) -> Result<Dist>,
) -> Result<Dist> {
    let mut acc = Dist::dirac(monoid.space.clone(), monoid.unit.clone())?;
    for i in 0..n {
        acc = convolution(monoid, &acc, &branch(i)?)?;
    }
    Ok(acc)
}

/// Mixture over two possibly different spaces, tagged into their sum:
/// mass `p` on the left injection of `d1`, `1 - p` on the right of `d2`.
pub fn binary_mixture(d1: &Dist, p: &Proportion, d2: &Dist) -> Result<Dist> {
    let space = OutcomeSpace::sum(d1.space().clone(), d2.space().clone());
    let mut out = Vec::new();
    for entry in d1.support() {
        out.push((p.value() * &entry.weight, Outcome::tag_left(entry.point.clone())));
    }
    let cp = p.complement();
    for entry in d2.support() {
        out.push((cp.value() * &entry.weight, Outcome::tag_right(entry.point.clone())));
    }
    Dist::from_weighted(space, out)
}

/// Homogeneous binary mixture: tags are reduced away again, leaving a
/// distribution on the shared space.
pub fn choose(p: &Proportion, d1: &Dist, d2: &Dist) -> Result<Dist> {
    if d1.space() != d2.space() {
        return Err(Error::SpaceMismatch {
            expected: d1.space().to_string(),
            found: d2.space().to_string(),
        });
    }
    let mixed = binary_mixture(d1, p, d2)?;
    let reduce = OutcomeMap::new(mixed.space().clone(), d1.space().clone(), |w| match w {
        Outcome::Tag(_, inner) => Some((**inner).clone()),
        _ => None,
    });
    pushforward(&reduce, &mixed)
}

/// Equal mass `1/n` on each of the given points (duplicates merge).
pub fn uniform_mixture(space: OutcomeSpace, points: &[Outcome]) -> Result<Dist> {
    if points.is_empty() {
        return Err(Error::EmptyMixture);
    }
    let w = Rational::new(1, points.len() as i64).expect("nonempty");
    Dist::from_weighted(space, points.iter().map(|p| (w.clone(), p.clone())).collect())
}

/// Uniform distribution over a collection of tuples (rows).
pub fn uniform_tuple_mixture(spaces: Vec<OutcomeSpace>, rows: &[Vec<Outcome>]) -> Result<Dist> {
    if rows.is_empty() {
        return Err(Error::EmptyMixture);
    }
    let width = spaces.len();
    let space = OutcomeSpace::tuple(spaces)?;
    let mut points = Vec::with_capacity(rows.len());
    for row in rows {
        if row.len() != width {
            return Err(Error::ArityError(format!("row of length {} in a {width}-tuple mixture", row.len())));
        }
        points.push(Outcome::Tuple(row.clone()));
    }
    uniform_mixture(space, &points)
}

/// Equal-weight mixture of whole distributions, realized as the nested
/// `choose` recursion with weights 1/m, 1/(m-1), ...
pub fn uniform_component_mixture(dists: &[Dist]) -> Result<Dist> {
    match dists {
        [] => Err(Error::EmptyMixture),
        [only] => Ok(only.clone()),
        [head, rest @ ..] => {
            let m = dists.len() as i64;
            let p = Proportion::new(Rational::new(1, m)?)?;
            choose(&p, head, &uniform_component_mixture(rest)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraShape, MValue};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn prop(n: i64, d: i64) -> Proportion {
        Proportion::new(q(n, d)).unwrap()
    }

    fn nat_dist(points: &[(i64, i64, u64)]) -> Dist {
        Dist::from_weighted(
            OutcomeSpace::Nat,
            points.iter().map(|&(n, d, v)| (q(n, d), Outcome::Nat(v))).collect(),
        )
        .unwrap()
    }

    fn nat_map(f: impl Fn(u64) -> u64 + Send + Sync + 'static) -> OutcomeMap {
        OutcomeMap::new(OutcomeSpace::Nat, OutcomeSpace::Nat, move |w| match w {
            Outcome::Nat(n) => Some(Outcome::Nat(f(*n))),
            _ => None,
        })
    }

    #[test]
    fn dirac_evaluates_pointwise() {
        let d = dirac(OutcomeSpace::Nat, Outcome::Nat(2)).unwrap();
        let x = RandomVariable::rational_value(&OutcomeSpace::Nat).unwrap();
        assert_eq!(d.expect(&x).unwrap(), MValue::Scalar(q(2, 1)));
        assert!(unit_dist().dist_eq(&unit_dist()).unwrap());
    }

    #[test]
    fn pushforward_functor_laws() {
        let d = nat_dist(&[(1, 2, 0), (1, 3, 1), (1, 6, 2)]);
        let id = OutcomeMap::identity(OutcomeSpace::Nat);
        assert!(pushforward(&id, &d).unwrap().dist_eq(&d).unwrap());

        let f = nat_map(|n| n + 1);
        let g = nat_map(|n| n * 2);
        let composed = pushforward(&g.compose(&f).unwrap(), &d).unwrap();
        let separate = pushforward(&g, &pushforward(&f, &d).unwrap()).unwrap();
        assert!(composed.dist_eq(&separate).unwrap());
    }

    #[test]
    fn pushforward_reports_partial_maps() {
        let d = nat_dist(&[(1, 1, 3)]);
        let partial = OutcomeMap::new(OutcomeSpace::Nat, OutcomeSpace::Nat, |_| None);
        assert!(matches!(pushforward(&partial, &d), Err(Error::MapDomainError(_))));
    }

    #[test]
    fn lotus_holds_definitionally() {
        let d = nat_dist(&[(2, 5, 0), (1, 5, 1), (2, 5, 4)]);
        let f = nat_map(|n| n * n + 1);
        let x = RandomVariable::rational_value(&OutcomeSpace::Nat).unwrap();
        let lhs = pushforward(&f, &d).unwrap().expect(&x).unwrap();
        let rhs = d.expect(&compose_rv(&x, &f).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ap_with_one_function_is_pushforward() {
        let d = nat_dist(&[(1, 2, 1), (1, 2, 2)]);
        let f = nat_map(|n| n + 5);
        let applied = ap(&[(Rational::one(), f.clone())], &d).unwrap();
        assert!(applied.dist_eq(&pushforward(&f, &d).unwrap()).unwrap());
    }

    #[test]
    fn ap_on_a_point_mass_is_the_function_image() {
        let x = dirac(OutcomeSpace::Nat, Outcome::Nat(3)).unwrap();
        let fam = vec![(q(1, 3), nat_map(|n| n)), (q(2, 3), nat_map(|n| n + 1))];
        let applied = ap(&fam, &x).unwrap();
        let expected = nat_dist(&[(1, 3, 3), (2, 3, 4)]);
        assert!(applied.dist_eq(&expected).unwrap());
    }

    #[test]
    fn bind_identities() {
        let d = nat_dist(&[(1, 4, 0), (3, 4, 7)]);
        let pure = Kernel::pure_map(OutcomeMap::identity(OutcomeSpace::Nat));
        assert!(bind(&d, &pure).unwrap().dist_eq(&d).unwrap());

        let k = Kernel::from_fn(OutcomeSpace::Nat, OutcomeSpace::Nat, |w| match w {
            Outcome::Nat(0) => Dist::from_weighted(
                OutcomeSpace::Nat,
                vec![
                    (Rational::new(1, 2).unwrap(), Outcome::Nat(10)),
                    (Rational::new(1, 2).unwrap(), Outcome::Nat(11)),
                ],
            ),
            w => Dist::dirac(OutcomeSpace::Nat, w.clone()),
        });
        let fixed = Outcome::Nat(0);
        let left = bind(&Dist::dirac(OutcomeSpace::Nat, fixed.clone()).unwrap(), &k).unwrap();
        assert!(left.dist_eq(&k.at(&fixed).unwrap()).unwrap());
    }

    #[test]
    fn mix_mass_bookkeeping() {
        let a = dirac(OutcomeSpace::Nat, Outcome::Nat(1)).unwrap();
        let b = dirac(OutcomeSpace::Nat, Outcome::Nat(2)).unwrap();
        let s = Simplex::new(vec![q(1, 3), q(2, 3)]).unwrap();
        let mixed = mix(&[a.clone(), b], &s).unwrap();
        let tag0 = Outcome::pair(Outcome::fin(2, 0).unwrap(), Outcome::Nat(1));
        let tag1 = Outcome::pair(Outcome::fin(2, 1).unwrap(), Outcome::Nat(2));
        assert_eq!(mixed.mass_at(&tag0).unwrap(), q(1, 3));
        assert_eq!(mixed.mass_at(&tag1).unwrap(), q(2, 3));

        // single branch comes back untagged
        let single = mix(std::slice::from_ref(&a), &Simplex::uniform(1).unwrap()).unwrap();
        assert!(single.dist_eq(&a).unwrap());
    }

    #[test]
    fn mix_untag_recovers_the_branch() {
        let d = nat_dist(&[(1, 2, 3), (1, 2, 4)]);
        let s = Simplex::new(vec![q(1, 4), q(3, 4)]).unwrap();
        let mixed = mix(&[d.clone(), d.clone()], &s).unwrap();
        let untagged = pushforward(&mix_untag(2, OutcomeSpace::Nat), &mixed).unwrap();
        assert!(untagged.dist_eq(&d).unwrap());
    }

    #[test]
    fn map2_pairing_is_product() {
        let d1 = nat_dist(&[(1, 2, 0), (1, 2, 1)]);
        let d2 = nat_dist(&[(1, 3, 5), (2, 3, 6)]);
        let joint = product(&d1, &d2).unwrap();
        let via_map2 = map2(&OutcomeMap2::pairing(OutcomeSpace::Nat, OutcomeSpace::Nat), &d1, &d2).unwrap();
        assert!(joint.dist_eq(&via_map2).unwrap());
        assert!(marginal1(&joint).unwrap().dist_eq(&d1).unwrap());
        assert!(marginal2(&joint).unwrap().dist_eq(&d2).unwrap());
        assert_eq!(
            joint.mass_at(&Outcome::pair(Outcome::Nat(1), Outcome::Nat(5))).unwrap(),
            q(1, 6)
        );
    }

    #[test]
    fn map2_addition_of_point_masses() {
        let two = dirac(OutcomeSpace::Nat, Outcome::Nat(2)).unwrap();
        let three = dirac(OutcomeSpace::Nat, Outcome::Nat(3)).unwrap();
        let add = OutcomeMonoid::nat_add();
        let sum = convolution(&add, &two, &three).unwrap();
        assert!(sum.dist_eq(&dirac(OutcomeSpace::Nat, Outcome::Nat(5)).unwrap()).unwrap());
    }

    #[test]
    fn convolution_unit_law() {
        let d = nat_dist(&[(1, 2, 1), (1, 2, 4)]);
        let add = OutcomeMonoid::nat_add();
        let unit = dirac(add.space().clone(), add.unit().clone()).unwrap();
        assert!(convolution(&add, &unit, &d).unwrap().dist_eq(&d).unwrap());
        assert!(convolution(&add, &d, &unit).unwrap().dist_eq(&d).unwrap());
        // commutative monoid: convolution commutes
        let e = nat_dist(&[(1, 3, 0), (2, 3, 2)]);
        assert!(convolution(&add, &d, &e).unwrap().dist_eq(&convolution(&add, &e, &d).unwrap()).unwrap());
    }

    #[test]
    fn product_n_and_component_marginals() {
        let d1 = nat_dist(&[(1, 2, 0), (1, 2, 1)]);
        let d2 = nat_dist(&[(1, 3, 5), (2, 3, 6)]);
        let d3 = nat_dist(&[(1, 1, 9)]);
        let joint = product_n(&[d1.clone(), d2.clone(), d3.clone()]).unwrap();
        assert!(marginal_i(&joint, 0).unwrap().dist_eq(&d1).unwrap());
        assert!(marginal_i(&joint, 1).unwrap().dist_eq(&d2).unwrap());
        assert!(marginal_i(&joint, 2).unwrap().dist_eq(&d3).unwrap());
        assert!(marginal_i(&joint, 3).is_err());
        assert!(product_n(&[]).is_err());
    }

    #[test]
    fn choose_boundaries() {
        let a = nat_dist(&[(1, 1, 1)]);
        let b = nat_dist(&[(1, 1, 2)]);
        assert!(choose(&Proportion::one(), &a, &b).unwrap().dist_eq(&a).unwrap());
        let half = choose(&prop(1, 2), &a, &b).unwrap();
        assert!(half.dist_eq(&nat_dist(&[(1, 2, 1), (1, 2, 2)])).unwrap());
    }

    #[test]
    fn binary_mixture_tags_sides() {
        let a = dirac(OutcomeSpace::Nat, Outcome::Nat(1)).unwrap();
        let b = dirac(OutcomeSpace::Int, Outcome::Int(-1)).unwrap();
        let m = binary_mixture(&a, &prop(1, 3), &b).unwrap();
        assert_eq!(m.mass_at(&Outcome::tag_left(Outcome::Nat(1))).unwrap(), q(1, 3));
        assert_eq!(m.mass_at(&Outcome::tag_right(Outcome::Int(-1))).unwrap(), q(2, 3));
    }

    #[test]
    fn uniform_mixtures() {
        let single = uniform_mixture(OutcomeSpace::Nat, &[Outcome::Nat(4)]).unwrap();
        assert!(single.dist_eq(&dirac(OutcomeSpace::Nat, Outcome::Nat(4)).unwrap()).unwrap());

        let d = uniform_mixture(
            OutcomeSpace::Nat,
            &[Outcome::Nat(0), Outcome::Nat(1), Outcome::Nat(0)],
        )
        .unwrap();
        assert_eq!(d.mass_at(&Outcome::Nat(0)).unwrap(), q(2, 3));

        assert!(uniform_mixture(OutcomeSpace::Nat, &[]).is_err());

        let rows = vec![
            vec![Outcome::Nat(1), Outcome::Int(2)],
            vec![Outcome::Nat(3), Outcome::Int(4)],
        ];
        let tuples = uniform_tuple_mixture(vec![OutcomeSpace::Nat, OutcomeSpace::Int], &rows).unwrap();
        assert_eq!(
            tuples.mass_at(&Outcome::Tuple(vec![Outcome::Nat(1), Outcome::Int(2)])).unwrap(),
            q(1, 2)
        );
    }

    #[test]
    fn uniform_component_mixture_weights_evenly() {
        let parts: Vec<Dist> = (0..3)
            .map(|i| dirac(OutcomeSpace::Nat, Outcome::Nat(i)).unwrap())
            .collect();
        let mixed = uniform_component_mixture(&parts).unwrap();
        for i in 0..3 {
            assert_eq!(mixed.mass_at(&Outcome::Nat(i)).unwrap(), q(1, 3));
        }
    }

    #[test]
    fn centered_identity_example() {
        // mean of uniform {0..5} over the integers is 5/2; centering shifts 0 to -5/2
        let d = Dist::from_weighted(
            OutcomeSpace::Int,
            (0..6).map(|z| (q(1, 6), Outcome::Int(z))).collect(),
        )
        .unwrap();
        let x = RandomVariable::rational_value(&OutcomeSpace::Int).unwrap();
        let centered = crate::dist::center(&d, &x).unwrap();
        assert_eq!(centered.at(&Outcome::Int(0)), MValue::Scalar(q(-5, 2)));
        assert_eq!(centered.shape(), AlgebraShape::Scalar);
    }
}
