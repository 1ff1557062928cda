//! Lowers parsed queries onto the distribution library and renders exact
//! results.

use std::fmt;

use finprob::algebra::MValue;
use finprob::catalog;
use finprob::combinators::{self, OutcomeMap};
use finprob::conditioning::cond_on_indicator;
use finprob::dist::{cov, var};
use finprob::indicator::{pr, Indicator};
use finprob::kernel::{kernel_diag, Kernel};
use finprob::{Dist, Outcome, OutcomeSpace, Proportion, RandomVariable, Rational, Simplex};

use crate::ast::{Action, Arg, Component, Expr, Point, Pred, PredKind, Query};

/// Evaluation failures: unknown names keep their own shape so callers can
/// tell a vocabulary problem from a value problem.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    Name(String),
    Value(String),
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::Name(name) => write!(f, "unknown name `{name}`"),
            EvalError::Value(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for EvalError {}

impl From<finprob::Error> for EvalError {
    fn from(e: finprob::Error) -> EvalError {
        EvalError::Value(e.to_string())
    }
}

type Result<T> = std::result::Result<T, EvalError>;

/// Fuel defaults for the approximated distributions, overridable with
/// `--fuel`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub fuel: Option<u64>,
}

const DEFAULT_NEGATIVE_BINOMIAL_FUEL: u64 = 100;
const DEFAULT_GEOMETRIC_FUEL: u64 = 10;

/// The result of a query: an exact scalar, an exact vector, or a whole
/// distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(Rational),
    Vector(Vec<Rational>),
    Distribution(Dist),
}

impl Value {
    /// Plain-text rendering: lowest-terms rationals, one support line per
    /// outcome for distributions.
    pub fn render_text(&self) -> String {
        match self {
            Value::Scalar(q) => q.to_string(),
            Value::Vector(v) => {
                let parts: Vec<String> = v.iter().map(|q| q.to_string()).collect();
                format!("[{}]", parts.join(", "))
            }
            Value::Distribution(d) => {
                let mut lines = Vec::new();
                for entry in d.support() {
                    lines.push(format!("{} {}", entry.weight, render_outcome(d.space(), &entry.point)));
                }
                lines.join("\n")
            }
        }
    }

    pub fn render_json(&self) -> serde_json::Value {
        match self {
            Value::Scalar(q) => serde_json::json!({ "value": q.to_string() }),
            Value::Vector(v) => {
                let items: Vec<serde_json::Value> =
                    v.iter().map(|q| serde_json::Value::String(q.to_string())).collect();
                serde_json::json!({ "value": items })
            }
            Value::Distribution(d) => d.to_json(),
        }
    }
}

/// Boolean outcomes read as success/failure; everything else uses the
/// library's own rendering.
fn render_outcome(space: &OutcomeSpace, outcome: &Outcome) -> String {
    if space.is_bool2() {
        if outcome.is_success() {
            return "success".into();
        }
        return "failure".into();
    }
    if let (OutcomeSpace::Tuple(spaces), Outcome::Tuple(items)) = (space, outcome) {
        let parts: Vec<String> = spaces
            .iter()
            .zip(items)
            .map(|(s, x)| render_outcome(s, x))
            .collect();
        return format!("({})", parts.join(", "));
    }
    if let (OutcomeSpace::Pair(s1, s2), Outcome::Pair(a, b)) = (space, outcome) {
        return format!("({}, {})", render_outcome(s1, a), render_outcome(s2, b));
    }
    outcome.to_string()
}

pub fn evaluate(query: &Query, options: &Options) -> Result<Value> {
    let d = eval_expr(&query.expr, options)?;
    match &query.action {
        Action::Support => Ok(Value::Distribution(d)),
        Action::Pmf(point) => {
            let point = lower_point(point, d.space())?;
            let event = Indicator::delta(d.space().clone(), point)?;
            Ok(Value::Scalar(pr(&d, &event)?.value().clone()))
        }
        Action::Prob(pred) => {
            let event = lower_pred(pred, d.space())?;
            Ok(Value::Scalar(pr(&d, &event)?.value().clone()))
        }
        Action::Mean(rv) => {
            let rv = lower_rv(rv.as_deref(), d.space())?;
            Ok(mvalue_to_value(d.expect(&rv)?))
        }
        Action::Var(rv) => {
            let rv = lower_rv(rv.as_deref(), d.space())?;
            Ok(mvalue_to_value(var(&d, &rv)?))
        }
        Action::Cov(a, b) => {
            let x = lower_rv(Some(a), d.space())?;
            let y = lower_rv(Some(b), d.space())?;
            Ok(mvalue_to_value(cov(&d, &x, &y)?))
        }
        Action::Cond { pred, rv, at } => {
            let event = lower_pred(pred, d.space())?;
            let y = lower_rv(rv.as_deref(), d.space())?;
            let c = cond_on_indicator(&d, &y, &event)?;
            let at = lower_point(at, d.space())?;
            Ok(Value::Scalar(c.predict_at(&at)))
        }
    }
}

fn mvalue_to_value(m: MValue) -> Value {
    match m {
        MValue::Scalar(q) => Value::Scalar(q),
        MValue::Vector(v) => Value::Vector(v),
    }
}

fn eval_expr(expr: &Expr, options: &Options) -> Result<Dist> {
    match expr {
        Expr::Call { name, args } => eval_call(name, args, options),
        Expr::Pushforward { inner, name } => {
            let d = eval_expr(inner, options)?;
            let map = named_reshaper(name, d.space())?;
            Ok(combinators::pushforward(&map, &d)?)
        }
        Expr::Bind { inner, name } => {
            let d = eval_expr(inner, options)?;
            let kernel = named_kernel(name, d.space())?;
            Ok(combinators::bind(&d, &kernel)?)
        }
        Expr::Mix { branches, weights } => {
            let dists: Vec<Dist> = branches
                .iter()
                .map(|b| eval_expr(b, options))
                .collect::<Result<_>>()?;
            let simplex = Simplex::new(weights.clone())?;
            Ok(combinators::mix(&dists, &simplex)?)
        }
    }
}

struct Args<'a> {
    name: &'a str,
    args: &'a [Arg],
    used: usize,
}

impl<'a> Args<'a> {
    fn new(name: &'a str, args: &'a [Arg]) -> Args<'a> {
        Args { name, args, used: 0 }
    }

    fn remaining(&self) -> usize {
        self.args.len() - self.used
    }

    fn next(&mut self, what: &str) -> Result<&'a Arg> {
        let arg = self.args.get(self.used).ok_or_else(|| {
            EvalError::Value(format!("`{}` is missing its {what} argument", self.name))
        })?;
        self.used += 1;
        Ok(arg)
    }

    fn rational(&mut self, what: &str) -> Result<Rational> {
        match self.next(what)? {
            Arg::Number(q) => Ok(q.clone()),
            other => Err(EvalError::Value(format!(
                "`{}` expects a rational for its {what} argument, got {other}",
                self.name
            ))),
        }
    }

    fn natural(&mut self, what: &str) -> Result<u64> {
        let q = self.rational(what)?;
        q.to_natural().ok_or_else(|| {
            EvalError::Value(format!("`{}` expects a natural number for {what}, got {q}", self.name))
        })
    }

    fn integer(&mut self, what: &str) -> Result<i64> {
        let q = self.rational(what)?;
        q.to_integer().ok_or_else(|| {
            EvalError::Value(format!("`{}` expects an integer for {what}, got {q}", self.name))
        })
    }

    fn proportion(&mut self, what: &str) -> Result<Proportion> {
        Ok(Proportion::new(self.rational(what)?)?)
    }

    fn list(&mut self, what: &str) -> Result<Vec<Rational>> {
        match self.next(what)? {
            Arg::List(items) => Ok(items.clone()),
            other => Err(EvalError::Value(format!(
                "`{}` expects a [list] for its {what} argument, got {other}",
                self.name
            ))),
        }
    }

    fn finish(self) -> Result<()> {
        if self.used == self.args.len() {
            Ok(())
        } else {
            Err(EvalError::Value(format!(
                "`{}` takes {} argument(s), got {}",
                self.name,
                self.used,
                self.args.len()
            )))
        }
    }
}

fn eval_call(name: &str, args: &[Arg], options: &Options) -> Result<Dist> {
    let mut a = Args::new(name, args);
    let dist = match name {
        "kparts" => catalog::kparts(&Simplex::new(a.list("weights")?)?)?,
        "discrete_uniform" => catalog::discrete_uniform(a.natural("size")?)?,
        "discrete_uniform_z" => {
            let start = a.integer("start")?;
            let n = a.natural("size")?;
            catalog::discrete_uniform_z(start, n)?
        }
        "bernoulli" => catalog::bernoulli(&a.proportion("success probability")?),
        "binary_urn" => catalog::binary_urn(a.natural("successes")?, a.natural("failures")?)?,
        "bernoulli_trials" => {
            let n = a.natural("trial count")?;
            catalog::bernoulli_trials(n, &a.proportion("success probability")?)?
        }
        "kparts_trials" => {
            let n = a.natural("trial count")?;
            catalog::kparts_trials(n, &Simplex::new(a.list("weights")?)?)?
        }
        "urn_trials" => {
            let s = a.natural("successes")?;
            let f = a.natural("failures")?;
            catalog::urn_trials(s, f, a.natural("draw count")?)?
        }
        "hypergeometric" => {
            let population = a.natural("population")?;
            let marked = a.natural("marked count")?;
            catalog::hypergeometric(population, marked, a.natural("draw count")?)?
        }
        "multinomial" => {
            let n = a.natural("trial count")?;
            catalog::multinomial(n, &Simplex::new(a.list("weights")?)?)?
        }
        "binomial" => {
            let n = a.natural("trial count")?;
            catalog::binomial(n, &a.proportion("success probability")?)?
        }
        "negative_binomial" => {
            // with two arguments the fuel comes from --fuel (default 100)
            if a.remaining() == 3 {
                let fuel = a.natural("fuel")?;
                let r = a.natural("required successes")?;
                catalog::negative_binomial_approx(fuel, r, &a.proportion("success probability")?)?
            } else {
                let fuel = options.fuel.unwrap_or(DEFAULT_NEGATIVE_BINOMIAL_FUEL);
                let r = a.natural("required successes")?;
                catalog::negative_binomial_approx(fuel, r, &a.proportion("success probability")?)?
            }
        }
        "geometric" => {
            let fuel = options.fuel.unwrap_or(DEFAULT_GEOMETRIC_FUEL);
            catalog::geometric_with_fuel(fuel, &a.proportion("success probability")?)?
        }
        "empirical" => {
            let points: Vec<Outcome> = a.list("observations")?.into_iter().map(Outcome::Rat).collect();
            catalog::empirical(OutcomeSpace::Rat, &points)?
        }
        "empirical2" => {
            let flat = a.list("observations")?;
            if flat.len() % 2 != 0 || flat.is_empty() {
                return Err(EvalError::Value(
                    "`empirical2` expects a nonempty list of x,y pairs".into(),
                ));
            }
            let points: Vec<Outcome> = flat
                .chunks(2)
                .map(|xy| Outcome::Tuple(vec![Outcome::Rat(xy[0].clone()), Outcome::Rat(xy[1].clone())]))
                .collect();
            let space = OutcomeSpace::power(OutcomeSpace::Rat, 2).map_err(EvalError::from)?;
            catalog::empirical(space, &points)?
        }
        "uniform_props" => {
            let points: Vec<Outcome> = a
                .list("proportions")?
                .into_iter()
                .map(|q| Proportion::new(q).map(Outcome::Prop))
                .collect::<std::result::Result<_, _>>()?;
            combinators::uniform_mixture(OutcomeSpace::Prop, &points)?
        }
        _ => return Err(EvalError::Name(name.to_string())),
    };
    a.finish()?;
    Ok(dist)
}

fn named_kernel(name: &str, source: &OutcomeSpace) -> Result<Kernel> {
    match name {
        "bernoulli" => Ok(catalog::bernoulli_kernel()),
        "bernoulli_joint" => Ok(kernel_diag(
            &Kernel::identity(OutcomeSpace::Prop),
            &catalog::bernoulli_kernel(),
        )
        .map_err(EvalError::from)?),
        "dirac" => Ok(Kernel::identity(source.clone())),
        _ => Err(EvalError::Name(name.to_string())),
    }
}

fn named_reshaper(name: &str, source: &OutcomeSpace) -> Result<OutcomeMap> {
    match name {
        "count_successes" => match source {
            OutcomeSpace::Tuple(items) if items.iter().all(|s| s.is_bool2()) => {
                Ok(catalog::count_successes_map(items.len() as u64))
            }
            other => Err(EvalError::Value(format!(
                "`count_successes` needs a tuple of booleans, got {other}"
            ))),
        },
        "succ" => {
            if source != &OutcomeSpace::Nat {
                return Err(EvalError::Value(format!("`succ` needs naturals, got {source}")));
            }
            Ok(OutcomeMap::new(OutcomeSpace::Nat, OutcomeSpace::Nat, |w| match w {
                Outcome::Nat(n) => Some(Outcome::Nat(n + 1)),
                _ => None,
            }))
        }
        "proj1" => Ok(combinators::proj1_map(source)?),
        "proj2" => Ok(combinators::proj2_map(source)?),
        "untag" => match source {
            OutcomeSpace::Pair(tag, inner) => match **tag {
                OutcomeSpace::Fin(k) => Ok(combinators::mix_untag(k, (**inner).clone())),
                _ => Err(EvalError::Value(format!("`untag` needs a mixture space, got {source}"))),
            },
            other => Err(EvalError::Value(format!("`untag` needs a mixture space, got {other}"))),
        },
        _ => Err(EvalError::Name(name.to_string())),
    }
}

fn lower_rv(name: Option<&str>, space: &OutcomeSpace) -> Result<RandomVariable> {
    match name.unwrap_or("value") {
        "value" => Ok(RandomVariable::rational_value(space)?),
        "fst" => Ok(RandomVariable::pair_fst_value(space)?),
        "snd" => Ok(RandomVariable::pair_snd_value(space)?),
        "x" => Ok(RandomVariable::tuple_component_value(space, 0)?),
        "y" => Ok(RandomVariable::tuple_component_value(space, 1)?),
        "vec" => Ok(RandomVariable::tuple_vector(space)?),
        "swap" => {
            let vec = RandomVariable::tuple_vector(space)?;
            let shape = vec.shape();
            Ok(vec.map_values(shape, |v| match v {
                MValue::Vector(mut xs) => {
                    xs.reverse();
                    MValue::Vector(xs)
                }
                s => s,
            }))
        }
        other => Err(EvalError::Name(other.to_string())),
    }
}

fn lower_point(point: &Point, space: &OutcomeSpace) -> Result<Outcome> {
    let mismatch = || EvalError::Value(format!("point {point} does not fit space {space}"));
    match (point, space) {
        (Point::Number(r), OutcomeSpace::Fin(k)) => {
            let i = r.to_natural().ok_or_else(mismatch)?;
            Outcome::fin(*k, i).map_err(|_| mismatch())
        }
        (Point::Number(r), OutcomeSpace::Nat) => Ok(Outcome::Nat(r.to_natural().ok_or_else(mismatch)?)),
        (Point::Number(r), OutcomeSpace::Int) => Ok(Outcome::Int(r.to_integer().ok_or_else(mismatch)?)),
        (Point::Number(r), OutcomeSpace::Rat) => Ok(Outcome::Rat(r.clone())),
        (Point::Number(r), OutcomeSpace::Prop) => {
            Ok(Outcome::Prop(Proportion::new(r.clone()).map_err(|_| mismatch())?))
        }
        (Point::Success, s) if s.is_bool2() => Ok(Outcome::success()),
        (Point::Failure, s) if s.is_bool2() => Ok(Outcome::failure()),
        (Point::Tuple(items), OutcomeSpace::Tuple(spaces)) if items.len() == spaces.len() => {
            let lowered: Vec<Outcome> = items
                .iter()
                .zip(spaces)
                .map(|(p, s)| lower_point(p, s))
                .collect::<Result<_>>()?;
            Ok(Outcome::Tuple(lowered))
        }
        (Point::Tuple(items), OutcomeSpace::Pair(s1, s2)) if items.len() == 2 => Ok(Outcome::pair(
            lower_point(&items[0], s1)?,
            lower_point(&items[1], s2)?,
        )),
        _ => Err(mismatch()),
    }
}

fn lower_pred(pred: &Pred, space: &OutcomeSpace) -> Result<Indicator> {
    match pred.component {
        None => lower_pred_kind(&pred.kind, space),
        Some(side) => {
            let (component_space, index) = match (space, side) {
                (OutcomeSpace::Pair(a, _), Component::Fst) => ((**a).clone(), 0usize),
                (OutcomeSpace::Pair(_, b), Component::Snd) => ((**b).clone(), 1usize),
                (other, _) => {
                    return Err(EvalError::Value(format!(
                        "component predicates need a pair space, got {other}"
                    )))
                }
            };
            let inner = lower_pred_kind(&pred.kind, &component_space)?;
            Ok(Indicator::from_predicate(space.clone(), move |w| match w {
                Outcome::Pair(a, b) => {
                    let target = if index == 0 { a } else { b };
                    inner.holds_at(target)
                }
                _ => false,
            }))
        }
    }
}

fn lower_pred_kind(kind: &PredKind, space: &OutcomeSpace) -> Result<Indicator> {
    match kind {
        PredKind::Eq(point) => {
            let point = lower_point(point, space)?;
            Ok(Indicator::delta(space.clone(), point)?)
        }
        PredKind::Le(r) => Ok(Indicator::le_value(space, r.clone())?),
        PredKind::Ge(r) => Ok(Indicator::ge_value(space, r.clone())?),
    }
}
