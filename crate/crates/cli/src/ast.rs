//! Query syntax trees and their canonical text form. Printing then
//! reparsing returns the identical tree.

use std::fmt;

use finprob::Rational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Query {
    pub expr: Expr,
    pub action: Action,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    Call { name: String, args: Vec<Arg> },
    /// `expr $> name` pushes the distribution through a named reshaper.
    Pushforward { inner: Box<Expr>, name: String },
    /// `expr >>= name` sequences through a named kernel.
    Bind { inner: Box<Expr>, name: String },
    /// `mix [e1, e2; w1, w2]`
    Mix { branches: Vec<Expr>, weights: Vec<Rational> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Arg {
    Number(Rational),
    List(Vec<Rational>),
    Expr(Expr),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Action {
    Support,
    Pmf(Point),
    Prob(Pred),
    Mean(Option<String>),
    Var(Option<String>),
    Cov(String, String),
    Cond { pred: Pred, rv: Option<String>, at: Point },
}

/// Which pair component a predicate inspects, if any.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Component {
    Fst,
    Snd,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pred {
    pub component: Option<Component>,
    pub kind: PredKind,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PredKind {
    Eq(Point),
    Le(Rational),
    Ge(Rational),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Point {
    Number(Rational),
    Success,
    Failure,
    Tuple(Vec<Point>),
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.action {
            Action::Support => write!(f, "{}", self.expr),
            action => write!(f, "{} | {action}", self.expr),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Call { name, args } => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Expr::Pushforward { inner, name } => write!(f, "{inner} $> {name}"),
            Expr::Bind { inner, name } => write!(f, "{inner} >>= {name}"),
            Expr::Mix { branches, weights } => {
                write!(f, "mix [")?;
                for (i, b) in branches.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{b}")?;
                }
                write!(f, "; ")?;
                for (i, w) in weights.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{w}")?;
                }
                write!(f, "]")
            }
        }
    }
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Number(r) => write!(f, "{r}"),
            Arg::List(items) => {
                write!(f, "[")?;
                for (i, r) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, "]")
            }
            Arg::Expr(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Action::Support => write!(f, "support"),
            Action::Pmf(p) => write!(f, "pmf({p})"),
            Action::Prob(pred) => write!(f, "prob({pred})"),
            Action::Mean(None) => write!(f, "mean"),
            Action::Mean(Some(rv)) => write!(f, "mean({rv})"),
            Action::Var(None) => write!(f, "var"),
            Action::Var(Some(rv)) => write!(f, "var({rv})"),
            Action::Cov(a, b) => write!(f, "cov({a}, {b})"),
            Action::Cond { pred, rv: None, at } => write!(f, "cond({pred}) at {at}"),
            Action::Cond { pred, rv: Some(rv), at } => write!(f, "cond({pred}, {rv}) at {at}"),
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.component {
            Some(Component::Fst) => write!(f, "fst ")?,
            Some(Component::Snd) => write!(f, "snd ")?,
            None => {}
        }
        match &self.kind {
            PredKind::Eq(p) => write!(f, "eq {p}"),
            PredKind::Le(r) => write!(f, "le {r}"),
            PredKind::Ge(r) => write!(f, "ge {r}"),
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Number(r) => write!(f, "{r}"),
            Point::Success => write!(f, "success"),
            Point::Failure => write!(f, "failure"),
            Point::Tuple(items) => {
                write!(f, "(")?;
                for (i, p) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}
