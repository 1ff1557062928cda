//! Hand-rolled lexer and recursive-descent parser for the query language.
//!
//! ```text
//! query    := expr ('|' action)?
//! expr     := base ('$>' NAME | '>>=' NAME)*
//! base     := NAME '(' args? ')' | 'mix' '[' exprlist ';' ratlist ']'
//! args     := arg (',' arg)*        arg := RAT | expr | '[' ratlist ']'
//! action   := 'pmf' '(' point ')' | 'prob' '(' pred ')'
//!           | 'mean' ('(' NAME ')')? | 'var' ('(' NAME ')')?
//!           | 'cov' '(' NAME ',' NAME ')'
//!           | 'cond' '(' pred (',' NAME)? ')' 'at' point | 'support'
//! pred     := ('fst' | 'snd')? ('eq' point | 'le' RAT | 'ge' RAT)
//! point    := RAT | 'success' | 'failure' | '(' point (',' point)* ')'
//! RAT      := '-'? digits ('/' digits)?
//! ```
//!
//! Whitespace is insignificant; errors carry line, column, and the
//! expected tokens.

use std::fmt;

use finprob::Rational;

use crate::ast::{Action, Arg, Component, Expr, Point, Pred, PredKind, Query};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "parse error at {}:{}: expected {}, found {}",
            self.line, self.col, self.expected, self.found
        )
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, PartialEq, Eq, Debug)]
enum Tok {
    Name(String),
    Digits(String),
    Minus,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Pipe,
    MapArrow,  // $>
    BindArrow, // >>=
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => format!("`{n}`"),
            Tok::Digits(d) => format!("`{d}`"),
            Tok::Minus => "`-`".into(),
            Tok::Slash => "`/`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::MapArrow => "`$>`".into(),
            Tok::BindArrow => "`>>=`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    col: usize,
}

struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Lexer<'a> {
        Lexer { chars: input.chars().peekable(), line: 1, col: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn lex(mut self) -> Result<Vec<Spanned>, ParseError> {
        let mut out = Vec::new();
        loop {
            while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
                self.bump();
            }
            let (line, col) = (self.line, self.col);
            let Some(&c) = self.chars.peek() else {
                out.push(Spanned { tok: Tok::Eof, line, col });
                return Ok(out);
            };
            let tok = match c {
                '(' => {
                    self.bump();
                    Tok::LParen
                }
                ')' => {
                    self.bump();
                    Tok::RParen
                }
                '[' => {
                    self.bump();
                    Tok::LBracket
                }
                ']' => {
                    self.bump();
                    Tok::RBracket
                }
                ',' => {
                    self.bump();
                    Tok::Comma
                }
                ';' => {
                    self.bump();
                    Tok::Semi
                }
                '|' => {
                    self.bump();
                    Tok::Pipe
                }
                '-' => {
                    self.bump();
                    Tok::Minus
                }
                '/' => {
                    self.bump();
                    Tok::Slash
                }
                '$' => {
                    self.bump();
                    match self.chars.peek() {
                        Some('>') => {
                            self.bump();
                            Tok::MapArrow
                        }
                        other => {
                            return Err(ParseError {
                                line,
                                col,
                                expected: "`$>`".into(),
                                found: other.map_or("end of input".to_string(), |c| format!("`${c}`")),
                            })
                        }
                    }
                }
                '>' => {
                    self.bump();
                    if self.chars.peek() == Some(&'>') {
                        self.bump();
                        if self.chars.peek() == Some(&'=') {
                            self.bump();
                            Tok::BindArrow
                        } else {
                            return Err(ParseError {
                                line,
                                col,
                                expected: "`>>=`".into(),
                                found: "`>>`".into(),
                            });
                        }
                    } else {
                        return Err(ParseError {
                            line,
                            col,
                            expected: "`>>=`".into(),
                            found: "`>`".into(),
                        });
                    }
                }
                c if c.is_ascii_digit() => {
                    let mut digits = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
                        digits.push(self.bump().unwrap());
                    }
                    Tok::Digits(digits)
                }
                c if c.is_ascii_lowercase() || c == '_' => {
                    let mut name = String::new();
                    while matches!(self.chars.peek(), Some(c) if c.is_ascii_alphanumeric() || *c == '_')
                    {
                        name.push(self.bump().unwrap());
                    }
                    Tok::Name(name)
                }
                other => {
                    return Err(ParseError {
                        line,
                        col,
                        expected: "a token".into(),
                        found: format!("`{other}`"),
                    })
                }
            };
            out.push(Spanned { tok, line, col });
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_name(&self) -> Option<&str> {
        match self.peek() {
            Tok::Name(n) => Some(n),
            _ => None,
        }
    }

    fn advance(&mut self) -> Tok {
        let tok = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> ParseError {
        let here = &self.toks[self.pos];
        ParseError {
            line: here.line,
            col: here.col,
            expected: expected.to_string(),
            found: here.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if self.peek() == &tok {
            self.advance();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn expect_name(&mut self, expected: &str) -> Result<String, ParseError> {
        match self.peek() {
            Tok::Name(n) => {
                let n = n.clone();
                self.advance();
                Ok(n)
            }
            _ => Err(self.error(expected)),
        }
    }

    fn expect_keyword(&mut self, word: &str) -> Result<(), ParseError> {
        if self.peek_name() == Some(word) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&format!("`{word}`")))
        }
    }

    fn parse_rational(&mut self) -> Result<Rational, ParseError> {
        let err_pos = self.pos;
        let negative = self.eat(&Tok::Minus);
        let Tok::Digits(num) = self.peek().clone() else {
            return Err(self.error("a number"));
        };
        self.advance();
        let mut text = if negative { format!("-{num}") } else { num };
        if self.eat(&Tok::Slash) {
            let Tok::Digits(den) = self.peek().clone() else {
                return Err(self.error("a denominator"));
            };
            self.advance();
            text.push('/');
            text.push_str(&den);
        }
        text.parse::<Rational>().map_err(|_| {
            let at = &self.toks[err_pos];
            ParseError {
                line: at.line,
                col: at.col,
                expected: "a rational with a nonzero denominator".into(),
                found: format!("`{text}`"),
            }
        })
    }

    fn starts_rational(&self) -> bool {
        matches!(self.peek(), Tok::Minus | Tok::Digits(_))
    }

    fn parse_rat_list(&mut self) -> Result<Vec<Rational>, ParseError> {
        let mut items = vec![self.parse_rational()?];
        while self.eat(&Tok::Comma) {
            items.push(self.parse_rational()?);
        }
        Ok(items)
    }

    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        let mut expr = self.parse_base_expr()?;
        loop {
            if self.eat(&Tok::MapArrow) {
                let name = self.expect_name("a reshaper name after `$>`")?;
                expr = Expr::Pushforward { inner: Box::new(expr), name };
            } else if self.eat(&Tok::BindArrow) {
                let name = self.expect_name("a kernel name after `>>=`")?;
                expr = Expr::Bind { inner: Box::new(expr), name };
            } else {
                return Ok(expr);
            }
        }
    }

    fn parse_base_expr(&mut self) -> Result<Expr, ParseError> {
        if self.peek_name() == Some("mix") {
            self.advance();
            self.expect(Tok::LBracket, "`[` after `mix`")?;
            let mut branches = vec![self.parse_expr()?];
            while self.eat(&Tok::Comma) {
                branches.push(self.parse_expr()?);
            }
            self.expect(Tok::Semi, "`;` between mix branches and weights")?;
            let weights = self.parse_rat_list()?;
            self.expect(Tok::RBracket, "`]` closing the mix")?;
            return Ok(Expr::Mix { branches, weights });
        }
        let name = self.expect_name("a distribution name")?;
        self.expect(Tok::LParen, "`(` after the distribution name")?;
        let mut args = Vec::new();
        if !self.eat(&Tok::RParen) {
            args.push(self.parse_arg()?);
            while self.eat(&Tok::Comma) {
                args.push(self.parse_arg()?);
            }
            self.expect(Tok::RParen, "`)` closing the argument list")?;
        }
        Ok(Expr::Call { name, args })
    }

    fn parse_arg(&mut self) -> Result<Arg, ParseError> {
        if self.starts_rational() {
            return Ok(Arg::Number(self.parse_rational()?));
        }
        if self.eat(&Tok::LBracket) {
            let items = self.parse_rat_list()?;
            self.expect(Tok::RBracket, "`]` closing the list")?;
            return Ok(Arg::List(items));
        }
        if self.peek_name().is_some() {
            return Ok(Arg::Expr(self.parse_expr()?));
        }
        Err(self.error("a number, a list, or an expression"))
    }

    fn parse_point(&mut self) -> Result<Point, ParseError> {
        if self.starts_rational() {
            return Ok(Point::Number(self.parse_rational()?));
        }
        match self.peek_name() {
            Some("success") => {
                self.advance();
                return Ok(Point::Success);
            }
            Some("failure") => {
                self.advance();
                return Ok(Point::Failure);
            }
            _ => {}
        }
        if self.eat(&Tok::LParen) {
            let mut items = vec![self.parse_point()?];
            while self.eat(&Tok::Comma) {
                items.push(self.parse_point()?);
            }
            self.expect(Tok::RParen, "`)` closing the point")?;
            return Ok(Point::Tuple(items));
        }
        Err(self.error("a point: a number, `success`, `failure`, or `(`"))
    }

    fn parse_pred(&mut self) -> Result<Pred, ParseError> {
        let component = match self.peek_name() {
            Some("fst") => {
                self.advance();
                Some(Component::Fst)
            }
            Some("snd") => {
                self.advance();
                Some(Component::Snd)
            }
            _ => None,
        };
        let kind = match self.peek_name() {
            Some("eq") => {
                self.advance();
                PredKind::Eq(self.parse_point()?)
            }
            Some("le") => {
                self.advance();
                PredKind::Le(self.parse_rational()?)
            }
            Some("ge") => {
                self.advance();
                PredKind::Ge(self.parse_rational()?)
            }
            _ => return Err(self.error("`eq`, `le`, or `ge`")),
        };
        Ok(Pred { component, kind })
    }

    fn parse_action(&mut self) -> Result<Action, ParseError> {
        let name = self.expect_name("an action: pmf, prob, mean, var, cov, cond, or support")?;
        match name.as_str() {
            "support" => Ok(Action::Support),
            "pmf" => {
                self.expect(Tok::LParen, "`(` after `pmf`")?;
                let p = self.parse_point()?;
                self.expect(Tok::RParen, "`)` closing `pmf`")?;
                Ok(Action::Pmf(p))
            }
            "prob" => {
                self.expect(Tok::LParen, "`(` after `prob`")?;
                let pred = self.parse_pred()?;
                self.expect(Tok::RParen, "`)` closing `prob`")?;
                Ok(Action::Prob(pred))
            }
            "mean" | "var" => {
                let rv = if self.eat(&Tok::LParen) {
                    let rv = self.expect_name("a random-variable name")?;
                    self.expect(Tok::RParen, "`)` closing the random-variable name")?;
                    Some(rv)
                } else {
                    None
                };
                if name == "mean" {
                    Ok(Action::Mean(rv))
                } else {
                    Ok(Action::Var(rv))
                }
            }
            "cov" => {
                self.expect(Tok::LParen, "`(` after `cov`")?;
                let a = self.expect_name("a random-variable name")?;
                self.expect(Tok::Comma, "`,` between the two random variables")?;
                let b = self.expect_name("a random-variable name")?;
                self.expect(Tok::RParen, "`)` closing `cov`")?;
                Ok(Action::Cov(a, b))
            }
            "cond" => {
                self.expect(Tok::LParen, "`(` after `cond`")?;
                let pred = self.parse_pred()?;
                let rv = if self.eat(&Tok::Comma) {
                    Some(self.expect_name("a random-variable name")?)
                } else {
                    None
                };
                self.expect(Tok::RParen, "`)` closing `cond`")?;
                self.expect_keyword("at")?;
                let at = self.parse_point()?;
                Ok(Action::Cond { pred, rv, at })
            }
            _ => {
                self.pos -= 1;
                Err(self.error("an action: pmf, prob, mean, var, cov, cond, or support"))
            }
        }
    }

    fn parse_query(&mut self) -> Result<Query, ParseError> {
        let expr = self.parse_expr()?;
        let action = if self.eat(&Tok::Pipe) {
            self.parse_action()?
        } else {
            Action::Support
        };
        self.expect(Tok::Eof, "end of input")?;
        Ok(Query { expr, action })
    }
}

pub fn parse(input: &str) -> Result<Query, ParseError> {
    let toks = Lexer::new(input).lex()?;
    Parser { toks, pos: 0 }.parse_query()
}
