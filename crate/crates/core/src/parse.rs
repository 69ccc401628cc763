//! Text syntax for cycle expressions and equations.
//!
//! ```text
//! equation := expr '=' expr
//! expr     := term ('+' term)*
//! term     := factor ('*' factor)*
//! factor   := atom ('^' NAT)?
//! atom     := 'C' '(' NAT ',' NAT ')' | VAR | '(' expr ')' | '0'
//! ```
//!
//! `C(count,length)` is `count` disjoint cycles of length `length`, so the
//! multiplicity comes first. `^` binds tighter than `*`, which binds tighter
//! than `+`. Whitespace is ignored.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{BasicEquation, CycleSet};
use crate::decide::Monomial;
use crate::error::{Error, Result};

/// Largest exponent applied to an expression that contains the unknown.
const MAX_SYMBOLIC_EXPONENT: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExpressionAst {
    Const(CycleSet),
    Var(String),
    Add(Vec<ExpressionAst>),
    Mul(Vec<ExpressionAst>),
    Pow(Box<ExpressionAst>, u64),
}

/// How an equation maps onto the available deciders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// `C(1,p) * X = C(n,q)`
    Basic {
        p: u64,
        q: u64,
        n: u64,
    },
    /// `C(m,p) * X = C(n,q)` with `m > 1`
    Scaled {
        m: u64,
        p: u64,
        q: u64,
        n: u64,
    },
    /// `C(m,p) * X = sum C(n_i,q_i)`; targets are `(n_i, q_i)`.
    MultiTarget {
        m: u64,
        p: u64,
        targets: Vec<(u64, u64)>,
    },
    /// `sum C(m_i,p_i) * X = C(n,q)`
    SumLhs {
        monomials: Vec<Monomial>,
        q: u64,
        n: u64,
    },
    Unsupported {
        reason: String,
    },
}

impl Classification {
    pub fn name(&self) -> &'static str {
        match self {
            Classification::Basic { .. } => "basic",
            Classification::Scaled { .. } => "scaled",
            Classification::MultiTarget { .. } => "multi_target",
            Classification::SumLhs { .. } => "sum_lhs",
            Classification::Unsupported { .. } => "unsupported",
        }
    }

    pub fn as_basic(&self) -> Option<BasicEquation> {
        match *self {
            Classification::Basic { p, q, n } => Some(BasicEquation { p, q, n }),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationAst {
    pub lhs: ExpressionAst,
    pub rhs: ExpressionAst,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Expression(ExpressionAst),
    Equation(EquationAst),
}

/// Parses either an expression or, when the input contains `=`, an equation.
pub fn parse(input: &str) -> std::result::Result<Parsed, ParseError> {
    let mut parser = Parser::new(input)?;
    let lhs = parser.expr()?;
    if parser.eat(&Tok::Eq) {
        let rhs = parser.expr()?;
        parser.expect_end()?;
        let classification = classify(&lhs, &rhs);
        Ok(Parsed::Equation(EquationAst {
            lhs,
            rhs,
            classification,
        }))
    } else {
        parser.expect_end()?;
        Ok(Parsed::Expression(lhs))
    }
}

pub fn parse_expression(input: &str) -> std::result::Result<ExpressionAst, ParseError> {
    let mut parser = Parser::new(input)?;
    let e = parser.expr()?;
    parser.expect_end()?;
    Ok(e)
}

pub fn parse_equation(input: &str) -> std::result::Result<EquationAst, ParseError> {
    let mut parser = Parser::new(input)?;
    let lhs = parser.expr()?;
    if !parser.eat(&Tok::Eq) {
        return Err(parser.error_here("expected `=`"));
    }
    let rhs = parser.expr()?;
    parser.expect_end()?;
    let classification = classify(&lhs, &rhs);
    Ok(EquationAst {
        lhs,
        rhs,
        classification,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Plus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Eq,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Nat(n) => write!(f, "`{n}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(input: &str) -> std::result::Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    let (mut line, mut column) = (1, 1);
    while let Some(&c) = chars.peek() {
        let (start_line, start_col) = (line, column);
        let err = |message: String| ParseError {
            line: start_line,
            column: start_col,
            message,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            let mut value: u64 = 0;
            while let Some(&d) = chars.peek() {
                let Some(digit) = d.to_digit(10) else { break };
                value = value
                    .checked_mul(10)
                    .and_then(|v| v.checked_add(digit as u64))
                    .ok_or_else(|| err("integer literal does not fit in 64 bits".into()))?;
                chars.next();
                column += 1;
            }
            Tok::Nat(value)
        } else if c.is_ascii_alphabetic() {
            let mut name = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    name.push(d);
                    chars.next();
                    column += 1;
                } else {
                    break;
                }
            }
            Tok::Ident(name)
        } else {
            let tok = match c {
                '+' => Tok::Plus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                other => return Err(err(format!("unexpected character `{other}`"))),
            };
            chars.next();
            column += 1;
            tok
        };
        out.push(Spanned {
            tok,
            line: start_line,
            column: start_col,
        });
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> std::result::Result<Self, ParseError> {
        Ok(Self {
            tokens: tokenize(input)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let tok = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let at = &self.tokens[self.pos];
        ParseError {
            line: at.line,
            column: at.column,
            message: message.into(),
        }
    }

    fn expect(&mut self, tok: Tok) -> std::result::Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error_here(format!("expected {tok}, found {}", self.peek())))
        }
    }

    fn expect_end(&self) -> std::result::Result<(), ParseError> {
        match self.peek() {
            Tok::End => Ok(()),
            other => Err(self.error_here(format!("unexpected {other}"))),
        }
    }

    fn nat(&mut self, what: &str) -> std::result::Result<u64, ParseError> {
        match self.peek() {
            Tok::Nat(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            other => Err(self.error_here(format!("expected {what}, found {other}"))),
        }
    }

    fn expr(&mut self) -> std::result::Result<ExpressionAst, ParseError> {
        let mut terms = vec![self.term()?];
        while self.eat(&Tok::Plus) {
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            ExpressionAst::Add(terms)
        })
    }

    fn term(&mut self) -> std::result::Result<ExpressionAst, ParseError> {
        let mut factors = vec![self.factor()?];
        while self.eat(&Tok::Star) {
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            ExpressionAst::Mul(factors)
        })
    }

    fn factor(&mut self) -> std::result::Result<ExpressionAst, ParseError> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let w = self.nat("an exponent")?;
            Ok(ExpressionAst::Pow(Box::new(base), w))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> std::result::Result<ExpressionAst, ParseError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Nat(0) => {
                self.bump();
                Ok(ExpressionAst::Const(CycleSet::zero()))
            }
            Tok::Nat(n) => Err(self.error_here(format!(
                "integer literal {n} is not an expression; write C({n},1) for {n} self-loops"
            ))),
            Tok::Ident(name) if name == "C" && self.tokens[self.pos + 1].tok == Tok::LParen => {
                self.bump();
                self.bump();
                let count = self.nat("a cycle count")?;
                self.expect(Tok::Comma)?;
                let at = self.error_here("");
                let length = self.nat("a cycle length")?;
                self.expect(Tok::RParen)?;
                if count == 0 {
                    Ok(ExpressionAst::Const(CycleSet::zero()))
                } else if length == 0 {
                    Err(ParseError {
                        message: "cycle length must be positive".into(),
                        ..at
                    })
                } else {
                    Ok(ExpressionAst::Const(CycleSet::cycles(count, length)))
                }
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(ExpressionAst::Var(name))
            }
            other => Err(self.error_here(format!("expected an expression, found {other}"))),
        }
    }
}

impl ExpressionAst {
    /// Flattens nested sums and products, unwraps single-child nodes and
    /// splits multi-length constants into sums of single-length constants.
    pub fn normalize(&self) -> ExpressionAst {
        match self {
            ExpressionAst::Const(c) if c.len() > 1 => ExpressionAst::Add(
                c.entries()
                    .iter()
                    .map(|&(l, n)| ExpressionAst::Const(CycleSet::cycles(n, l)))
                    .collect(),
            ),
            ExpressionAst::Const(_) | ExpressionAst::Var(_) => self.clone(),
            ExpressionAst::Add(children) => collapse(flatten(children, true), true),
            ExpressionAst::Mul(children) => collapse(flatten(children, false), false),
            ExpressionAst::Pow(base, w) => ExpressionAst::Pow(Box::new(base.normalize()), *w),
        }
    }

    fn variables(&self, out: &mut BTreeSet<String>) {
        match self {
            ExpressionAst::Const(_) => {}
            ExpressionAst::Var(v) => {
                out.insert(v.clone());
            }
            ExpressionAst::Add(cs) | ExpressionAst::Mul(cs) => {
                cs.iter().for_each(|c| c.variables(out))
            }
            ExpressionAst::Pow(b, _) => b.variables(out),
        }
    }

    pub fn is_ground(&self) -> bool {
        let mut vars = BTreeSet::new();
        self.variables(&mut vars);
        vars.is_empty()
    }

    /// Bottom-up evaluation of a ground expression.
    pub fn evaluate(&self) -> Result<CycleSet> {
        match self {
            ExpressionAst::Const(c) => Ok(c.clone()),
            ExpressionAst::Var(v) => Err(Error::UnboundVariable(v.clone())),
            ExpressionAst::Add(cs) => cs
                .iter()
                .try_fold(CycleSet::zero(), |acc, c| acc.add(&c.evaluate()?)),
            ExpressionAst::Mul(cs) => cs
                .iter()
                .try_fold(CycleSet::one(), |acc, c| acc.mul(&c.evaluate()?)),
            ExpressionAst::Pow(b, w) => b.evaluate()?.pow(*w),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            ExpressionAst::Add(_) => 0,
            ExpressionAst::Const(c) if c.len() > 1 => 0,
            ExpressionAst::Mul(_) => 1,
            ExpressionAst::Pow(..) => 2,
            ExpressionAst::Const(_) | ExpressionAst::Var(_) => 3,
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, min_precedence: u8) -> fmt::Result {
        if self.precedence() < min_precedence {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

fn flatten(children: &[ExpressionAst], sum: bool) -> Vec<ExpressionAst> {
    let mut out = Vec::new();
    for child in children {
        match (child.normalize(), sum) {
            (ExpressionAst::Add(inner), true) | (ExpressionAst::Mul(inner), false) => {
                out.extend(inner)
            }
            (other, _) => out.push(other),
        }
    }
    out
}

fn collapse(mut children: Vec<ExpressionAst>, sum: bool) -> ExpressionAst {
    match children.len() {
        0 if sum => ExpressionAst::Const(CycleSet::zero()),
        0 => ExpressionAst::Const(CycleSet::one()),
        1 => children.pop().unwrap(),
        _ if sum => ExpressionAst::Add(children),
        _ => ExpressionAst::Mul(children),
    }
}

impl fmt::Display for ExpressionAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpressionAst::Const(c) => write!(f, "{c}"),
            ExpressionAst::Var(v) => f.write_str(v),
            ExpressionAst::Add(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    c.fmt_child(f, 0)?;
                }
                Ok(())
            }
            ExpressionAst::Mul(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        f.write_str("*")?;
                    }
                    c.fmt_child(f, 1)?;
                }
                Ok(())
            }
            ExpressionAst::Pow(b, w) => {
                b.fmt_child(f, 3)?;
                write!(f, "^{w}")
            }
        }
    }
}

impl fmt::Display for EquationAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

/// Canonical text of an expression; `parse_expression` reads it back to
/// `e.normalize()`.
pub fn print_canonical(e: &ExpressionAst) -> String {
    e.to_string()
}

/// Polynomial in the single unknown: exponent -> coefficient.
type Poly = BTreeMap<u64, CycleSet>;

fn poly_add(mut a: Poly, b: Poly) -> Result<Poly> {
    for (k, c) in b {
        let merged = match a.remove(&k) {
            Some(existing) => existing.add(&c)?,
            None => c,
        };
        a.insert(k, merged);
    }
    Ok(a)
}

fn poly_mul(a: &Poly, b: &Poly) -> Result<Poly> {
    let mut out = Poly::new();
    for (ka, ca) in a {
        for (kb, cb) in b {
            let k = ka.checked_add(*kb).ok_or(Error::Overflow("exponent"))?;
            let term = ca.mul(cb)?;
            if !term.is_zero() {
                out = poly_add(out, Poly::from([(k, term)]))?;
            }
        }
    }
    Ok(out)
}

fn expand(e: &ExpressionAst) -> Result<Poly> {
    match e {
        ExpressionAst::Const(c) if c.is_zero() => Ok(Poly::new()),
        ExpressionAst::Const(c) => Ok(Poly::from([(0, c.clone())])),
        ExpressionAst::Var(_) => Ok(Poly::from([(1, CycleSet::one())])),
        ExpressionAst::Add(cs) => cs
            .iter()
            .try_fold(Poly::new(), |acc, c| poly_add(acc, expand(c)?)),
        ExpressionAst::Mul(cs) => cs
            .iter()
            .try_fold(Poly::from([(0, CycleSet::one())]), |acc, c| {
                poly_mul(&acc, &expand(c)?)
            }),
        ExpressionAst::Pow(b, w) => {
            if b.is_ground() {
                let c = b.evaluate()?.pow(*w)?;
                return expand(&ExpressionAst::Const(c));
            }
            if *w > MAX_SYMBOLIC_EXPONENT {
                return Err(Error::Unsupported(format!(
                    "exponent {w} on the unknown exceeds {MAX_SYMBOLIC_EXPONENT}"
                )));
            }
            let base = expand(b)?;
            (0..*w).try_fold(Poly::from([(0, CycleSet::one())]), |acc, _| {
                poly_mul(&acc, &base)
            })
        }
    }
}

/// Maps an equation onto one of the supported shapes.
pub fn classify(lhs: &ExpressionAst, rhs: &ExpressionAst) -> Classification {
    match try_classify(lhs, rhs) {
        Ok(c) => c,
        Err(Error::Unsupported(reason)) => Classification::Unsupported { reason },
        Err(other) => Classification::Unsupported {
            reason: other.to_string(),
        },
    }
}

fn try_classify(lhs: &ExpressionAst, rhs: &ExpressionAst) -> Result<Classification> {
    let unsupported = |reason: &str| Err(Error::Unsupported(reason.to_string()));
    let mut vars = BTreeSet::new();
    lhs.variables(&mut vars);
    match vars.len() {
        0 => return unsupported("left-hand side has no unknown"),
        1 => {}
        _ => return unsupported("more than one unknown"),
    }
    if !rhs.is_ground() {
        return unsupported("right-hand side must not contain unknowns");
    }
    let b = rhs.evaluate()?;
    if b.is_zero() {
        return unsupported("right-hand side is empty (n = 0)");
    }
    let poly = expand(lhs)?;
    if poly.keys().any(|&k| k == 0) {
        return unsupported("left-hand side has a term without the unknown");
    }
    if poly.keys().any(|&k| k > 1) {
        return unsupported("powers of the unknown above 1 are not supported");
    }
    let Some(a) = poly.get(&1) else {
        return unsupported("the unknown vanishes from the left-hand side");
    };
    Ok(match (a.as_monomial(), b.as_monomial()) {
        (Some((p, 1)), Some((q, n))) => Classification::Basic { p, q, n },
        (Some((p, m)), Some((q, n))) => Classification::Scaled { m, p, q, n },
        (Some((p, m)), None) => Classification::MultiTarget {
            m,
            p,
            targets: b.entries().iter().map(|&(q, n)| (n, q)).collect(),
        },
        (None, Some((q, n))) => Classification::SumLhs {
            monomials: a
                .entries()
                .iter()
                .map(|&(p, m)| Monomial::new(m, p))
                .collect(),
            q,
            n,
        },
        (None, None) => return unsupported("sums on both sides of the equation are not supported"),
    })
}
