//! Text syntax for polynomials and transfer functions.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary | unary)*      juxtaposition multiplies
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' integer)?
//! atom   := number | identifier | '(' expr ')'
//! number := digits ('.' digits)?
//! ```
//!
//! Decimal literals are converted to exact rationals (`0.5` is `1/2`).
//! Inside a polynomial, division is only allowed by nonzero constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{MultiPoly, Rational, VariableSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at column {position}: {message}")]
pub struct ParseError {
    /// 0-based byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "{n}"),
            Tok::Ident(s) => write!(f, "{s}"),
            Tok::Plus => write!(f, "+"),
            Tok::Minus => write!(f, "-"),
            Tok::Star => write!(f, "*"),
            Tok::Slash => write!(f, "/"),
            Tok::Caret => write!(f, "^"),
            Tok::LParen => write!(f, "("),
            Tok::RParen => write!(f, ")"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
                continue;
            }
            '+' => out.push((start, Tok::Plus)),
            '-' => out.push((start, Tok::Minus)),
            '*' => out.push((start, Tok::Star)),
            '/' => out.push((start, Tok::Slash)),
            '^' => out.push((start, Tok::Caret)),
            '(' => out.push((start, Tok::LParen)),
            ')' => out.push((start, Tok::RParen)),
            '0'..='9' | '.' => {
                let mut int_part = String::new();
                let mut frac_part = String::new();
                let mut seen_dot = false;
                while i < bytes.len() {
                    let d = bytes[i] as char;
                    if d.is_ascii_digit() {
                        if seen_dot { frac_part.push(d) } else { int_part.push(d) }
                    } else if d == '.' && !seen_dot {
                        seen_dot = true;
                    } else {
                        break;
                    }
                    i += 1;
                }
                if int_part.is_empty() && frac_part.is_empty() {
                    return Err(ParseError::new(start, "malformed number"));
                }
                let digits = format!("{int_part}{frac_part}");
                let n: BigInt = digits.parse().map_err(|_| ParseError::new(start, "malformed number"))?;
                let den = num_traits::pow(BigInt::from(10), frac_part.len());
                out.push((start, Tok::Num(Rational::new(n, den))));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            other => return Err(ParseError::new(start, format!("unexpected character `{other}`"))),
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

#[derive(Debug, Clone)]
struct Node {
    pos: usize,
    expr: Expr,
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn expr(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Node { pos, expr: Expr::Add(Box::new(lhs), Box::new(rhs)) };
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    lhs = Node { pos, expr: Expr::Sub(Box::new(lhs), Box::new(rhs)) };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Node, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let pos = self.pos();
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Node { pos, expr: Expr::Mul(Box::new(lhs), Box::new(rhs)) };
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.unary()?;
                    lhs = Node { pos, expr: Expr::Div(Box::new(lhs), Box::new(rhs)) };
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    let rhs = self.power()?;
                    lhs = Node { pos, expr: Expr::Mul(Box::new(lhs), Box::new(rhs)) };
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                let inner = self.unary()?;
                Ok(Node { pos, expr: Expr::Neg(Box::new(inner)) })
            }
            Some(Tok::Plus) => {
                self.bump();
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Node, ParseError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            let pos = self.pos();
            self.bump();
            let epos = self.pos();
            return match self.bump() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| ParseError::new(epos, "exponent too large"))?;
                    Ok(Node { pos, expr: Expr::Pow(Box::new(base), e) })
                }
                Some(t) => Err(ParseError::new(epos, format!("expected a non-negative integer exponent, found `{t}`"))),
                None => Err(ParseError::new(epos, "expected an exponent")),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Node { pos, expr: Expr::Num(n) }),
            Some(Tok::Ident(s)) => Ok(Node { pos, expr: Expr::Var(s) }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let close = self.pos();
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    Some(t) => Err(ParseError::new(close, format!("expected `)`, found `{t}`"))),
                    None => Err(ParseError::new(close, "expected `)`")),
                }
            }
            Some(t) => Err(ParseError::new(pos, format!("unexpected `{t}`"))),
            None => Err(ParseError::new(pos, "unexpected end of input")),
        }
    }
}

fn parse_tree(text: &str) -> Result<Node, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0, end: text.len() };
    let node = p.expr()?;
    if p.at < p.toks.len() {
        let pos = p.pos();
        return Err(ParseError::new(pos, format!("unexpected `{}`", p.peek().unwrap())));
    }
    Ok(node)
}

fn eval(node: &Node, vars: &VariableSet) -> Result<MultiPoly, ParseError> {
    Ok(match &node.expr {
        Expr::Num(n) => MultiPoly::constant(vars, n.clone()),
        Expr::Var(name) => MultiPoly::var(vars, name)
            .map_err(|_| ParseError::new(node.pos, format!("unknown variable `{name}`")))?,
        Expr::Neg(a) => -&eval(a, vars)?,
        Expr::Add(a, b) => &eval(a, vars)? + &eval(b, vars)?,
        Expr::Sub(a, b) => &eval(a, vars)? - &eval(b, vars)?,
        Expr::Mul(a, b) => &eval(a, vars)? * &eval(b, vars)?,
        Expr::Pow(a, e) => eval(a, vars)?.pow(*e),
        Expr::Div(a, b) => {
            let num = eval(a, vars)?;
            let den = eval(b, vars)?;
            match den.as_constant() {
                Some(c) if c.is_zero() => return Err(ParseError::new(node.pos, "division by zero")),
                Some(c) => num.scale(&c.recip()),
                None => {
                    return Err(ParseError::new(
                        node.pos,
                        "division by a non-constant polynomial (only a single top-level `/` is allowed)",
                    ))
                }
            }
        }
    })
}

/// Parses a polynomial over `vars`.
pub fn parse_polynomial(text: &str, vars: &VariableSet) -> Result<MultiPoly, ParseError> {
    eval(&parse_tree(text)?, vars)
}

/// Parses `num / den` where both sides are polynomials over `vars`.
///
/// The expression may contain at most one division by a non-constant
/// polynomial, and it must be the outermost operation (optionally under a
/// unary minus). Without it the denominator is `1`.
pub fn parse_fraction(text: &str, vars: &VariableSet) -> Result<(MultiPoly, MultiPoly), ParseError> {
    let mut node = parse_tree(text)?;
    let mut negate = false;
    while let Expr::Neg(inner) = node.expr {
        negate = !negate;
        node = *inner;
    }
    let (num, den) = match &node.expr {
        Expr::Div(a, b) => {
            let den = eval(b, vars)?;
            (eval(a, vars)?, den)
        }
        _ => (eval(&node, vars)?, MultiPoly::constant(vars, Rational::one())),
    };
    Ok(if negate { (-&num, den) } else { (num, den) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn s() -> VariableSet {
        VariableSet::new(["s"]).unwrap()
    }

    #[test]
    fn decimals_are_exact() {
        let p = parse_polynomial("0.5*s + 1.25", &s()).unwrap();
        assert_eq!(p.to_string(), "1/2*s + 5/4");
    }

    #[test]
    fn precedence() {
        let v = s();
        assert_eq!(parse_polynomial("-s^2", &v).unwrap().to_string(), "-s^2");
        assert_eq!(parse_polynomial("2s(s+1)", &v).unwrap().to_string(), "2*s^2 + 2*s");
        assert_eq!(parse_polynomial("1/2*s", &v).unwrap().to_string(), "1/2*s");
        assert_eq!(parse_polynomial("(s+4)^2+4^2", &v).unwrap().to_string(), "s^2 + 8*s + 32");
    }

    #[test]
    fn fraction_forms() {
        let v = s();
        let (n, d) = parse_fraction("1/(s*((s+4)^2+4^2))", &v).unwrap();
        assert_eq!(n.to_string(), "1");
        assert_eq!(d.to_string(), "s^3 + 8*s^2 + 32*s");
        let (n, d) = parse_fraction("-(s+1)/s^2", &v).unwrap();
        assert_eq!((n.to_string(), d.to_string()), ("-s - 1".into(), "s^2".into()));
        let (n, d) = parse_fraction("s^2 - 1", &v).unwrap();
        assert_eq!((n.to_string(), d.as_constant()), ("s^2 - 1".into(), Some(rat(1, 1))));
    }

    #[test]
    fn errors_carry_positions() {
        let v = s();
        let e = parse_polynomial("s + x", &v).unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_fraction("1/s + 1/s", &v).unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse_fraction("(s+1", &v).unwrap_err();
        assert_eq!(e.position, 4);
        assert!(parse_fraction("s/0", &v).unwrap().1.is_zero());
        assert!(parse_polynomial("s^1.5", &v).is_err());
        assert!(parse_polynomial("s $ 2", &v).is_err());
    }
}
