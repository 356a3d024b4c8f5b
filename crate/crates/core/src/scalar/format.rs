//! Text form of scalars.
//!
//! Output grammar: `(P)/(Q)` where a polynomial is a sum of terms in
//! descending graded-lex order, joined by ` + ` or ` - `, a term is an
//! optional integer coefficient followed by `*`-separated powers `t^e`.
//! The parser accepts that grammar plus general `+ - * / ^ ( )` expressions
//! with integer exponents.

use std::fmt::Write;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::poly::Poly;
use super::ring::{is_valid_name, Ring};
use super::Scalar;
use crate::error::{Error, Result};

pub(super) fn poly_to_string(p: &Poly, ring: &Ring) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let abs = c.abs();
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || m.is_one() {
            factors.push(abs.to_string());
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ring.names()[i].clone()),
                _ => factors.push(format!("{}^{}", ring.names()[i], e)),
            }
        }
        let _ = write!(out, "{}", factors.join("*"));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Token::Int(text.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

/// Distinct identifiers appearing in `s`.
pub(super) fn identifiers(s: &str) -> Result<Vec<String>> {
    let mut names: Vec<String> = tokenize(s)?
        .into_iter()
        .filter_map(|t| match t {
            Token::Ident(n) => Some(n),
            _ => None,
        })
        .collect();
    names.sort();
    names.dedup();
    if let Some(bad) = names.iter().find(|n| !is_valid_name(n)) {
        return Err(Error::InvalidIndeterminate(bad.clone()));
    }
    Ok(names)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    ring: &'a Ring,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, op: char) -> Result<()> {
        if self.eat(op) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected `{op}` at token {}",
                self.pos
            )))
        }
    }

    // expr := ['-'] term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Scalar> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := power (('*'|'/') power)*
    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.power()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.power()?;
            } else if self.eat('/') {
                acc = acc.div(&self.power()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    // power := atom ['^' ['-'] int]
    fn power(&mut self) -> Result<Scalar> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let Some(Token::Int(e)) = self.peek().cloned() else {
            return Err(Error::Parse("exponent must be an integer".into()));
        };
        self.pos += 1;
        let e: i32 = i32::try_from(e).map_err(|_| Error::Parse("exponent too large".into()))?;
        base.pow(if negative { -e } else { e })
    }

    fn atom(&mut self) -> Result<Scalar> {
        match self.peek().cloned() {
            Some(Token::Int(v)) => {
                self.pos += 1;
                Ok(Scalar::from_bigint(self.ring, v))
            }
            Some(Token::Ident(name)) => {
                self.pos += 1;
                Scalar::var(self.ring, &name)
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(Token::Op('-')) => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub(super) fn parse_scalar(s: &str, ring: &Ring) -> Result<Scalar> {
    let mut parser = Parser {
        tokens: tokenize(s)?,
        pos: 0,
        ring,
    };
    if parser.tokens.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!("trailing input in `{s}`")));
    }
    Ok(value)
}
