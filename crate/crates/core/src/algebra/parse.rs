//! Parser for polynomial expressions such as `x^2*y + 3/2*y^4 - z^3`.
//!
//! Grammar: a signed sum of terms; a term is a `*`-separated product of
//! integers, variables with optional `^exponent`, and `/integer` divisors.

use num_bigint::BigInt;

use super::{Monomial, Poly, Rational};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Token>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '/' => {
                out.push(Token::Slash);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                out.push(Token::Num(text.parse().expect("digits")));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}` in `{s}`"))),
        }
    }
    Ok(out)
}

/// Variable names in order of first appearance.
pub fn variables_in(s: &str) -> Result<Vec<String>, Error> {
    let mut vars: Vec<String> = Vec::new();
    for t in tokenize(s)? {
        if let Token::Ident(name) = t {
            if !vars.contains(&name) {
                vars.push(name);
            }
        }
    }
    Ok(vars)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    vars: &'a [String],
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in `{}`", self.src))
    }

    fn int(&mut self) -> Result<BigInt, Error> {
        match self.next() {
            Some(Token::Num(n)) => Ok(n),
            _ => Err(self.err("expected integer")),
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), Error> {
        let mut coeff = Rational::one();
        let mut exps = vec![0u32; self.vars.len()];
        loop {
            match self.next() {
                Some(Token::Num(n)) => coeff *= Rational::from(n),
                Some(Token::Ident(name)) => {
                    let idx = self
                        .vars
                        .iter()
                        .position(|v| *v == name)
                        .ok_or_else(|| self.err(&format!("unknown variable `{name}`")))?;
                    let mut e = 1u32;
                    if self.peek() == Some(&Token::Caret) {
                        self.pos += 1;
                        e = self
                            .int()?
                            .try_into()
                            .map_err(|_| self.err("exponent out of range"))?;
                    }
                    exps[idx] += e;
                }
                _ => return Err(self.err("expected factor")),
            }
            match self.peek() {
                Some(Token::Star) => self.pos += 1,
                Some(Token::Slash) => {
                    self.pos += 1;
                    let d = self.int()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("division by zero"));
                    }
                    coeff /= Rational::from(d);
                    match self.peek() {
                        Some(Token::Star) => self.pos += 1,
                        _ => break,
                    }
                }
                _ => break,
            }
        }
        Ok((Monomial::new(exps), coeff))
    }

    fn expr(&mut self) -> Result<Poly, Error> {
        let mut p = Poly::zero(self.vars.len());
        let mut sign = Rational::one();
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                sign = Rational::from_integer(-1);
            }
            Some(Token::Plus) => self.pos += 1,
            _ => {}
        }
        loop {
            let (m, c) = self.term()?;
            p.add_term(m, c * &sign);
            match self.next() {
                None => break,
                Some(Token::Plus) => sign = Rational::one(),
                Some(Token::Minus) => sign = Rational::from_integer(-1),
                Some(_) => return Err(self.err("expected `+` or `-`")),
            }
        }
        Ok(p)
    }
}

/// Parse a polynomial over the given ordered variables.
pub fn parse_poly(s: &str, vars: &[impl AsRef<str>]) -> Result<Poly, Error> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let tokens = tokenize(s)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Parser { tokens, pos: 0, vars: &vars, src: s }.expr()
}

/// Parse a single monomial like `x*z^2` or `1`.
pub fn parse_monomial(s: &str, vars: &[impl AsRef<str>]) -> Result<Monomial, Error> {
    let p = parse_poly(s, vars)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(Error::Parse(format!("`{s}` is not a monic monomial"))),
    }
}
