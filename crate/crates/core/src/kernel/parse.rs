//! Text form of polynomials.
//!
//! Accepts sums and products of rational numbers, `i`, variable names,
//! parentheses and integer powers. Division is allowed by nonzero constants
//! only. Juxtaposition multiplies, so the printed coefficients `3i` and
//! `(2/3)i` read back unchanged.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{GaussianRational, KernelError, Poly, Vars};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, KernelError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' | '\n' => k += 1,
            '0'..='9' => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_digit() {
                    k += 1;
                }
                let digits: String = chars[start..k].iter().collect();
                out.push(Tok::Num(digits.parse().expect("ascii digits")));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                out.push(Tok::Ident(chars[start..k].iter().collect()));
            }
            '+' => {
                out.push(Tok::Plus);
                k += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                k += 1;
            }
            '*' => {
                out.push(Tok::Star);
                k += 1;
            }
            '/' => {
                out.push(Tok::Slash);
                k += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                k += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                k += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                k += 1;
            }
            other => {
                return Err(KernelError::Parse(format!(
                    "unexpected character {other:?}"
                )));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    vars: &'a Vars,
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Poly, KernelError> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                -self.term()?
            }
            Some(Tok::Plus) => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, KernelError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc * self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let d = self.factor()?;
                    let c = d
                        .as_constant()
                        .ok_or_else(|| KernelError::Parse("division by a non-constant".into()))?;
                    acc = acc.scale(&c.inverse()?);
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Num(_)) => {
                    acc = acc * self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, KernelError> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| KernelError::Parse("exponent too large".into()))?;
                    Ok(base.pow(e))
                }
                _ => Err(KernelError::Parse("expected an integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Poly, KernelError> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(Poly::constant(
                self.vars,
                GaussianRational::from_rational(BigRational::from_integer(n)),
            )),
            Some(Tok::Ident(name)) if name == "i" => {
                Ok(Poly::constant(self.vars, GaussianRational::i()))
            }
            Some(Tok::Ident(name)) => Poly::var(self.vars, &name),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(KernelError::Parse("unbalanced parenthesis".into())),
                }
            }
            // A sign directly after an operator, as in `x*-1`.
            Some(Tok::Minus) => Ok(-self.factor()?),
            other => Err(KernelError::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses `s` as a polynomial over `vars`.
pub fn parse_poly(vars: &Vars, s: &str) -> Result<Poly, KernelError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(KernelError::Parse("empty input".into()));
    }
    let mut p = Parser { vars, toks, pos: 0 };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(KernelError::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(out)
}

/// Parses a rational constant of the form `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational, KernelError> {
    let s = s.trim();
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let bad = || KernelError::Parse(format!("not a rational of the form p or p/q: {s:?}"));
    let digits = |t: &str| -> Result<BigInt, KernelError> {
        if t.is_empty() || !t.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        Ok(t.parse().expect("ascii digits"))
    };
    let q = match body.split_once('/') {
        Some((n, d)) => {
            let d = digits(d)?;
            if d == BigInt::from(0) {
                return Err(KernelError::DivisionByZero);
            }
            BigRational::new(digits(n)?, d)
        }
        None => BigRational::from_integer(digits(body)?),
    };
    Ok(if neg { -q } else { q })
}
