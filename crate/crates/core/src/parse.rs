//! Text syntax for polynomials.
//!
//! Terms are joined by `+`/`-`; a term is a product of integer factors and
//! variable powers `x^3`, separated by `*` or juxtaposed (`3xy^2`). Whitespace
//! is ignored. Juxtaposed names are split by longest match against the
//! declared variables. Integer coefficients are reduced mod p.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{add_mod, mul_mod, sub_mod};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

struct Cursor<'a> {
    // non-whitespace characters with their 1-based source columns
    chars: Vec<(char, usize)>,
    pos: usize,
    ring: &'a PolyRing,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(c, _)| *c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(_, col)| *col)
            .unwrap_or(self.end_column)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.column(),
            message: message.into(),
        })
    }

    fn integer_mod(&mut self, p: u32) -> u32 {
        let mut acc = 0u32;
        while let Some(c) = self.peek().and_then(|c| c.to_digit(10)) {
            acc = add_mod(mul_mod(acc, 10 % p, p), c % p, p);
            self.pos += 1;
        }
        acc
    }

    fn exponent(&mut self) -> Result<u32> {
        let start = self.column();
        let mut acc: u64 = 0;
        let mut any = false;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            acc = acc * 10 + d as u64;
            if acc > u32::MAX as u64 {
                return Err(Error::Parse {
                    column: start,
                    message: "exponent too large".into(),
                });
            }
            any = true;
            self.pos += 1;
        }
        if !any {
            return self.error("expected an exponent after `^`");
        }
        Ok(acc as u32)
    }

    fn variable(&mut self) -> Result<usize> {
        let run: String = self.chars[self.pos..]
            .iter()
            .map(|(c, _)| *c)
            .take_while(|c| c.is_ascii_alphanumeric() || *c == '_')
            .collect();
        let best = self
            .ring
            .variables()
            .iter()
            .enumerate()
            .filter(|(_, name)| run.starts_with(name.as_str()))
            .max_by_key(|(_, name)| name.len());
        match best {
            Some((index, name)) => {
                self.pos += name.chars().count();
                Ok(index)
            }
            None => {
                let name: String = run
                    .chars()
                    .take_while(|c| c.is_ascii_alphabetic() || *c == '_')
                    .collect();
                self.error(format!("unknown variable `{name}`"))
            }
        }
    }

    /// Parses one term, returning its monomial exponents and coefficient.
    fn term(&mut self) -> Result<(Vec<u32>, u32)> {
        let p = self.ring.characteristic();
        let mut exps = vec![0u32; self.ring.nvars()];
        let mut coef = 1 % p;
        let mut first = true;
        loop {
            match self.peek() {
                Some('*') if !first => {
                    self.pos += 1;
                    if !matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                        return self.error("expected a factor after `*`");
                    }
                    continue;
                }
                Some(c) if c.is_ascii_digit() => {
                    let v = self.integer_mod(p);
                    coef = mul_mod(coef, v, p);
                }
                Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                    let index = self.variable()?;
                    let e = if self.peek() == Some('^') {
                        self.pos += 1;
                        self.exponent()?
                    } else {
                        1
                    };
                    exps[index] = exps[index].checked_add(e).ok_or(Error::Parse {
                        column: self.column(),
                        message: "exponent too large".into(),
                    })?;
                }
                Some(c) if first => return self.error(format!("unexpected character `{c}`")),
                None if first => return self.error("expected a term"),
                _ => break,
            }
            first = false;
        }
        Ok((exps, coef))
    }
}

/// Parses a polynomial over `ring`.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let chars: Vec<(char, usize)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| (c, i + 1))
        .collect();
    let mut cur = Cursor {
        chars,
        pos: 0,
        ring,
        end_column: text.chars().count() + 1,
    };
    let p = ring.characteristic();
    let mut terms: Vec<(Monomial, i64)> = Vec::new();
    let mut negate = false;
    match cur.peek() {
        Some('-') => {
            negate = true;
            cur.pos += 1;
        }
        Some('+') => cur.pos += 1,
        _ => {}
    }
    loop {
        let (exps, coef) = cur.term()?;
        let coef = if negate { sub_mod(0, coef, p) } else { coef };
        terms.push((Monomial::from_exponents(&exps), coef as i64));
        match cur.peek() {
            None => break,
            Some('+') => negate = false,
            Some('-') => negate = true,
            Some(c) => return cur.error(format!("unexpected character `{c}`")),
        }
        cur.pos += 1;
    }
    Ok(Polynomial::from_terms(ring, terms))
}

impl PolyRing {
    /// Convenience wrapper around [`parse_polynomial`].
    pub fn parse(self: &Arc<Self>, text: &str) -> Result<Polynomial> {
        parse_polynomial(self, text)
    }
}
