//! Recursive-descent reader for `3*x^2*y - (y+z)^2` style text.

use num_bigint::BigInt;

use super::{ExactPolynomial, PolyError, VariableSet};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a VariableSet,
}

pub(super) fn parse(ring: &VariableSet, src: &str) -> Result<ExactPolynomial, PolyError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ring };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<ExactPolynomial, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactPolynomial, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ExactPolynomial, PolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let digits = self.take_while(|b| b.is_ascii_digit());
            if digits.is_empty() {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = digits.parse().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn take_while(&mut self, f: impl Fn(u8) -> bool) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && f(self.src[self.pos]) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<ExactPolynomial, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let digits = self.take_while(|b| b.is_ascii_digit());
                let c: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                Ok(ExactPolynomial::constant(self.ring, c))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let start = self.pos;
                let name = self.take_while(|b| b.is_ascii_alphanumeric() || b == b'_');
                ExactPolynomial::var(self.ring, &name).map_err(|_| PolyError::Parse {
                    pos: start,
                    msg: format!("unknown variable `{name}`"),
                })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Variable names in order of first appearance.
pub fn scan_identifiers(src: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let b = src.as_bytes();
    let mut i = 0;
    while i < b.len() {
        if b[i].is_ascii_alphabetic() {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            let name = &src[s..i];
            if !out.iter().any(|n| n == name) {
                out.push(name.to_string());
            }
        } else if b[i].is_ascii_digit() {
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
        } else {
            i += 1;
        }
    }
    out
}
