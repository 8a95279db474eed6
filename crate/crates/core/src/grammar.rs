//! Derivations induced by context-free grammars (variable -> polynomial rules).

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exactpoly::{scan_identifiers, ExactPolynomial, PolyError, VariableSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GrammarError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("bad rule `{0}`: expected `var->polynomial`")]
    BadRule(String),
    #[error("variable `{0}` has two rules")]
    DuplicateRule(String),
    #[error("operator needs variable `x` in the ring")]
    NoX,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Grammar {
    ring: VariableSet,
    rules: Vec<Option<ExactPolynomial>>,
}

impl Grammar {
    pub fn new(ring: &VariableSet) -> Self {
        Grammar { ring: ring.clone(), rules: vec![None; ring.len()] }
    }

    pub fn with_rule(mut self, var: &str, image: ExactPolynomial) -> Result<Self, GrammarError> {
        if image.ring() != &self.ring {
            return Err(PolyError::RingMismatch {
                left: self.ring.to_string(),
                right: image.ring().to_string(),
            }
            .into());
        }
        let idx = self
            .ring
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        if self.rules[idx].is_some() {
            return Err(GrammarError::DuplicateRule(var.to_string()));
        }
        self.rules[idx] = Some(image);
        Ok(self)
    }

    /// Parses `x->y*z; y->x*z; z->x*y`. The ring is the identifiers in
    /// order of first appearance.
    pub fn parse(src: &str) -> Result<Self, GrammarError> {
        let ring = VariableSet::new(&scan_identifiers(src))?;
        Self::parse_in(&ring, src)
    }

    pub fn parse_in(ring: &VariableSet, src: &str) -> Result<Self, GrammarError> {
        let mut g = Grammar::new(ring);
        for rule in src.split(';').map(str::trim).filter(|r| !r.is_empty()) {
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| GrammarError::BadRule(rule.to_string()))?;
            let lhs = lhs.trim();
            if lhs.is_empty() || !lhs.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(GrammarError::BadRule(rule.to_string()));
            }
            let image = ExactPolynomial::parse(ring, rhs)?;
            g = g.with_rule(lhs, image)?;
        }
        Ok(g)
    }

    /// x->yz, y->xz, z->xy over (x,y,z).
    pub fn schett() -> Self {
        Self::parse("x->y*z; y->x*z; z->x*y").expect("built-in grammar")
    }

    /// w->wx, x->wx over (w,x).
    pub fn eulerian() -> Self {
        Self::parse("w->w*x; x->w*x").expect("built-in grammar")
    }

    /// w->wx together with the Schett rules, over (w,x,y,z).
    pub fn extended() -> Self {
        Self::parse("w->w*x; x->y*z; y->x*z; z->x*y").expect("built-in grammar")
    }

    pub fn ring(&self) -> &VariableSet {
        &self.ring
    }

    pub fn rule(&self, var: &str) -> Option<&ExactPolynomial> {
        self.ring.index_of(var).and_then(|i| self.rules[i].as_ref())
    }

    pub fn derive(&self, a: &ExactPolynomial) -> Result<ExactPolynomial, GrammarError> {
        if a.ring() != &self.ring {
            return Err(PolyError::RingMismatch {
                left: self.ring.to_string(),
                right: a.ring().to_string(),
            }
            .into());
        }
        let mut out = ExactPolynomial::zero(&self.ring);
        for (m, c) in a.terms() {
            for (i, rule) in self.rules.iter().enumerate() {
                let Some(rule) = rule else { continue };
                let e = m.exponents()[i];
                if e == 0 {
                    continue;
                }
                let mut reduced = m.exponents().to_vec();
                reduced[i] -= 1;
                out.add_scaled_product(&reduced, &(c * BigInt::from(e)), rule);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .ring
            .names()
            .iter()
            .zip(&self.rules)
            .filter_map(|(n, r)| r.as_ref().map(|r| format!("{n}->{r}")))
            .collect();
        f.write_str(&parts.join("; "))
    }
}

impl fmt::Debug for Grammar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Grammar[{}] over ({})", self, self.ring)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OpKind {
    /// a -> D(a)
    D,
    /// a -> x D(a)
    XD,
    /// a -> D(x a)
    DX,
}

impl std::str::FromStr for OpKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "D" => Ok(OpKind::D),
            "xD" => Ok(OpKind::XD),
            "Dx" => Ok(OpKind::DX),
            _ => Err(format!("unknown operator `{s}` (expected D, xD or Dx)")),
        }
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpKind::D => "D",
            OpKind::XD => "xD",
            OpKind::DX => "Dx",
        })
    }
}

#[derive(Clone, Debug)]
pub struct OperatorSpec {
    pub kind: OpKind,
    pub grammar: Grammar,
    pub seed: ExactPolynomial,
}

impl OperatorSpec {
    pub fn new(kind: OpKind, grammar: Grammar, seed: ExactPolynomial) -> Result<Self, GrammarError> {
        if seed.ring() != grammar.ring() {
            return Err(PolyError::RingMismatch {
                left: grammar.ring().to_string(),
                right: seed.ring().to_string(),
            }
            .into());
        }
        if kind != OpKind::D && grammar.ring().index_of("x").is_none() {
            return Err(GrammarError::NoX);
        }
        Ok(OperatorSpec { kind, grammar, seed })
    }

    /// Convenience: seed given as text in the grammar's ring.
    pub fn from_text(kind: OpKind, grammar: Grammar, seed: &str) -> Result<Self, GrammarError> {
        let seed = ExactPolynomial::parse(grammar.ring(), seed)?;
        Self::new(kind, grammar, seed)
    }

    pub fn step(&self, a: &ExactPolynomial) -> Result<ExactPolynomial, GrammarError> {
        match self.kind {
            OpKind::D => self.grammar.derive(a),
            OpKind::XD => {
                let x = ExactPolynomial::var(self.grammar.ring(), "x")?;
                Ok(&x * &self.grammar.derive(a)?)
            }
            OpKind::DX => {
                let x = ExactPolynomial::var(self.grammar.ring(), "x")?;
                self.grammar.derive(&(&x * a))
            }
        }
    }

    /// Levels 0..=n; level 0 is the seed.
    pub fn sequence(&self, n: usize) -> Result<Vec<ExactPolynomial>, GrammarError> {
        let mut out = Vec::with_capacity(n + 1);
        out.push(self.seed.clone());
        for k in 0..n {
            let next = self.step(&out[k])?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn iterate(&self, n: usize) -> Result<ExactPolynomial, GrammarError> {
        Ok(self.sequence(n)?.pop().expect("non-empty"))
    }
}

/// D^n(w) under w->wx, x->wx.
pub fn eulerian_sanity(n: usize) -> ExactPolynomial {
    let g = Grammar::eulerian();
    OperatorSpec::from_text(OpKind::D, g, "w")
        .and_then(|op| op.iterate(n))
        .expect("built-in operator")
}
