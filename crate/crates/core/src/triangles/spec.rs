//! Exponent patterns and grammar-side extraction.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;

use super::{ArrayName, Provenance, Triangle, TriangleError};
use crate::exactpoly::{ExactPolynomial, Monomial};
use crate::grammar::{Grammar, OpKind, OperatorSpec};

/// exponent = c0 + cm*m + ci*i + cj*j, with m = n div 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Affine {
    pub c0: i64,
    pub cm: i64,
    pub ci: i64,
    pub cj: i64,
}

const fn af(c0: i64, cm: i64, ci: i64, cj: i64) -> Affine {
    Affine { c0, cm, ci, cj }
}

impl Affine {
    fn at(&self, m: i64, i: i64, j: i64) -> i64 {
        self.c0 + self.cm * m + self.ci * i + self.cj * j
    }
}

#[derive(Clone, Debug)]
pub struct Pattern {
    pub even: Vec<Affine>,
    pub odd: Vec<Affine>,
    /// Rows whose monomials do not follow the parity rule: (n, exponents, i, j).
    pub exceptions: Vec<(usize, Vec<u32>, usize, usize)>,
}

impl Pattern {
    /// Exponent vector of (n,i,j), or None when some exponent is negative.
    pub fn exponents(&self, n: usize, i: usize, j: usize) -> Option<Vec<u32>> {
        if let Some(e) = self.exceptions.iter().find(|x| x.0 == n) {
            return (e.2 == i && e.3 == j).then(|| e.1.clone());
        }
        let maps = if n % 2 == 0 { &self.even } else { &self.odd };
        let m = (n / 2) as i64;
        maps.iter()
            .map(|a| {
                let v = a.at(m, i as i64, j as i64);
                (v >= 0).then_some(v as u32)
            })
            .collect()
    }

    /// Feasible (i,j) at level n with their monomials, checked injective.
    pub fn region(&self, n: usize) -> Result<Vec<((usize, usize), Vec<u32>)>, TriangleError> {
        let bound = 2 * n + 4;
        let mut seen: HashMap<Vec<u32>, (usize, usize)> = HashMap::new();
        let mut out = Vec::new();
        for i in 0..=bound {
            for j in 0..=bound {
                if let Some(e) = self.exponents(n, i, j) {
                    if let Some(prev) = seen.insert(e.clone(), (i, j)) {
                        return Err(TriangleError::NotInjective { n, first: prev, second: (i, j) });
                    }
                    out.push(((i, j), e));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct ArraySpec {
    pub name: ArrayName,
    pub operator: OperatorSpec,
    pub pattern: Pattern,
}

impl ArraySpec {
    pub fn of(name: ArrayName) -> Self {
        use ArrayName::*;
        let (kind, grammar, seed) = match name {
            S => (OpKind::D, Grammar::schett(), "x"),
            A => (OpKind::XD, Grammar::schett(), "x"),
            B => (OpKind::XD, Grammar::schett(), "y"),
            C => (OpKind::DX, Grammar::schett(), "x"),
            D => (OpKind::DX, Grammar::schett(), "y"),
            T => (OpKind::D, Grammar::extended(), "w"),
            R => (OpKind::D, Grammar::extended(), "w^2"),
        };
        let operator = OperatorSpec::from_text(kind, grammar, seed).expect("built-in operator");
        let pattern = match name {
            S => Pattern {
                even: vec![af(1, 0, 2, 0), af(0, 0, 0, 2), af(0, 2, -2, -2)],
                odd: vec![af(0, 0, 2, 0), af(1, 0, 0, 2), af(1, 2, -2, -2)],
                exceptions: vec![],
            },
            A | C => Pattern {
                even: vec![af(1, 0, 2, 0), af(0, 0, 0, 2), af(0, 4, -2, -2)],
                odd: vec![af(1, 0, 2, 0), af(1, 0, 0, 2), af(1, 4, -2, -2)],
                exceptions: vec![],
            },
            D => Pattern {
                even: vec![af(0, 0, 2, 0), af(1, 0, 0, 2), af(0, 4, -2, -2)],
                odd: vec![af(0, 0, 2, 0), af(0, 0, 0, 2), af(3, 4, -2, -2)],
                exceptions: vec![],
            },
            B => Pattern {
                even: vec![af(2, 0, 2, 0), af(-1, 4, -2, -2), af(0, 0, 0, 2)],
                odd: vec![af(2, 0, 2, 0), af(0, 4, -2, -2), af(1, 0, 0, 2)],
                exceptions: vec![(0, vec![0, 1, 0], 0, 0)],
            },
            T | R => {
                let w = if name == T { 1 } else { 2 };
                Pattern {
                    even: vec![af(w, 0, 0, 0), af(0, 0, 2, 0), af(0, 0, 0, 1), af(0, 2, -2, -1)],
                    odd: vec![af(w, 0, 0, 0), af(1, 0, 2, 0), af(0, 0, 0, 1), af(0, 2, -2, -1)],
                    exceptions: vec![],
                }
            }
        };
        ArraySpec { name, operator, pattern }
    }

    /// Reads the coefficients of one derived polynomial off the pattern.
    pub fn read_level(
        &self,
        n: usize,
        poly: &ExactPolynomial,
    ) -> Result<BTreeMap<(usize, usize), BigInt>, TriangleError> {
        let index: HashMap<Vec<u32>, (usize, usize)> =
            self.pattern.region(n)?.into_iter().map(|(ij, e)| (e, ij)).collect();
        let mut row = BTreeMap::new();
        for (m, c) in poly.terms() {
            match index.get(m.exponents()) {
                Some(&ij) => {
                    row.insert(ij, c.clone());
                }
                None => {
                    return Err(TriangleError::PatternMismatch {
                        name: self.name,
                        n,
                        monomial: describe(poly, m),
                    })
                }
            }
        }
        Ok(row)
    }
}

fn describe(poly: &ExactPolynomial, m: &Monomial) -> String {
    ExactPolynomial::monomial(poly.ring(), m.exponents().to_vec(), 1).to_string()
}

pub fn extract(name: ArrayName, n_max: usize) -> Result<Triangle, TriangleError> {
    if n_max < 1 {
        return Err(TriangleError::BadLevel(n_max));
    }
    let spec = ArraySpec::of(name);
    let levels = spec.operator.sequence(n_max).expect("built-in operator");
    let rows = levels
        .iter()
        .enumerate()
        .map(|(n, p)| spec.read_level(n, p))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Triangle::from_rows(name, rows, Provenance::Grammar))
}
