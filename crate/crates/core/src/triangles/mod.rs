//! The seven coefficient arrays s, a, b, c, d, t, r.

mod recur;
pub mod spec;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{ExactPolynomial, VariableSet};

pub use recur::recur;
pub use spec::{extract, ArraySpec, Pattern};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangleError {
    #[error("unknown array `{0}` (expected one of s,a,b,c,d,t,r)")]
    UnknownName(String),
    #[error("level must be at least 1, got {0}")]
    BadLevel(usize),
    #[error("array {name}: monomial {monomial} at n={n} does not fit the exponent pattern")]
    PatternMismatch { name: ArrayName, n: usize, monomial: String },
    #[error("pattern at n={n} maps {first:?} and {second:?} to the same monomial")]
    NotInjective { n: usize, first: (usize, usize), second: (usize, usize) },
    #[error("row {n} requested but triangle stops at {n_max}")]
    OutOfRange { n: usize, n_max: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArrayName {
    S,
    A,
    B,
    C,
    D,
    T,
    R,
}

impl ArrayName {
    pub const ALL: [ArrayName; 7] = [
        ArrayName::S,
        ArrayName::A,
        ArrayName::B,
        ArrayName::C,
        ArrayName::D,
        ArrayName::T,
        ArrayName::R,
    ];

    pub fn letter(&self) -> char {
        match self {
            ArrayName::S => 's',
            ArrayName::A => 'a',
            ArrayName::B => 'b',
            ArrayName::C => 'c',
            ArrayName::D => 'd',
            ArrayName::T => 't',
            ArrayName::R => 'r',
        }
    }
}

impl fmt::Display for ArrayName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for ArrayName {
    type Err = TriangleError;
    fn from_str(s: &str) -> Result<Self, TriangleError> {
        ArrayName::ALL
            .iter()
            .copied()
            .find(|a| s.len() == 1 && s.starts_with(a.letter()))
            .ok_or_else(|| TriangleError::UnknownName(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Grammar,
    Recurrence,
}

#[derive(Clone, Debug)]
pub struct Triangle {
    pub name: ArrayName,
    pub provenance: Provenance,
    rows: Vec<BTreeMap<(usize, usize), BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Aggregate {
    /// Sum of the whole row.
    Total,
    /// For each i, the sum over j.
    SumOverJ,
    /// For each j, the sum over i.
    SumOverI,
    /// Entries (n, i, j) for fixed j, listed by i.
    Column(usize),
    /// Entries (n, i, k - i) for i = 0..=k.
    Antidiagonal(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AggregateResult {
    Scalar(BigInt),
    List(Vec<BigInt>),
}

impl Triangle {
    pub(crate) fn from_rows(
        name: ArrayName,
        rows: Vec<BTreeMap<(usize, usize), BigInt>>,
        provenance: Provenance,
    ) -> Self {
        Triangle { name, provenance, rows }
    }

    pub fn n_max(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn get(&self, n: usize, i: usize, j: usize) -> BigInt {
        self.rows
            .get(n)
            .and_then(|r| r.get(&(i, j)))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    /// Signed-index lookup; negative indices read as 0.
    pub fn at(&self, n: usize, i: i64, j: i64) -> BigInt {
        if i < 0 || j < 0 {
            BigInt::zero()
        } else {
            self.get(n, i as usize, j as usize)
        }
    }

    pub fn row(&self, n: usize) -> Result<&BTreeMap<(usize, usize), BigInt>, TriangleError> {
        self.rows
            .get(n)
            .ok_or(TriangleError::OutOfRange { n, n_max: self.n_max() })
    }

    /// All nonzero entries, in (n, i, j) order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(n, r)| r.iter().map(move |(&(i, j), v)| (n, i, j, v)))
    }

    /// First entrywise difference, as (n, i, j, self, other).
    pub fn first_difference(&self, other: &Triangle) -> Option<(usize, usize, usize, BigInt, BigInt)> {
        let top = self.n_max().max(other.n_max());
        for n in 0..=top {
            let empty = BTreeMap::new();
            let a = self.rows.get(n).unwrap_or(&empty);
            let b = other.rows.get(n).unwrap_or(&empty);
            let mut keys: Vec<_> = a.keys().chain(b.keys()).copied().collect();
            keys.sort();
            keys.dedup();
            for (i, j) in keys {
                let (x, y) = (self.get(n, i, j), other.get(n, i, j));
                if x != y {
                    return Some((n, i, j, x, y));
                }
            }
        }
        None
    }

    /// Sum over (i,j) of entry * p^i q^j, in the ring (p,q).
    pub fn generating_polynomial(&self, n: usize) -> Result<ExactPolynomial, TriangleError> {
        let ring = pq_ring();
        let row = self.row(n)?;
        Ok(ExactPolynomial::from_terms(
            &ring,
            row.iter().map(|(&(i, j), v)| (vec![i as u32, j as u32], v.clone())),
        ))
    }

    pub fn aggregate(&self, n: usize, mode: &Aggregate) -> Result<AggregateResult, TriangleError> {
        let row = self.row(n)?;
        let imax = row.keys().map(|k| k.0).max().unwrap_or(0);
        let jmax = row.keys().map(|k| k.1).max().unwrap_or(0);
        Ok(match mode {
            Aggregate::Total => AggregateResult::Scalar(row.values().sum()),
            Aggregate::SumOverJ => {
                let mut v = vec![BigInt::zero(); imax + 1];
                for (&(i, _), c) in row {
                    v[i] += c;
                }
                AggregateResult::List(v)
            }
            Aggregate::SumOverI => {
                let mut v = vec![BigInt::zero(); jmax + 1];
                for (&(_, j), c) in row {
                    v[j] += c;
                }
                AggregateResult::List(v)
            }
            Aggregate::Column(j) => {
                AggregateResult::List((0..=imax).map(|i| self.get(n, i, *j)).collect())
            }
            Aggregate::Antidiagonal(k) => {
                AggregateResult::List((0..=*k).map(|i| self.get(n, i, k - i)).collect())
            }
        })
    }

    /// n! times the EGF coefficient evaluated at (p, q): sum entry p^i q^j.
    pub fn row_value(&self, n: usize, p: Complex64, q: Complex64) -> Complex64 {
        self.rows.get(n).map_or(Complex64::zero(), |r| {
            r.iter()
                .map(|(&(i, j), v)| v.to_f64().unwrap_or(f64::NAN) * p.powu(i as u32) * q.powu(j as u32))
                .sum()
        })
    }

    /// Truncated EGF split into (odd part, even part), using rows 0..=order.
    pub fn egf_parts(&self, order: usize, x: Complex64, p: Complex64, q: Complex64) -> (Complex64, Complex64) {
        let mut odd = Complex64::zero();
        let mut even = Complex64::zero();
        let mut xn_over_fact = Complex64::new(1.0, 0.0);
        for n in 0..=order.min(self.n_max()) {
            if n > 0 {
                xn_over_fact = xn_over_fact * x / n as f64;
            }
            let t = self.row_value(n, p, q) * xn_over_fact;
            if n % 2 == 0 {
                even += t;
            } else {
                odd += t;
            }
        }
        (odd, even)
    }

    /// Magnitude of the single EGF term of degree n.
    pub fn egf_term_abs(&self, n: usize, x: Complex64, p: Complex64, q: Complex64) -> f64 {
        let mut f = 1.0;
        for k in 1..=n {
            f *= x.norm() / k as f64;
        }
        self.row_value(n, p, q).norm() * f
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .entries()
            .map(|(n, i, j, v)| serde_json::json!([n, i, j, v.to_string()]))
            .collect();
        serde_json::json!({
            "name": self.name.to_string(),
            "nmax": self.n_max(),
            "entries": entries,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("n,i,j,value\n");
        for (n, i, j, v) in self.entries() {
            s.push_str(&format!("{n},{i},{j},{v}\n"));
        }
        s
    }

    /// One block per row, rows indexed by i and columns by j.
    pub fn to_pretty(&self) -> String {
        let mut s = String::new();
        for (n, row) in self.rows.iter().enumerate() {
            s.push_str(&format!("{}_{{{},i,j}}\n", self.name, n));
            let imax = row.keys().map(|k| k.0).max().unwrap_or(0);
            let jmax = row.keys().map(|k| k.1).max().unwrap_or(0);
            for i in 0..=imax {
                let cells: Vec<String> = (0..=jmax).map(|j| self.get(n, i, j).to_string()).collect();
                s.push_str(&format!("  i={i}: {}\n", cells.join(" ")));
            }
        }
        s
    }
}

pub fn pq_ring() -> VariableSet {
    VariableSet::new(&["p", "q"]).expect("distinct names")
}

/// Both constructions of one array, built to `n_max`.
pub fn both(name: ArrayName, n_max: usize) -> Result<(Triangle, Triangle), TriangleError> {
    Ok((extract(name, n_max)?, recur(name, n_max)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn t_row_four() {
        let t = extract(ArrayName::T, 4).unwrap();
        assert_eq!(t.get(4, 1, 1), big(10));
        assert_eq!(t.get(4, 0, 3), big(1));
        assert_eq!(t.get(4, 2, 0), big(1));
    }

    #[test]
    fn r_row_three() {
        let r = extract(ArrayName::R, 3).unwrap();
        assert_eq!(r.get(3, 0, 1), big(12));
        assert_eq!(r.get(3, 1, 0), big(8));
    }

    #[test]
    fn a_row_one_is_single_entry() {
        let a = extract(ArrayName::A, 1).unwrap();
        assert_eq!(a.row(1).unwrap().len(), 1);
        assert_eq!(a.get(1, 0, 0), big(1));
    }

    #[test]
    fn recurrence_small_rows() {
        let a = recur(ArrayName::A, 2).unwrap();
        assert_eq!(a.get(2, 1, 0), big(1));
        assert_eq!(a.get(2, 1, 1), big(1));
        assert_eq!(a.get(2, 0, 1), big(1));
        assert_eq!(recur(ArrayName::T, 1).unwrap().get(1, 0, 0), big(1));
    }

    #[test]
    fn generating_polynomials() {
        let ring = pq_ring();
        let a = extract(ArrayName::A, 3).unwrap();
        let want = ExactPolynomial::parse(&ring, "4*p^2+5*p*(1+q)+q").unwrap();
        assert_eq!(a.generating_polynomial(3).unwrap(), want);
        let c = extract(ArrayName::C, 4).unwrap();
        let want = ExactPolynomial::parse(&ring, "8*(p^3*(1+q)+2*p^2*(1+9*q+q^2)+11*p*q*(1+q)+2*q^2)").unwrap();
        assert_eq!(c.generating_polynomial(4).unwrap(), want);
        let t = extract(ArrayName::T, 5).unwrap();
        let want = ExactPolynomial::parse(&ring, "p^2+14*p+1+(30*p+15)*q+(14*p+29)*q^2+15*q^3+q^4").unwrap();
        assert_eq!(t.generating_polynomial(5).unwrap(), want);
    }

    #[test]
    fn aggregates() {
        let a = extract(ArrayName::A, 4).unwrap();
        assert_eq!(a.aggregate(4, &Aggregate::Total).unwrap(), AggregateResult::Scalar(big(105)));
        let t = extract(ArrayName::T, 4).unwrap();
        match t.aggregate(4, &Aggregate::SumOverI).unwrap() {
            AggregateResult::List(v) => assert_eq!(v[0], big(5)),
            other => panic!("{other:?}"),
        }
        let s = extract(ArrayName::S, 3).unwrap();
        assert_eq!(s.aggregate(3, &Aggregate::Total).unwrap(), AggregateResult::Scalar(big(6)));
    }

    #[test]
    fn names_parse() {
        assert_eq!("t".parse::<ArrayName>().unwrap(), ArrayName::T);
        assert!("x".parse::<ArrayName>().is_err());
        assert!("ta".parse::<ArrayName>().is_err());
    }

    #[test]
    fn level_zero_rejected() {
        assert!(matches!(extract(ArrayName::S, 0), Err(TriangleError::BadLevel(0))));
        assert!(matches!(recur(ArrayName::S, 0), Err(TriangleError::BadLevel(0))));
    }

    #[test]
    fn mismatched_monomial_is_reported() {
        let spec = ArraySpec::of(ArrayName::S);
        let ring = spec.operator.grammar.ring().clone();
        let bad = ExactPolynomial::parse(&ring, "x^2").unwrap();
        let err = spec.read_level(2, &bad).unwrap_err();
        assert!(matches!(err, TriangleError::PatternMismatch { n: 2, .. }), "{err}");
    }

    #[test]
    fn json_shape() {
        let t = extract(ArrayName::T, 1).unwrap();
        let v = t.to_json();
        assert_eq!(v["name"], "t");
        assert_eq!(v["nmax"], 1);
        assert_eq!(v["entries"][1], serde_json::json!([1, 0, 0, "1"]));
    }
}
