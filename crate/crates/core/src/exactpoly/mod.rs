//! Sparse multivariate polynomials with big-integer coefficients.

mod format;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use format::JsonTerm;
pub use parse::scan_identifiers;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("ring mismatch: ({left}) vs ({right})")]
    RingMismatch { left: String, right: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` is not bound")]
    Unbound(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("bad JSON term: {0}")]
    Json(String),
}

/// Ordered list of distinct variable names. Order fixes exponent layout.
#[derive(Clone)]
pub struct VariableSet {
    names: Arc<[String]>,
}

impl VariableSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, PolyError> {
        let mut seen: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if seen.iter().any(|s| s == n) {
                return Err(PolyError::DuplicateVariable(n.to_string()));
            }
            seen.push(n.to_string());
        }
        Ok(VariableSet { names: seen.into() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    fn require(&self, name: &str) -> Result<usize, PolyError> {
        self.index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }
}

impl PartialEq for VariableSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VariableSet {}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(","))
    }
}

impl fmt::Display for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(","))
    }
}

/// Exponent vector, one entry per ring variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Graded lexicographic comparison; `Greater` sorts first in output.
    pub fn grlex_cmp(&self, other: &Monomial) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct ExactPolynomial {
    ring: VariableSet,
    terms: BTreeMap<Monomial, BigInt>,
}

impl ExactPolynomial {
    pub fn zero(ring: &VariableSet) -> Self {
        ExactPolynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant<T: Into<BigInt>>(ring: &VariableSet, c: T) -> Self {
        let c = c.into();
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn one(ring: &VariableSet) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &VariableSet, name: &str) -> Result<Self, PolyError> {
        let idx = ring.require(name)?;
        let mut e = vec![0; ring.len()];
        e[idx] = 1;
        Ok(Self::monomial(ring, e, 1))
    }

    /// Panics if `exponents` has the wrong length.
    pub fn monomial<T: Into<BigInt>>(ring: &VariableSet, exponents: Vec<u32>, c: T) -> Self {
        assert_eq!(exponents.len(), ring.len(), "exponent vector length");
        let mut p = Self::zero(ring);
        p.add_term(Monomial(exponents), c.into());
        p
    }

    pub fn from_terms<I>(ring: &VariableSet, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            assert_eq!(e.len(), ring.len(), "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn ring(&self) -> &VariableSet {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(ExactPolynomial { ring: self.ring.clone(), terms: acc })
    }

    /// self += c * x^exps * other, without intermediate allocation of the product.
    pub(crate) fn add_scaled_product(&mut self, exps: &[u32], c: &BigInt, other: &ExactPolynomial) {
        debug_assert!(self.ring == other.ring);
        for (m, co) in &other.terms {
            let e: Vec<u32> = m.0.iter().zip(exps).map(|(a, b)| a + b).collect();
            self.add_term(Monomial(e), c * co);
        }
    }

    pub fn scale<T: Into<BigInt>>(&self, k: T) -> Self {
        let k = k.into();
        if k.is_zero() {
            return Self::zero(&self.ring);
        }
        ExactPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * &k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = &out * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        out
    }

    pub fn partial_derivative(&self, v: &str) -> Result<Self, PolyError> {
        let idx = self.ring.require(v)?;
        Ok(self.partial_derivative_at(idx))
    }

    pub(crate) fn partial_derivative_at(&self, idx: usize) -> Self {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[idx] -= 1;
            out.add_term(m2, c * BigInt::from(e));
        }
        out
    }

    /// Simultaneous substitution. Unbound variables are carried over to the
    /// target ring by name and must exist there.
    pub fn substitute(&self, bindings: &BTreeMap<String, ExactPolynomial>) -> Result<Self, PolyError> {
        for name in bindings.keys() {
            self.ring.require(name)?;
        }
        let mut target: Option<VariableSet> = None;
        for img in bindings.values() {
            match &target {
                None => target = Some(img.ring.clone()),
                Some(t) if *t != img.ring => {
                    return Err(PolyError::RingMismatch {
                        left: t.to_string(),
                        right: img.ring.to_string(),
                    })
                }
                _ => {}
            }
        }
        let target = target.unwrap_or_else(|| self.ring.clone());
        let mut images = Vec::with_capacity(self.ring.len());
        for name in self.ring.names() {
            let img = match bindings.get(name) {
                Some(p) => p.clone(),
                None => ExactPolynomial::var(&target, name)?,
            };
            images.push(img);
        }
        let mut cache: Vec<Vec<ExactPolynomial>> = images
            .iter()
            .map(|p| vec![ExactPolynomial::one(&target), p.clone()])
            .collect();
        let mut out = Self::zero(&target);
        for (m, c) in &self.terms {
            let mut t = ExactPolynomial::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            for (m2, c2) in t.terms {
                out.add_term(m2, c2);
            }
        }
        Ok(out)
    }

    /// Re-expresses the polynomial over a larger ring containing every
    /// variable of this one.
    pub fn embed(&self, ring: &VariableSet) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .ring
            .names()
            .iter()
            .map(|n| ring.require(n))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(ring);
        for (m, c) in &self.terms {
            let mut e = vec![0; ring.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] = k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    pub fn eval_complex(&self, point: &BTreeMap<String, Complex64>) -> Result<Complex64, PolyError> {
        let vals: Vec<Complex64> = self
            .ring
            .names()
            .iter()
            .map(|n| point.get(n).copied().ok_or_else(|| PolyError::Unbound(n.clone())))
            .collect::<Result<_, _>>()?;
        Ok(self.eval_complex_slice(&vals))
    }

    /// Evaluation with values given in ring order. Panics on length mismatch.
    pub fn eval_complex_slice(&self, vals: &[Complex64]) -> Complex64 {
        assert_eq!(vals.len(), self.ring.len());
        let mut powers: Vec<Vec<Complex64>> = vals.iter().map(|v| vec![Complex64::one(), *v]).collect();
        let mut sum = Complex64::zero();
        for (m, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (i, &e) in m.0.iter().enumerate() {
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw[pw.len() - 1] * vals[i];
                    pw.push(next);
                }
                t *= pw[e as usize];
            }
            sum += t;
        }
        sum
    }

    /// Coefficient list of a polynomial in a one-variable ring, lowest degree first.
    pub fn univariate_coeffs(&self) -> Vec<BigInt> {
        assert_eq!(self.ring.len(), 1, "univariate_coeffs needs a one-variable ring");
        let deg = self.total_degree().unwrap_or(0) as usize;
        let mut v = vec![BigInt::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (m, c) in &self.terms {
            v[m.0[0] as usize] = c.clone();
        }
        v
    }

    pub fn from_univariate(ring: &VariableSet, coeffs: &[BigInt]) -> Self {
        assert_eq!(ring.len(), 1);
        Self::from_terms(ring, coeffs.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())))
    }

    pub fn parse(ring: &VariableSet, src: &str) -> Result<Self, PolyError> {
        parse::parse(ring, src)
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format::to_text(self))
    }
}

impl fmt::Debug for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in Z[{}]", self, self.ring)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:ident) => {
        impl $tr<&ExactPolynomial> for &ExactPolynomial {
            type Output = ExactPolynomial;
            /// Panics on ring mismatch; use the `try_` form to get an error.
            fn $m(self, rhs: &ExactPolynomial) -> ExactPolynomial {
                self.$op(rhs).expect("polynomial ring mismatch")
            }
        }
        impl $tr<ExactPolynomial> for ExactPolynomial {
            type Output = ExactPolynomial;
            fn $m(self, rhs: ExactPolynomial) -> ExactPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl AddAssign<&ExactPolynomial> for ExactPolynomial {
    /// Panics on ring mismatch.
    fn add_assign(&mut self, rhs: &ExactPolynomial) {
        self.check_ring(rhs).expect("polynomial ring mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl Neg for &ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        self.scale(-1)
    }
}

impl Neg for ExactPolynomial {
    type Output = ExactPolynomial;
    fn neg(self) -> ExactPolynomial {
        self.scale(-1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> VariableSet {
        VariableSet::new(&["x", "y", "z"]).unwrap()
    }

    fn p(r: &VariableSet, s: &str) -> ExactPolynomial {
        ExactPolynomial::parse(r, s).unwrap()
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(VariableSet::new(&["x", "x"]).is_err());
    }

    #[test]
    fn additive_inverse() {
        let r = xyz();
        let a = p(&r, "y*z");
        assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn like_terms_merge() {
        let r = xyz();
        assert_eq!(&p(&r, "x^2+y*z") + &p(&r, "y*z"), p(&r, "x^2+2*y*z"));
    }

    #[test]
    fn ring_mismatch_is_error() {
        let a = p(&xyz(), "x");
        let b = p(&VariableSet::new(&["p", "q"]).unwrap(), "p");
        assert!(matches!(a.try_add(&b), Err(PolyError::RingMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn products() {
        let r = xyz();
        assert_eq!(&p(&r, "x") * &p(&r, "y*z"), p(&r, "x*y*z"));
        assert_eq!(&p(&r, "y*z") * &p(&r, "y*z"), p(&r, "y^2*z^2"));
    }

    #[test]
    fn derivatives() {
        let r = xyz();
        assert_eq!(p(&r, "x^3*y").partial_derivative("x").unwrap(), p(&r, "3*x^2*y"));
        assert!(p(&r, "1").partial_derivative("x").unwrap().is_zero());
        let pq = VariableSet::new(&["p", "q"]).unwrap();
        assert_eq!(p(&pq, "p*(1+q)+q").partial_derivative("q").unwrap(), p(&pq, "p+1"));
        assert!(p(&r, "x").partial_derivative("w").is_err());
    }

    #[test]
    fn substitution() {
        let r = xyz();
        let mut b = BTreeMap::new();
        b.insert("x".to_string(), p(&r, "y*z"));
        assert_eq!(p(&r, "x^2").substitute(&b).unwrap(), p(&r, "y^2*z^2"));

        let pq = VariableSet::new(&["p", "q"]).unwrap();
        let unit = VariableSet::new::<&str>(&[]).unwrap();
        let mut b = BTreeMap::new();
        b.insert("p".to_string(), ExactPolynomial::one(&unit));
        b.insert("q".to_string(), ExactPolynomial::one(&unit));
        let v = p(&pq, "p*(1+q)+q").substitute(&b).unwrap();
        assert_eq!(v, ExactPolynomial::constant(&unit, 3));

        let id: BTreeMap<String, ExactPolynomial> =
            ["x", "y", "z"].iter().map(|n| (n.to_string(), p(&r, n))).collect();
        let a = p(&r, "3*x^2*y-z+7");
        assert_eq!(a.substitute(&id).unwrap(), a);
    }

    #[test]
    fn complex_evaluation() {
        let r = xyz();
        let at = |x: f64, y: f64, z: f64| -> BTreeMap<String, Complex64> {
            [("x", x), ("y", y), ("z", z)]
                .iter()
                .map(|(n, v)| (n.to_string(), Complex64::new(*v, 0.0)))
                .collect()
        };
        assert_eq!(p(&r, "y*z").eval_complex(&at(0.0, 2.0, 3.0)).unwrap(), Complex64::new(6.0, 0.0));
        assert_eq!(p(&r, "x^2+y*z").eval_complex(&at(0.0, 1.0, 1.0)).unwrap(), Complex64::new(1.0, 0.0));
        let mut partial = at(1.0, 1.0, 1.0);
        partial.remove("z");
        assert!(matches!(p(&r, "z").eval_complex(&partial), Err(PolyError::Unbound(_))));
    }

    #[test]
    fn pow_and_embed() {
        let r = xyz();
        assert_eq!(p(&r, "x+y").pow(3), p(&r, "x^3+3*x^2*y+3*x*y^2+y^3"));
        let w = VariableSet::new(&["w", "x", "y", "z"]).unwrap();
        assert_eq!(p(&r, "x*y^2").embed(&w).unwrap(), p(&w, "x*y^2"));
    }
}
