//! Truncated exponential-type power series with polynomial coefficients,
//! the Jacobi functions as formal series, and the checks built on them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactpoly::{ExactPolynomial, PolyError, VariableSet};
use crate::grammar::{Grammar, OpKind, OperatorSpec};
use crate::report::{ExactCheck, VerificationReport};
use crate::triangles::{extract, ArrayName};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("reciprocal needs constant term 1, found {0}")]
    NonUnit(String),
}

/// `coeffs[m]` holds m! times the coefficient of u^m, so every series used
/// here has integer data. Products are binomial convolutions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalPowerSeries {
    ring: VariableSet,
    coeffs: Vec<ExactPolynomial>,
}

fn binom(m: usize, k: usize) -> BigInt {
    binomial(BigInt::from(m), BigInt::from(k))
}

impl FormalPowerSeries {
    pub fn zero(ring: &VariableSet, order: usize) -> Self {
        FormalPowerSeries { ring: ring.clone(), coeffs: vec![ExactPolynomial::zero(ring); order + 1] }
    }

    pub fn constant(c: ExactPolynomial, order: usize) -> Self {
        let mut s = Self::zero(c.ring(), order);
        s.coeffs[0] = c;
        s
    }

    /// From EGF numerators; missing tail entries are zero.
    pub fn from_numerators(ring: &VariableSet, order: usize, nums: Vec<ExactPolynomial>) -> Self {
        let mut s = Self::zero(ring, order);
        for (m, c) in nums.into_iter().enumerate().take(order + 1) {
            s.coeffs[m] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn ring(&self) -> &VariableSet {
        &self.ring
    }

    /// m! times the coefficient of u^m.
    pub fn numerator(&self, m: usize) -> &ExactPolynomial {
        &self.coeffs[m]
    }

    pub fn numerators(&self) -> &[ExactPolynomial] {
        &self.coeffs
    }

    fn same_shape(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch(self.order(), other.order()));
        }
        if self.ring != other.ring {
            return Err(PolyError::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            }
            .into());
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(FormalPowerSeries { ring: self.ring.clone(), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_shape(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(FormalPowerSeries { ring: self.ring.clone(), coeffs })
    }

    /// Numerator m of the product.
    fn product_numerator(&self, other: &Self, m: usize) -> ExactPolynomial {
        let mut acc = ExactPolynomial::zero(&self.ring);
        for k in 0..=m {
            if self.coeffs[k].is_zero() || other.coeffs[m - k].is_zero() {
                continue;
            }
            acc += &(&self.coeffs[k] * &other.coeffs[m - k]).scale(binom(m, k));
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.same_shape(other)?;
        let coeffs = (0..=self.order()).map(|m| self.product_numerator(other, m)).collect();
        Ok(FormalPowerSeries { ring: self.ring.clone(), coeffs })
    }

    pub fn scale(&self, c: &ExactPolynomial) -> Result<Self, SeriesError> {
        if c.ring() != &self.ring {
            return Err(PolyError::RingMismatch {
                left: self.ring.to_string(),
                right: c.ring().to_string(),
            }
            .into());
        }
        Ok(FormalPowerSeries {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        })
    }

    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let one = ExactPolynomial::one(&self.ring);
        if self.coeffs[0] != one {
            return Err(SeriesError::NonUnit(self.coeffs[0].to_string()));
        }
        let mut h = Self::zero(&self.ring, self.order());
        h.coeffs[0] = one;
        for m in 1..=self.order() {
            let mut acc = ExactPolynomial::zero(&self.ring);
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[k] * &h.coeffs[m - k]).scale(binom(m, k));
            }
            h.coeffs[m] = -acc;
        }
        Ok(h)
    }

    /// Applies the same substitution to every coefficient.
    pub fn substitute(&self, bindings: &BTreeMap<String, ExactPolynomial>) -> Result<Self, SeriesError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.substitute(bindings))
            .collect::<Result<Vec<_>, _>>()?;
        let ring = bindings.values().next().map(|p| p.ring().clone()).unwrap_or_else(|| self.ring.clone());
        Ok(FormalPowerSeries { ring, coeffs })
    }

    /// Truncated sum at u, coefficient variables bound to `point` in ring order.
    pub fn eval_at(&self, u: num_complex::Complex64, point: &[num_complex::Complex64]) -> num_complex::Complex64 {
        let mut sum = num_complex::Complex64::zero();
        let mut pow_over_fact = num_complex::Complex64::one();
        for (m, c) in self.coeffs.iter().enumerate() {
            if m > 0 {
                pow_over_fact = pow_over_fact * u / m as f64;
            }
            if !c.is_zero() {
                sum += c.eval_complex_slice(point) * pow_over_fact;
            }
        }
        sum
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order(),
            "ring": self.ring.names(),
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct JacobiSeries {
    pub sn: FormalPowerSeries,
    pub cn: FormalPowerSeries,
    pub dn: FormalPowerSeries,
}

/// sn' = cn dn, cn' = alpha sn dn, dn' = beta sn cn from (0, 1, 1),
/// integrated one coefficient at a time.
fn integrate_system(ring: &VariableSet, alpha: &ExactPolynomial, beta: &ExactPolynomial, order: usize) -> JacobiSeries {
    let mut sn = FormalPowerSeries::zero(ring, order);
    let mut cn = FormalPowerSeries::zero(ring, order);
    let mut dn = FormalPowerSeries::zero(ring, order);
    cn.coeffs[0] = ExactPolynomial::one(ring);
    dn.coeffs[0] = ExactPolynomial::one(ring);
    for m in 0..order {
        let s_next = cn.product_numerator(&dn, m);
        let c_next = alpha * &sn.product_numerator(&dn, m);
        let d_next = beta * &sn.product_numerator(&cn, m);
        sn.coeffs[m + 1] = s_next;
        cn.coeffs[m + 1] = c_next;
        dn.coeffs[m + 1] = d_next;
    }
    JacobiSeries { sn, cn, dn }
}

pub fn two_param_ring() -> VariableSet {
    VariableSet::new(&["a2", "b2"]).expect("distinct names")
}

pub fn classical_ring() -> VariableSet {
    VariableSet::new(&["k2"]).expect("single name")
}

/// sn, cn, dn over Z[a2, b2].
pub fn jacobi_two_param(order: usize) -> JacobiSeries {
    let ring = two_param_ring();
    let a2 = ExactPolynomial::var(&ring, "a2").expect("a2");
    let b2 = ExactPolynomial::var(&ring, "b2").expect("b2");
    integrate_system(&ring, &a2, &b2, order)
}

/// sn, cn, dn over Z[k2] (a2 = -1, b2 = -k2).
pub fn jacobi_classical(order: usize) -> JacobiSeries {
    let ring = classical_ring();
    let alpha = ExactPolynomial::constant(&ring, -1);
    let beta = -ExactPolynomial::var(&ring, "k2").expect("k2");
    integrate_system(&ring, &alpha, &beta, order)
}

/// J[n][i] = J_{n,2i}: coefficient of k^{2i} in J_n(k^2), for n = 0..=order.
/// J_0 = 1 by the constant-term convention for cn.
pub fn j_coefficients(order: usize) -> Vec<Vec<BigInt>> {
    let js = jacobi_classical(order);
    (0..=order)
        .map(|n| {
            if n == 0 {
                return vec![BigInt::one()];
            }
            let source = if n % 2 == 1 { &js.sn } else { &js.cn };
            let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
            let poly = source.numerator(n).scale(sign);
            let mut v = poly.univariate_coeffs();
            while v.last().is_some_and(|c| c.is_zero()) {
                v.pop();
            }
            v
        })
        .collect()
}

/// J_{n,2i} with out-of-range indices read as 0.
pub fn j_at(j: &[Vec<BigInt>], n: i64, i: i64) -> BigInt {
    if n < 0 || i < 0 {
        return BigInt::zero();
    }
    j.get(n as usize)
        .and_then(|row| row.get(i as usize))
        .cloned()
        .unwrap_or_default()
}

/// Right-hand side of Dumont's generating function as a series over Z[x,y,z].
pub fn dumont_gf_rhs(order: usize) -> Result<FormalPowerSeries, SeriesError> {
    let js = jacobi_two_param(order);
    let xyz = VariableSet::new(&["x", "y", "z"])?;
    let p = |s: &str| ExactPolynomial::parse(&xyz, s);
    let mut bind = BTreeMap::new();
    bind.insert("a2".to_string(), p("y^2-x^2")?);
    bind.insert("b2".to_string(), p("z^2-x^2")?);
    let sn = js.sn.substitute(&bind)?;
    let cn = js.cn.substitute(&bind)?;
    let dn = js.dn.substitute(&bind)?;
    let numer = sn.scale(&p("y*z")?)?.add(&cn.mul(&dn)?.scale(&p("x")?)?)?;
    let one = FormalPowerSeries::constant(ExactPolynomial::one(&xyz), order);
    let denom = one.sub(&sn.mul(&sn)?.scale(&p("x^2")?)?)?;
    numer.mul(&denom.reciprocal()?)
}

/// Coefficient-by-coefficient comparison of the generating function with D^n(x).
pub fn verify_dumont_gf(order: usize) -> VerificationReport {
    let mut check = ExactCheck::new("dumont-gf");
    let rhs = match dumont_gf_rhs(order) {
        Ok(s) => s,
        Err(e) => return VerificationReport::error("dumont-gf", &format!("n<={order}"), e.to_string()),
    };
    let op = OperatorSpec::from_text(OpKind::D, Grammar::schett(), "x").expect("built-in operator");
    let lhs = op.sequence(order).expect("built-in operator");
    for (n, d) in lhs.iter().enumerate() {
        let r = rhs.numerator(n);
        if d != r {
            check.fail(n, 0, 0, d.to_string(), format!("{r} (difference {})", d - r));
        } else {
            check.eq(n, 0, 0, d, r);
        }
    }
    check.finish(format!("0<=n<={order}"))
}

/// Both convolution identities for the J-coefficients and the two
/// intermediate t/s convolutions, for 0 <= n <= n_max.
pub fn verify_convolution(n_max: usize) -> VerificationReport {
    let mut check = ExactCheck::new("j-convolution");
    let top = 2 * n_max + 2;
    let j = j_coefficients(top);
    let t = extract(ArrayName::T, top).expect("t triangle");
    let s = extract(ArrayName::S, top).expect("s triangle");
    let c = |m: i64, k: i64| -> BigInt {
        if k < 0 || k > m {
            BigInt::zero()
        } else {
            binom(m as usize, k as usize)
        }
    };
    for n in 0..=n_max as i64 {
        for i in 0..=n {
            let mut first = BigInt::zero();
            let mut second = BigInt::zero();
            for k in 0..=n {
                for jj in 0..=i {
                    first += c(2 * n, 2 * k) * j_at(&j, 2 * k, k - jj) * j_at(&j, 2 * n - 2 * k, i - jj);
                    second += c(2 * n + 1, 2 * k + 1) * j_at(&j, 2 * k + 1, k - jj) * j_at(&j, 2 * n - 2 * k, i - jj);
                }
            }
            check.eq(2 * n as usize + 1, (n - i) as usize, 1, &j_at(&j, 2 * n + 1, n - i), &first);
            check.eq(2 * n as usize + 2, (n - i) as usize, 2, &j_at(&j, 2 * n + 2, n - i), &second);

            let mut t_odd = BigInt::zero();
            let mut t_even = BigInt::zero();
            for k in 0..=n {
                for jj in 0..=i {
                    t_odd += c(2 * n, 2 * k) * t.at(2 * k as usize, jj, 0) * s.at((2 * n - 2 * k) as usize, i - jj, 0);
                    t_even += c(2 * n + 1, 2 * k + 1)
                        * t.at(2 * k as usize + 1, jj, 0)
                        * s.at((2 * n - 2 * k) as usize, i - jj, 0);
                }
            }
            check.eq(2 * n as usize + 1, i as usize, 3, &t.at(2 * n as usize + 1, i, 0), &t_odd);
            check.eq(2 * n as usize + 2, i as usize + 1, 4, &t.at(2 * n as usize + 2, i + 1, 0), &t_even);
        }
    }
    check.note("j index in counterexamples: 1,2 = J identities; 3,4 = t convolutions");
    check.finish(format!("0<=n<={n_max}"))
}
