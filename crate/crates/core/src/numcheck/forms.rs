//! Closed-form generating functions, as displayed and in corrected readings.

use super::elliptic::{c, catan, csqrt, ellip_f_parts, Jacobi, NumError, C, I};

fn rs(v: f64) -> C {
    csqrt(c(v))
}

fn finite(v: C, what: &'static str) -> Result<C, NumError> {
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(NumError::NonFinite(what))
    }
}

/// h_{p,q}: F at sqrt(q(1-p)/(q-p)) with parameter (q-p)/(1-p).
pub fn h_shift(p: f64, q: f64) -> Result<C, NumError> {
    let r = q * (1.0 - p) / (q - p);
    ellip_f_parts(rs(r), c(1.0 - r), c(1.0 - q))
}

/// l_{p,q}: F at q sqrt((1-p)/(q^2-p)) with parameter (q^2-p)/(1-p).
pub fn ell_shift(p: f64, q: f64) -> Result<C, NumError> {
    let r = (1.0 - p) / (q * q - p);
    ellip_f_parts(q * rs(r), c(1.0 - q * q * r), c(1.0 - q * q))
}

/// k_{p,q} = sqrt((p-1)/(q-p)) atan(sqrt(q(p-1)/(q-p))).
pub fn k_shift(p: f64, q: f64) -> C {
    rs((p - 1.0) / (q - p)) * catan(rs(q * (p - 1.0) / (q - p)))
}

/// (x_+, x_-) = ((p-1)x + k, (p-1)x - k).
pub fn x_pm(x: C, p: f64, q: f64) -> (C, C) {
    let k = k_shift(p, q);
    (x * (p - 1.0) + k, x * (p - 1.0) - k)
}

pub type Pair = (C, C);

// s

fn k_profile(jac: &Jacobi, big_p: f64, x: C) -> Result<C, NumError> {
    let (_, cn, _) = jac.eval(rs(big_p) * x, c(1.0 - 1.0 / big_p))?;
    Ok(rs(1.0 - big_p) * cn)
}

pub fn s_stated(x: C, p: f64, q: f64, jac: &Jacobi) -> Result<Pair, NumError> {
    let y = (1.0 - q) / (1.0 - p);
    let h = h_shift(p, q)?;
    let big_x = rs(p - 1.0) * x;
    let minus = k_profile(jac, y, big_x - h)?;
    let plus = k_profile(jac, y, big_x + h)?;
    let odd = rs(p - 1.0) / (2.0 * rs(q)) * (minus - plus);
    let even = rs(p - 1.0) / (2.0 * rs(p)) * (minus + plus);
    Ok((odd, even))
}

// a

fn a_even_profile(x: C, big_p: f64) -> C {
    let w = x * rs(big_p * (1.0 - big_p));
    csqrt((1.0 - big_p) / (w.cos() * w.cos() - big_p))
}

fn a_odd_profile(x: C, big_p: f64) -> C {
    let w = x * rs(big_p * (1.0 - big_p));
    (1.0 - big_p) * (2.0 * w).sin() / (2.0 * rs(big_p) * (w.cos() * w.cos() - big_p).powf(1.5))
}

pub fn a_stated(x: C, p: f64, q: f64, _: &Jacobi) -> Result<Pair, NumError> {
    let y = (1.0 - q) / (1.0 - p);
    let big_p = 1.0 - 1.0 / y;
    let (xp, xm) = x_pm(x, p, q);
    let hm = a_odd_profile(xm * y, big_p);
    let gp = a_even_profile(xp * y, big_p);
    let odd = 0.5 * rs((p - q) / (p * q)) * (hm - gp);
    let even = 0.5 * rs((p - q) / p) * (hm + gp);
    Ok((finite(odd, "AO")?, finite(even, "AE")?))
}

/// The even profile on both sides.
pub fn a_corrected(x: C, p: f64, q: f64, _: &Jacobi) -> Result<Pair, NumError> {
    let y = (1.0 - q) / (1.0 - p);
    let big_p = 1.0 - 1.0 / y;
    let (xp, xm) = x_pm(x, p, q);
    let gm = a_even_profile(xm * y, big_p);
    let gp = a_even_profile(xp * y, big_p);
    let odd = 0.5 * rs((p - q) / (p * q)) * (gm - gp);
    let even = 0.5 * rs((p - q) / p) * (gm + gp);
    Ok((finite(odd, "AO")?, finite(even, "AE")?))
}

// c

fn c_profile(x: C, big_p: f64) -> C {
    let w = (x * rs(big_p - 1.0)).cos();
    (1.0 - big_p) / (big_p * w * w + 1.0 - big_p)
}

pub fn c_stated(x: C, p: f64, q: f64, _: &Jacobi) -> Result<Pair, NumError> {
    let y = (1.0 - q) / (1.0 - p);
    let (xp, xm) = x_pm(x, p, q);
    let (gm, gp) = (c_profile(xm, y), c_profile(xp, y));
    let odd = (p - 1.0) / (2.0 * p * rs(q)) * (gm - gp);
    let even = c((p - 1.0) / (2.0 * p)) * (gm + gp);
    Ok((finite(odd, "CO")?, finite(even, "CE")?))
}

// d

fn d_profile_stated(x: C, big_p: f64) -> C {
    let w = x * rs(big_p - 1.0);
    w.sinh() / (1.0 - big_p / (big_p - 1.0) * w.cosh() * w.cosh())
}

pub fn d_stated(x: C, p: f64, q: f64, _: &Jacobi) -> Result<Pair, NumError> {
    let y = (1.0 - q) / (1.0 - p);
    let (xp, xm) = x_pm(x, p, q);
    let (gm, gp) = (d_profile_stated(xm, y), d_profile_stated(xp, y));
    let odd = rs(p - 1.0) / (2.0 * rs(p)) * (gm + gp);
    let even = rs(p - 1.0) / (2.0 * rs(p * q)) * (gm - gp);
    Ok((finite(odd, "DO")?, finite(even, "DE")?))
}

fn d_profile(x: C, big_p: f64) -> C {
    let w = x * rs(1.0 - big_p);
    (1.0 - big_p) * w.sinh() / (big_p * w.cosh() * w.cosh() + 1.0 - big_p)
}

/// Profile (1-P) sinh(X r)/(P cosh^2(X r) + 1 - P), r = sqrt(1-P), and an
/// extra sqrt(1-q) in the prefactors.
pub fn d_corrected(x: C, p: f64, q: f64, _: &Jacobi) -> Result<Pair, NumError> {
    let y = (1.0 - q) / (1.0 - p);
    let (xp, xm) = x_pm(x, p, q);
    let (gm, gp) = (d_profile(xm, y), d_profile(xp, y));
    let f = rs((p - 1.0) * (1.0 - q));
    let odd = f / (2.0 * rs(p)) * (gm + gp);
    let even = f / (2.0 * rs(p * q)) * (gm - gp);
    Ok((finite(odd, "DO")?, finite(even, "DE")?))
}

// t

pub fn t_stated(x: C, p: f64, q: f64, jac: &Jacobi) -> Result<Pair, NumError> {
    let l = ell_shift(p, q)?;
    let lp = rs((1.0 - q * q) / (1.0 - p)) * l;
    let m = c((p - q * q) / (1.0 - q * q));
    let slope = rs(q * q - 1.0);
    let (sn, _, _) = jac.eval(-slope * x + lp, m)?;
    let (_, _, dn) = jac.eval(-slope * x - lp, m)?;
    let odd = (q - 1.0) / rs(p * (p - 1.0)) * sn;
    let even = rs((1.0 - q) / (1.0 + q)) * dn;
    Ok((odd, even))
}

fn t_side(jac: &Jacobi, big_p: f64, x: C, sign: f64) -> Result<C, NumError> {
    let (sn, _, dn) = jac.eval(rs(big_p) * x, c(1.0 - 1.0 / big_p))?;
    Ok(-I * rs(1.0 - 1.0 / big_p) * sn + sign * dn)
}

/// Two-sided form from the q = 0 boundary profile, shifted by l.
pub fn t_corrected(x: C, p: f64, q: f64, jac: &Jacobi) -> Result<Pair, NumError> {
    let l = ell_shift(p, q)?;
    let big_p = (1.0 - q * q) / (1.0 - p);
    let big_x = rs(p - 1.0) * x;
    let f = rs((1.0 - q) / (1.0 + q));
    let w = t_side(jac, big_p, big_x - l, -1.0)?;
    let wt = t_side(jac, big_p, big_x + l, 1.0)?;
    Ok((f / (2.0 * rs(p)) * (w + wt), f / 2.0 * (wt - w)))
}

// r

fn r_side_stated(jac: &Jacobi, big_p: f64, x: C, sign: f64) -> Result<C, NumError> {
    let (sn, cn, dn) = jac.eval(-rs(big_p) * x, c(1.0 - 1.0 / big_p))?;
    Ok(-2.0 * I * rs(big_p) * dn * sn + sign * (-2.0 * big_p * cn * cn + 1.0 - 2.0 / big_p))
}

pub fn r_stated(x: C, p: f64, q: f64, jac: &Jacobi) -> Result<Pair, NumError> {
    let l = ell_shift(p, q)?;
    let big_p = (1.0 - q * q) / (1.0 - p);
    let big_x = rs(p - 1.0) * x;
    let u = r_side_stated(jac, big_p, big_x - l, 1.0)?;
    let ut = r_side_stated(jac, big_p, big_x + l, -1.0)?;
    let f = (1.0 - q) / (2.0 * (1.0 + q));
    Ok((rs(p) * f * (u + ut), f * (ut - u)))
}

fn r_side(jac: &Jacobi, big_p: f64, x: C, sign: f64) -> Result<C, NumError> {
    let pp = 1.0 - 1.0 / big_p;
    let (sn, cn, dn) = jac.eval(rs(big_p) * x, c(pp))?;
    Ok(-2.0 * I * rs(pp) * dn * sn + sign * (2.0 * pp * cn * cn - 2.0 * pp + 1.0))
}

pub fn r_corrected(x: C, p: f64, q: f64, jac: &Jacobi) -> Result<Pair, NumError> {
    let l = ell_shift(p, q)?;
    let big_p = (1.0 - q * q) / (1.0 - p);
    let big_x = rs(p - 1.0) * x;
    let f = (1.0 - q) / (1.0 + q);
    let w = r_side(jac, big_p, big_x - l, -1.0)?;
    let wt = r_side(jac, big_p, big_x + l, 1.0)?;
    Ok((f / (2.0 * rs(p)) * (w + wt), f / 2.0 * (wt - w)))
}

// one-parameter specializations; `v` is the free parameter

pub fn c_p0(x: C, q: f64) -> C {
    let z = 2.0 * rs(q) * x;
    z.cosh() + z.sinh() / rs(q)
}

pub fn c_p1(x: C, q: f64) -> C {
    let x2 = x * x;
    (x2 * (q - 1.0) + 2.0 * x + 1.0) / ((x2 * (1.0 - q) - 2.0 * x + 1.0) * (x2 * (1.0 - q) + 2.0 * x + 1.0))
}

pub fn c_q0(x: C, p: f64) -> C {
    let w = x * rs(p * (1.0 - p));
    let den = w.cos() * w.cos() - p;
    (1.0 - p) * rs(1.0 - p) * (2.0 * w).sin() / (rs(p) * den * den) + (1.0 - p) / den
}

pub fn c_q1(x: C, p: f64) -> C {
    (p - 1.0) / (p - (2.0 * x * (p - 1.0)).exp())
}

pub fn d_q0(x: C, p: f64) -> C {
    let pr = rs(p * (p - 1.0));
    let (ch, sh) = ((x * pr).cosh(), (x * pr).sinh());
    let den = (p - 1.0) * ch * ch - p * sh * sh;
    (p - 1.0) * ch * (ch * ch - 2.0 + p) / (den * den) + pr * sh / (p - ch * ch)
}

pub fn d_p1(x: C, q: f64) -> C {
    let x2 = x * x;
    let x3 = x2 * x;
    let sq = rs(q);
    let num = (x2 * (q - 1.0) + 2.0 * x - 1.0)
        * (x2 * (1.0 - q) + 2.0 * x + 1.0)
        * (x3 * (q - 1.0) * (q - 1.0) + x2 * (q - 1.0) - x * (q + 1.0) - 1.0);
    let a = x2 * (q - 1.0) - 2.0 * x * sq + 1.0;
    let b = x2 * (q - 1.0) + 2.0 * x * sq + 1.0;
    num / (a * a * b * b)
}

pub fn d_q1(x: C, p: f64) -> C {
    (1.0 - p) * ((1.0 - p) * x).exp() / (1.0 - p * (2.0 * (1.0 - p) * x).exp())
}

fn t_h(x: C, p: f64) -> C {
    let r = rs(p - 1.0);
    r / (r * (x * r).cosh() - rs(p) * (x * r).sinh())
}

pub fn t_q1(x: C, p: f64) -> C {
    let (a, b) = (t_h(x, p), t_h(-x, p));
    0.5 * (a + b) + (a - b) / (2.0 * rs(p))
}

pub fn t_p1(x: C, q: f64) -> C {
    let r = rs(q * q - 1.0);
    (q * q - 1.0 + r * (x * r).sinh()) / ((1.0 + q) * (q - (x * r).cosh()))
}

const BINOMIAL_TERMS: usize = 80;

fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0f64; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n - k + 1) as f64 / k as f64;
    }
    row
}

/// Sum over n of x^{2n} sum_k C(2n+1, 2k+e) q^k plus x^{2n-1} sum_k C(2n, 2k+1-e) q^k.
fn binomial_sum(x: C, q: f64, even_shift: usize) -> C {
    let mut total = C::new(0.0, 0.0);
    for n in 0..BINOMIAL_TERMS {
        let odd_row = binomial_row(2 * n + 1);
        let inner: f64 = (0..=n).filter(|k| 2 * k + even_shift <= 2 * n + 1).map(|k| odd_row[2 * k + even_shift] * q.powi(k as i32)).sum();
        total += inner * x.powi(2 * n as i32);
        if n >= 1 {
            let even_row = binomial_row(2 * n);
            let lead = 1 - even_shift;
            let inner: f64 = (0..=n).filter(|k| 2 * k + lead <= 2 * n).map(|k| even_row[2 * k + lead] * q.powi(k as i32)).sum();
            total += inner * x.powi(2 * n as i32 - 1);
        }
    }
    total
}

pub fn c_binomial(x: C, q: f64) -> C {
    binomial_sum(x, q, 0)
}

pub fn d_binomial(x: C, q: f64) -> C {
    binomial_sum(x, q, 1)
}
