//! Complex elementary helpers, Carlson's R_F, and a Runge-Kutta integrator
//! for the sn/cn/dn system.

use num_complex::Complex64;
use thiserror::Error;

pub type C = Complex64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumError {
    #[error("integration blew up near u = {0}")]
    Singular(C),
    #[error("integrator did not settle at u = {0} (step-halving change {1:.2e})")]
    NotConverged(C, f64),
    #[error("steps must be at least 64, got {0}")]
    TooFewSteps(usize),
    #[error("{0}")]
    Domain(String),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
}

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

pub const I: C = C { re: 0.0, im: 1.0 };

/// Principal square root, with negative reals sent to the upper half plane
/// whatever the sign of their zero imaginary part.
pub fn csqrt(z: C) -> C {
    if z.im == 0.0 && z.re < 0.0 {
        C::new(0.0, (-z.re).sqrt())
    } else {
        z.sqrt()
    }
}

/// Principal arctangent; on the cuts i(1, inf) and -i(1, inf) the value is
/// continuous from the right half plane above, from the left below.
pub fn catan(z: C) -> C {
    if z.re == 0.0 && z.im.abs() > 1.0 {
        let y = z.im;
        C::new(y.signum() * std::f64::consts::FRAC_PI_2, (1.0 / y).atanh())
    } else {
        z.atan()
    }
}

/// Carlson's symmetric integral R_F(x, y, z) by duplication.
pub fn carlson_rf(x: C, y: C, z: C) -> Result<C, NumError> {
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let mut a = a0;
    let q = (3.0e-16f64).powf(-1.0 / 6.0) * (a0 - x).norm().max((a0 - y).norm()).max((a0 - z).norm());
    let mut scale = 1.0;
    for _ in 0..200 {
        if scale * q < a.norm() {
            break;
        }
        let (sx, sy, sz) = (csqrt(x), csqrt(y), csqrt(z));
        let lam = sx * sy + sx * sz + sy * sz;
        x = (x + lam) / 4.0;
        y = (y + lam) / 4.0;
        z = (z + lam) / 4.0;
        a = (a + lam) / 4.0;
        scale /= 4.0;
    }
    let xx = (a0 - x0) / a * scale;
    let yy = (a0 - y0) / a * scale;
    let zz = -xx - yy;
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    let poly = c(1.0) - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - e2 * e3 * (3.0 / 44.0);
    let out = poly / csqrt(a);
    if out.re.is_finite() && out.im.is_finite() {
        Ok(out)
    } else {
        Err(NumError::NonFinite("R_F"))
    }
}

/// Incomplete integral of the first kind written as x R_F(1 - x^2, 1 - m x^2, 1).
/// Callers pass x^2 and m x^2 separately so nothing is recovered by squaring
/// a square root.
pub fn ellip_f_parts(x: C, one_minus_x2: C, one_minus_mx2: C) -> Result<C, NumError> {
    Ok(x * carlson_rf(one_minus_x2, one_minus_mx2, c(1.0))?)
}

pub fn ellip_f(x: C, m: C) -> Result<C, NumError> {
    ellip_f_parts(x, c(1.0) - x * x, c(1.0) - m * x * x)
}

const BLOWUP: f64 = 1e8;

fn rhs(y: [C; 3], a2: C, b2: C, u: C) -> [C; 3] {
    let [s, cc, d] = y;
    [u * cc * d, u * a2 * s * d, u * b2 * s * cc]
}

/// sn, cn, dn of the two-parameter system at u, by classical RK4 on the
/// straight segment from 0 to u.
pub fn elliptic_numeric(u: C, a2: C, b2: C, steps: usize) -> Result<(C, C, C), NumError> {
    if steps < 64 {
        return Err(NumError::TooFewSteps(steps));
    }
    let h = 1.0 / steps as f64;
    let mut y = [c(0.0), c(1.0), c(1.0)];
    for _ in 0..steps {
        let k1 = rhs(y, a2, b2, u);
        let y2 = [y[0] + k1[0] * (h / 2.0), y[1] + k1[1] * (h / 2.0), y[2] + k1[2] * (h / 2.0)];
        let k2 = rhs(y2, a2, b2, u);
        let y3 = [y[0] + k2[0] * (h / 2.0), y[1] + k2[1] * (h / 2.0), y[2] + k2[2] * (h / 2.0)];
        let k3 = rhs(y3, a2, b2, u);
        let y4 = [y[0] + k3[0] * h, y[1] + k3[1] * h, y[2] + k3[2] * h];
        let k4 = rhs(y4, a2, b2, u);
        for v in 0..3 {
            y[v] += (k1[v] + k2[v] * 2.0 + k3[v] * 2.0 + k4[v]) * (h / 6.0);
            if !(y[v].re.is_finite() && y[v].im.is_finite()) || y[v].norm() > BLOWUP {
                return Err(NumError::Singular(u));
            }
        }
    }
    Ok((y[0], y[1], y[2]))
}

/// Classical sn, cn, dn with parameter m = k^2. The step count grows with
/// |u|, and the run is repeated at half the step; disagreement beyond
/// `settle` marks the point as unreliable.
#[derive(Clone, Copy, Debug)]
pub struct Jacobi {
    pub min_steps: usize,
    pub steps_per_unit: f64,
    pub settle: f64,
}

impl Default for Jacobi {
    fn default() -> Self {
        Jacobi { min_steps: 64, steps_per_unit: 400.0, settle: 1e-10 }
    }
}

impl Jacobi {
    pub fn eval(&self, u: C, m: C) -> Result<(C, C, C), NumError> {
        let n = self.min_steps.max((u.norm() * self.steps_per_unit).ceil() as usize);
        let coarse = elliptic_numeric(u, c(-1.0), -m, n)?;
        let fine = elliptic_numeric(u, c(-1.0), -m, 2 * n)?;
        let size = 1.0 + fine.0.norm() + fine.1.norm() + fine.2.norm();
        let change = ((coarse.0 - fine.0).norm() + (coarse.1 - fine.1).norm() + (coarse.2 - fine.2).norm()) / size;
        if change > self.settle {
            return Err(NumError::NotConverged(u, change));
        }
        Ok(fine)
    }
}
