//! Floating-point evaluation and finite-difference checks of the symbolic calculus.

use num_complex::Complex64;
use thiserror::Error;

use crate::poly::{ComplexPoint, Poly, Var};

/// Absolute tolerance floor used by [`check_wirtinger`].
pub const ABS_FLOOR: f64 = 1e-9;
/// Default central-difference step.
pub const DEFAULT_STEP: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericError {
    #[error("non-finite value in finite difference")]
    NonFiniteResult,
    #[error("step must be positive and finite, got {0}")]
    InvalidStep(f64),
    #[error("point coordinates must be finite")]
    NonFinitePoint,
}

/// `(x0, x1, x2, x3)` with `z1 = x0 + i x1`, `z2 = x2 + i x3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealPoint {
    pub x: [f64; 4],
}

impl RealPoint {
    pub fn new(x: [f64; 4]) -> Result<Self, NumericError> {
        if x.iter().all(|v| v.is_finite()) {
            Ok(Self { x })
        } else {
            Err(NumericError::NonFinitePoint)
        }
    }

    fn shifted(&self, k: usize, d: f64) -> RealPoint {
        let mut x = self.x;
        x[k] += d;
        RealPoint { x }
    }
}

pub fn eval_at(p: &Poly, at: &RealPoint) -> Complex64 {
    p.eval(&ComplexPoint::from_real(at.x))
}

fn check_step(h: f64) -> Result<(), NumericError> {
    if h > 0.0 && h.is_finite() {
        Ok(())
    } else {
        Err(NumericError::InvalidStep(h))
    }
}

fn finite(z: Complex64) -> Result<Complex64, NumericError> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(NumericError::NonFiniteResult)
    }
}

/// Central difference `(p(x + h e_k) - p(x - h e_k)) / 2h`.
pub fn fd_partial(p: &Poly, k: usize, at: &RealPoint, h: f64) -> Result<Complex64, NumericError> {
    check_step(h)?;
    let plus = eval_at(p, &at.shifted(k, h));
    let minus = eval_at(p, &at.shifted(k, -h));
    finite((plus - minus) / (2.0 * h))
}

/// Central second difference `(p(x + h) - 2p(x) + p(x - h)) / h^2` along `x_k`.
pub fn fd_second(p: &Poly, k: usize, at: &RealPoint, h: f64) -> Result<Complex64, NumericError> {
    check_step(h)?;
    let plus = eval_at(p, &at.shifted(k, h));
    let mid = eval_at(p, at);
    let minus = eval_at(p, &at.shifted(k, -h));
    finite((plus - mid * 2.0 + minus) / (h * h))
}

/// `Σ_k ∂²p/∂x_k²` by finite differences.
pub fn fd_laplacian(p: &Poly, at: &RealPoint, h: f64) -> Result<Complex64, NumericError> {
    (0..4).try_fold(Complex64::new(0.0, 0.0), |acc, k| Ok(acc + fd_second(p, k, at, h)?))
}

/// `∂²/∂x0² - ∂²/∂x1² - ∂²/∂x2² - ∂²/∂x3²` by finite differences.
pub fn fd_dalembert(p: &Poly, at: &RealPoint, h: f64) -> Result<Complex64, NumericError> {
    let mut acc = fd_second(p, 0, at, h)?;
    for k in 1..4 {
        acc -= fd_second(p, k, at, h)?;
    }
    Ok(acc)
}

/// Wirtinger derivative from real partials: `∂_v = ½(∂x_a ∓ i ∂x_b)`.
pub fn fd_wirtinger(p: &Poly, v: Var, at: &RealPoint, h: f64) -> Result<Complex64, NumericError> {
    let (a, b, sign) = match v {
        Var::Z1 => (0, 1, -1.0),
        Var::ZB1 => (0, 1, 1.0),
        Var::Z2 => (2, 3, -1.0),
        Var::ZB2 => (2, 3, 1.0),
    };
    let da = fd_partial(p, a, at, h)?;
    let db = fd_partial(p, b, at, h)?;
    Ok((da + Complex64::new(0.0, sign) * db) * 0.5)
}

/// `|a - b| <= max(tol * max(|a|, |b|), ABS_FLOOR)`.
pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= (tol * a.norm().max(b.norm())).max(ABS_FLOOR)
}

/// True iff all four symbolic Wirtinger derivatives match finite differences at `at`.
pub fn check_wirtinger(p: &Poly, at: &RealPoint, h: f64, tol: f64) -> bool {
    Var::ALL.iter().all(|&v| {
        let exact = eval_at(&p.wirtinger(v), at);
        fd_wirtinger(p, v, at, h).is_ok_and(|approx| close(exact, approx, tol))
    })
}
