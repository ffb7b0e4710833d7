//! Numeric confirmation of the integral identity behind the constant:
//!
//! ∫_1^{1+1/a} ln((a+1)(u−1)/u) du = −ln(1 + 1/a),
//!
//! with antiderivative F(u) = (u−1)·ln((a+1)(u−1)/u) − ln u.

use crate::error::{Error, Result};

/// Step for the central difference in [`antiderivative_check`].
pub const DIFF_STEP: f64 = 1e-6;

/// ln((a+1)(u−1)/u).
pub fn integrand(a: u64, u: f64) -> f64 {
    let a1 = (a + 1) as f64;
    a1.ln() + (u - 1.0).ln() - u.ln()
}

pub fn antiderivative(a: u64, u: f64) -> f64 {
    (u - 1.0) * integrand(a, u) - u.ln()
}

/// |(F(u+h) − F(u−h))/2h − integrand(u)| with h = [`DIFF_STEP`].
pub fn antiderivative_check(a: u64, u: f64) -> Result<f64> {
    if a < 1 {
        return Err(Error::Domain("antiderivative check needs a >= 1".into()));
    }
    let top = 1.0 + 1.0 / a as f64;
    if !(u - DIFF_STEP > 1.0 && u <= top) {
        return Err(Error::Domain(format!(
            "u = {u} must lie in (1 + h, 1 + 1/a] for a = {a}"
        )));
    }
    let h = DIFF_STEP;
    let diff = (antiderivative(a, u + h) - antiderivative(a, u - h)) / (2.0 * h);
    Ok((diff - integrand(a, u)).abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralCheck {
    pub quadrature: f64,
    pub closed_form: f64,
}

impl IntegralCheck {
    pub fn error(&self) -> f64 {
        (self.quadrature - self.closed_form).abs()
    }
}

/// Quadrature of ∫_1^{1+1/a} ln((a+1)(u−1)/u) du against −ln(1+1/a).
///
/// With v = u − 1 the integrand is ln(a+1) + ln v − ln(1+v). On [0, δ] the
/// singular ln v is integrated exactly and only the smooth remainder is
/// sampled; [δ, 1/a] is handled by adaptive Simpson.
pub fn integral_identity_check(a: u64) -> Result<IntegralCheck> {
    if a < 1 {
        return Err(Error::Domain("integral check needs a >= 1".into()));
    }
    let width = 1.0 / a as f64;
    let delta = width / 64.0;
    let la1 = ((a + 1) as f64).ln();

    let singular = delta * delta.ln() - delta;
    let smooth = adaptive_simpson(&|v: f64| la1 - v.ln_1p(), 0.0, delta, 1e-16);
    let regular = adaptive_simpson(&|v: f64| la1 + v.ln() - v.ln_1p(), delta, width, 1e-15);

    Ok(IntegralCheck {
        quadrature: singular + smooth + regular,
        closed_form: -width.ln_1p(),
    })
}

/// Adaptive Simpson with Richardson extrapolation.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    refine(f, a, b, fa, fm, fb, whole, tol, 48)
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}
