//! c = Σ_{a≥1} ln(1 + 1/a)/(a + 1), the growth constant of log ĝ(k) against
//! k / log k.
//!
//! The head of the series is summed term by term in double-double arithmetic
//! (about 31 significant digits); the tail past `A` is enclosed between two
//! closed forms, so `[lower, upper]` is a guaranteed enclosure of c.
//!
//! Coarse tolerances use `1/(a+1) ≤ ln(1+1/a) ≤ 1/a`, giving a tail between
//! `Σ 1/(a+1)²` and `Σ 1/(a(a+1)) = 1/(A+1)`. Below [`REFINED_BELOW`] the
//! log is bracketed one order higher, `x − x²/2 ≤ ln(1+x) ≤ x − x²/2 + x³/3`,
//! and the resulting `Σ_{a>A} 1/a²` is enclosed by its Euler–Maclaurin
//! expansion, whose partial sums alternate around the true value.

use super::dd::Dd;

use crate::error::{Error, Result};

/// Largest head length `constant_c` will sum.
pub const DEFAULT_TERM_CAP: u64 = 10_000_000;
/// Tolerances below this switch to the refined tail enclosure.
pub const REFINED_BELOW: f64 = 1e-10;
/// Per-term rounding allowance for double-double summation.
const ROUNDING_PER_TERM: f64 = 1e-30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantResult {
    /// Midpoint of the enclosure, double-double.
    pub value: Dd,
    pub lower: f64,
    pub upper: f64,
    /// Head length `A`.
    pub terms_used: u64,
}

impl ConstantResult {
    pub fn value_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// `value` to `digits` decimal places.
    pub fn value_string(&self, digits: usize) -> String {
        self.value.to_decimal(digits)
    }
}

/// ln(1 + 1/a) = 2·atanh(1/(2a+1)), summed until the terms vanish in
/// double-double.
pub fn log1p_recip(a: u64) -> Dd {
    let y = Dd::ONE / Dd::from((2 * a + 1) as f64);
    let y2 = y * y;
    let mut power = y;
    let mut sum = y;
    let mut j = 1u32;
    loop {
        power *= y2;
        let term = power / f64::from(2 * j + 1);
        sum += term;
        if term.hi().abs() < 1e-34 * sum.hi() {
            break;
        }
        j += 1;
    }
    sum * 2.0
}

/// ln(1 + 1/a)/(a + 1).
pub fn series_term(a: u64) -> Dd {
    log1p_recip(a) / ((a + 1) as f64)
}

/// Σ_{a=1}^{n} ln(1 + 1/a)/(a + 1).
pub fn partial_sum(n: u64) -> Dd {
    let mut s = Dd::ZERO;
    for a in 1..=n {
        s += series_term(a);
    }
    s
}

/// Enclosure of Σ_{a>A} ln(1+1/a)/(a+1).
fn tail_bounds(a: u64, refined: bool) -> (Dd, Dd) {
    let one = Dd::ONE;
    let af = Dd::from(a as f64);
    let telescoped = one / (af + 1.0);
    if !refined {
        // Σ_{m≥A+2} 1/m² ≥ ∫_{A+2}^∞ dx/x²
        let lower = one / (af + 2.0);
        return (lower, telescoped);
    }
    // Σ_{a>A} 1/a² = ψ'(A+1), enclosed by its asymptotic series.
    let x = af + 1.0;
    let x2 = x * x;
    let x3 = x2 * x;
    let s2_hi = one / x + one / (x2 * 2.0) + one / (x3 * 6.0);
    let s2_lo = s2_hi - one / (x3 * x2 * 30.0);
    // Σ 1/(a²(a+1)) = Σ 1/a² − 1/(A+1)
    let cubic_lo = s2_lo - telescoped;
    let cubic_hi = s2_hi - telescoped;
    // Σ 1/(3a³(a+1)) ≤ (1/3)∫_A^∞ x⁻⁴ dx
    let quartic = one / (af * af * af * 9.0);
    let lower = telescoped - cubic_hi / 2.0;
    let upper = telescoped - cubic_lo / 2.0 + quartic;
    (lower, upper)
}

fn enclosure_width(a: u64, refined: bool) -> f64 {
    let (lo, hi) = tail_bounds(a, refined);
    (hi - lo).hi() + 2.0 * a as f64 * ROUNDING_PER_TERM
}

/// Smallest head length whose enclosure is at most `target` wide.
fn head_length(target: f64, refined: bool, cap: u64) -> Option<u64> {
    let guess = if refined {
        (1.0 / (9.0 * target)).cbrt()
    } else {
        (1.0 / target).sqrt()
    };
    if !guess.is_finite() || guess > cap as f64 {
        return None;
    }
    let mut a = (guess as u64).saturating_sub(2).max(1);
    while enclosure_width(a, refined) > target {
        a += 1;
        if a > cap {
            return None;
        }
    }
    Some(a)
}

pub fn constant_c(tolerance: f64) -> Result<ConstantResult> {
    constant_c_with_cap(tolerance, DEFAULT_TERM_CAP)
}

pub fn constant_c_with_cap(tolerance: f64, cap: u64) -> Result<ConstantResult> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::Domain(format!("tolerance must be positive, got {tolerance}")));
    }
    let refined = tolerance < REFINED_BELOW;
    // Half the budget absorbs outward rounding of the f64 endpoints.
    let target = tolerance / 2.0;
    let a = head_length(target, refined, cap).ok_or(Error::ToleranceUnreachable { tolerance, cap })?;

    let head = partial_sum(a);
    let (tail_lo, tail_hi) = tail_bounds(a, refined);
    let slack = a as f64 * ROUNDING_PER_TERM;
    let lo = head + tail_lo - slack;
    let hi = head + tail_hi + slack;
    let value = (lo + hi) / 2.0;

    Ok(ConstantResult {
        value,
        lower: lo.floor_f64(),
        upper: hi.ceil_f64(),
        terms_used: a,
    })
}
