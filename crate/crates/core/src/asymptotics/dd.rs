//! Double-double arithmetic: an unevaluated sum `hi + lo` with |lo| ≤ ulp(hi)/2,
//! good for about 31 significant decimal digits.
//!
//! Built from the error-free transformations TwoSum and TwoProd (via fused
//! multiply-add), following Joldes, Muller and Popescu (2017).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

/// Requires |a| ≥ |b|.
#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }

    pub fn lo(self) -> f64 {
        self.lo
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn recip(self) -> Self {
        Dd::ONE / self
    }

    /// Largest f64 not above the value.
    pub fn floor_f64(self) -> f64 {
        if self.lo < 0.0 {
            self.hi.next_down()
        } else {
            self.hi
        }
    }

    /// Smallest f64 not below the value.
    pub fn ceil_f64(self) -> f64 {
        if self.lo > 0.0 {
            self.hi.next_up()
        } else {
            self.hi
        }
    }

    /// Decimal expansion truncated to `places` digits after the point.
    pub fn to_decimal(self, places: usize) -> String {
        let mut out = String::new();
        let mut x = self;
        if x < Dd::ZERO {
            out.push('-');
            x = -x;
        }
        let mut int = x.hi.floor();
        let mut frac = x - int;
        if frac < Dd::ZERO {
            int -= 1.0;
            frac += Dd::ONE;
        }
        out.push_str(&format!("{int:.0}"));
        if places > 0 {
            out.push('.');
        }
        for _ in 0..places {
            frac = frac * 10.0;
            let mut d = frac.hi.floor();
            let mut rest = frac - d;
            if rest < Dd::ZERO {
                d -= 1.0;
                rest += Dd::ONE;
            } else if rest >= Dd::ONE {
                d += 1.0;
                rest -= Dd::ONE;
            }
            out.push(char::from(b'0' + d as u8));
            frac = rest;
        }
        out
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }
}

impl From<u64> for Dd {
    fn from(n: u64) -> Self {
        let hi = n as f64;
        Dd::new(hi, (n as i128 - hi as i128) as f64)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, y: Dd) -> Dd {
        let (sh, sl) = two_sum(self.hi, y.hi);
        let (th, tl) = two_sum(self.lo, y.lo);
        let (sh, sl) = quick_two_sum(sh, sl + th);
        let (hi, lo) = quick_two_sum(sh, sl + tl);
        Dd { hi, lo }
    }
}

impl Add<f64> for Dd {
    type Output = Dd;
    fn add(self, y: f64) -> Dd {
        let (sh, sl) = two_sum(self.hi, y);
        let (hi, lo) = quick_two_sum(sh, sl + self.lo);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, y: Dd) -> Dd {
        self + (-y)
    }
}

impl Sub<f64> for Dd {
    type Output = Dd;
    fn sub(self, y: f64) -> Dd {
        self + (-y)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, y: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, y.hi);
        let e = e + (self.hi * y.lo + self.lo * y.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Mul<f64> for Dd {
    type Output = Dd;
    fn mul(self, y: f64) -> Dd {
        let (p, e) = two_prod(self.hi, y);
        let (hi, lo) = quick_two_sum(p, e + self.lo * y);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    /// Long division with three quotient digits.
    fn div(self, y: Dd) -> Dd {
        let q1 = self.hi / y.hi;
        let r = self - y * q1;
        let q2 = r.hi / y.hi;
        let r = r - y * q2;
        let q3 = r.hi / y.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo } + q3
    }
}

impl Div<f64> for Dd {
    type Output = Dd;
    fn div(self, y: f64) -> Dd {
        self / Dd::from(y)
    }
}

impl AddAssign for Dd {
    fn add_assign(&mut self, y: Dd) {
        *self = *self + y;
    }
}

impl SubAssign for Dd {
    fn sub_assign(&mut self, y: Dd) {
        *self = *self - y;
    }
}

impl MulAssign for Dd {
    fn mul_assign(&mut self, y: Dd) {
        *self = *self * y;
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi)? {
            Ordering::Equal => self.lo.partial_cmp(&other.lo),
            ord => Some(ord),
        }
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(f.precision().unwrap_or(30)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_third() {
        let third = Dd::ONE / Dd::from(3.0);
        let err = third * 3.0 - 1.0;
        assert!(err.abs().to_f64() < 1e-32);
        assert_eq!(third.to_decimal(31), "0.3333333333333333333333333333333");
    }

    #[test]
    fn sqrt_two_squared() {
        // √2 to 32 digits
        let r = Dd::new(1.4142135623730951, -9.667293313452913e-17);
        assert!((r * r - 2.0).abs().to_f64() < 1e-31);
    }

    #[test]
    fn cancellation() {
        let big = Dd::from(1e16) + 1.0;
        let back = big - 1e16;
        assert_eq!(back.to_f64(), 1.0);
        let x = Dd::from(u64::MAX);
        assert_eq!(x.hi() as i128 + x.lo() as i128, u64::MAX as i128);
    }

    #[test]
    fn ordering_and_rounding() {
        let a = Dd::new(1.0, 1e-20);
        let b = Dd::new(1.0, -1e-20);
        assert!(b < a);
        assert_eq!(a.floor_f64(), 1.0);
        assert_eq!(a.ceil_f64(), 1.0f64.next_up());
        assert_eq!(b.floor_f64(), 1.0f64.next_down());
        assert_eq!(format!("{:.3}", Dd::from(2.5)), "2.500");
        assert_eq!(Dd::from(-0.25).to_decimal(2), "-0.25");
    }
}
