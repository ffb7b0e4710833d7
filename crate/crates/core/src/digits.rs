//! Base-p digit expansions and the Kummer/Lucas domination test.
//!
//! `p ∤ C(n, k)` exactly when adding `k` and `n − k` in base `p` produces no
//! carry, i.e. when every base-`p` digit of `k` is at most the matching digit
//! of `n`.

use std::fmt;

use crate::error::{Error, Result};
use crate::primes::PrimeTable;

/// Base-`p` digits of a value, least significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    value: u64,
    base: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// ⌊log_p value⌋ + 1, or 1 for zero.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Digit at position `i`, zero past the top.
    pub fn digit(&self, i: usize) -> u64 {
        self.digits.get(i).copied().unwrap_or(0)
    }

    /// Σ digits[i]·p^i, in u128 so a corrupted vector can't wrap silently.
    pub fn reassemble(&self) -> u128 {
        self.digits
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * self.base as u128 + d as u128)
    }

    /// Whether each digit of `self` is ≥ the matching digit of `other`.
    pub fn dominates(&self, other: &DigitVector) -> bool {
        debug_assert_eq!(self.base, other.base);
        (0..other.len()).all(|i| self.digit(i) >= other.digit(i))
    }
}

impl fmt::Display for DigitVector {
    /// Digits most significant first, comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.digits.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

pub fn digits(k: u64, p: u64) -> Result<DigitVector> {
    if p < 2 {
        return Err(Error::InvalidBase(p));
    }
    let mut out = Vec::with_capacity(64);
    let mut rest = k;
    loop {
        out.push(rest % p);
        rest /= p;
        if rest == 0 {
            break;
        }
    }
    Ok(DigitVector {
        value: k,
        base: p,
        digits: out,
    })
}

/// ⌊log_p k⌋ + 1 for k ≥ 1 (1 for k = 0).
pub fn digit_len(k: u64, p: u64) -> usize {
    debug_assert!(p >= 2);
    let mut len = 1;
    let mut rest = k / p;
    while rest > 0 {
        len += 1;
        rest /= p;
    }
    len
}

/// `p ∤ C(n, k)`: every base-`p` digit of `k` is ≤ the digit of `n`.
pub fn dominates(n: u64, k: u64, p: u64) -> Result<bool> {
    if p < 2 {
        return Err(Error::InvalidBase(p));
    }
    if n < k {
        return Err(Error::Domain(format!("dominates needs n >= k, got n={n}, k={k}")));
    }
    Ok(dominates_unchecked(n, k, p))
}

/// [`dominates`] without argument checks; the search inner loop.
#[inline]
pub fn dominates_unchecked(mut n: u64, mut k: u64, p: u64) -> bool {
    if p == 2 {
        return k & !n == 0;
    }
    while k > 0 {
        if k % p > n % p {
            return false;
        }
        k /= p;
        n /= p;
    }
    true
}

/// Whether C(n, k) has no prime factor ≤ `limit`.
pub fn binomial_prime_free(n: u64, k: u64, limit: u64, primes: &PrimeTable) -> Result<bool> {
    if n < k {
        return Err(Error::Domain(format!(
            "binomial_prime_free needs n >= k, got n={n}, k={k}"
        )));
    }
    primes.ensure_covers(limit)?;
    Ok(primes
        .up_to(limit)
        .iter()
        .all(|&p| dominates_unchecked(n, k, p)))
}
