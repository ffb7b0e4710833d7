//! The heuristic estimate ĝ(k) = M_k / R_k.
//!
//! `M_k = ∏_{p≤k} p^(⌊log_p k⌋+1)` is the modulus of every prime power that can
//! see a carry from `k`, and `R_k = ∏_{p≤k} ∏_i (p − a_ip)` counts the residues
//! modulo `M_k` whose base-`p` digits dominate those of `k`. One candidate in
//! ĝ(k) survives all of the digit filters, so ĝ(k) estimates g(k).
//!
//! Exact big-integer values are available up to [`EXACT_CUTOFF`]; beyond that
//! only the log-space functions ([`ghat_log`], [`decompose`]) apply.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::digits::{digit_len, digits};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::sum::KahanSum;

/// Largest k for which M_k and R_k are built as exact integers.
pub const EXACT_CUTOFF: u64 = 100_000;

/// A reduced positive fraction of big integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactRational(Ratio<BigUint>);

impl ExactRational {
    pub fn new(numerator: BigUint, denominator: BigUint) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::Domain("zero denominator".into()));
        }
        Ok(ExactRational(Ratio::new(numerator, denominator)))
    }

    pub fn from_integer(n: BigUint) -> Self {
        ExactRational(Ratio::from_integer(n))
    }

    pub fn numerator(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigUint {
        self.0.denom()
    }

    pub fn as_ratio(&self) -> &Ratio<BigUint> {
        &self.0
    }

    /// Natural log, accurate to a few ulps even when both parts overflow f64.
    pub fn ln(&self) -> f64 {
        big_ln(self.numerator()) - big_ln(self.denominator())
    }

    pub fn to_f64(&self) -> f64 {
        self.ln().exp()
    }

    /// ⌈self⌉ as an integer.
    pub fn ceil(&self) -> BigUint {
        self.0.ceil().to_integer()
    }
}

impl From<Ratio<BigUint>> for ExactRational {
    fn from(r: Ratio<BigUint>) -> Self {
        ExactRational(r)
    }
}

impl PartialOrd for ExactRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

/// ln of a big integer; values past f64 range are scaled by a power of two.
pub fn big_ln(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map_or(f64::NAN, f64::ln);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().expect("64-bit value fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Balanced product tree: quasi-linear in the output size.
pub fn product_tree(mut factors: Vec<BigUint>) -> BigUint {
    if factors.is_empty() {
        return BigUint::one();
    }
    while factors.len() > 1 {
        let mut next = Vec::with_capacity(factors.len().div_ceil(2));
        let mut it = factors.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        factors = next;
    }
    factors.pop().unwrap()
}

/// Packs word-sized factors into as few u64 limbs as possible before the tree.
fn product_of_small(factors: impl IntoIterator<Item = u64>) -> BigUint {
    let mut limbs = Vec::new();
    let mut acc: u64 = 1;
    for f in factors {
        match acc.checked_mul(f) {
            Some(v) => acc = v,
            None => {
                limbs.push(BigUint::from(acc));
                acc = f;
            }
        }
    }
    limbs.push(BigUint::from(acc));
    product_tree(limbs)
}

fn check_exact(k: u64, primes: &PrimeTable) -> Result<()> {
    check_log(k, primes)?;
    if k > EXACT_CUTOFF {
        return Err(Error::SizeGuard {
            k,
            cutoff: EXACT_CUTOFF,
        });
    }
    Ok(())
}

fn check_log(k: u64, primes: &PrimeTable) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!("ĝ(k) needs k >= 2, got {k}")));
    }
    primes.ensure_covers(k)
}

/// M_k = ∏_{p≤k} p^(⌊log_p k⌋+1).
pub fn compute_mk(k: u64, primes: &PrimeTable) -> Result<BigUint> {
    check_exact(k, primes)?;
    let factors = primes
        .up_to(k)
        .iter()
        .map(|&p| BigUint::from(p).pow(digit_len(k, p) as u32))
        .collect();
    Ok(product_tree(factors))
}

/// R_k = ∏_{p≤k} ∏_i (p − a_ip).
pub fn compute_rk(k: u64, primes: &PrimeTable) -> Result<BigUint> {
    check_exact(k, primes)?;
    Ok(product_of_small(residue_factors(k, primes.up_to(k))))
}

fn residue_factors(k: u64, primes: &[u64]) -> impl Iterator<Item = u64> + '_ {
    primes.iter().flat_map(move |&p| {
        let d = digits(k, p).expect("table holds primes");
        d.digits().iter().map(|&a| p - a).collect::<Vec<_>>()
    })
}

/// ĝ(k) = M_k / R_k, reduced.
pub fn ghat(k: u64, primes: &PrimeTable) -> Result<ExactRational> {
    let m = compute_mk(k, primes)?;
    let r = compute_rk(k, primes)?;
    ExactRational::new(m, r)
}

/// Σ_{p≤k} Σ_i (ln p − ln(p − a_ip)), ascending p then ascending i.
pub fn ghat_log(k: u64, primes: &PrimeTable) -> Result<f64> {
    check_log(k, primes)?;
    let mut acc = KahanSum::new();
    for &p in primes.up_to(k) {
        add_prime_terms(&mut acc, k, p, usize::MAX);
    }
    Ok(acc.value())
}

#[inline]
fn add_prime_terms(acc: &mut KahanSum, k: u64, p: u64, max_digits: usize) {
    let lp = (p as f64).ln();
    let mut rest = k;
    let mut i = 0;
    loop {
        let a = rest % p;
        if i < max_digits {
            acc.add(lp - ((p - a) as f64).ln());
        }
        rest /= p;
        i += 1;
        if rest == 0 {
            break;
        }
    }
}

/// ĝ(k) split at √k into the three factors used in the asymptotic analysis.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateBreakdown {
    pub k: u64,
    /// M_k, present for k ≤ [`EXACT_CUTOFF`].
    pub m: Option<BigUint>,
    pub r: Option<BigUint>,
    pub ghat: Option<ExactRational>,
    pub log_ghat: f64,
    /// Σ over p ≤ √k of every digit's term.
    pub log_f_small: f64,
    /// Σ over √k < p ≤ k of ln(p/(p − a_1p)).
    pub log_f1: f64,
    /// Σ over √k < p ≤ k of ln(p/(p − a_0p)).
    pub log_f0: f64,
}

impl EstimateBreakdown {
    pub fn parts_sum(&self) -> f64 {
        let mut s = KahanSum::new();
        s.extend([self.log_f_small, self.log_f1, self.log_f0]);
        s.value()
    }
}

pub fn decompose(k: u64, primes: &PrimeTable) -> Result<EstimateBreakdown> {
    if k < 4 {
        return Err(Error::Domain(format!("decompose needs k >= 4, got {k}")));
    }
    check_log(k, primes)?;
    let root = k.sqrt();

    let mut small = KahanSum::new();
    for &p in primes.up_to(root) {
        add_prime_terms(&mut small, k, p, usize::MAX);
    }
    let mut f1 = KahanSum::new();
    let mut f0 = KahanSum::new();
    for &p in primes.in_range(root, k) {
        let lp = (p as f64).ln();
        let a0 = k % p;
        let a1 = k / p;
        debug_assert!(a1 < p, "p > √k has exactly two digits");
        f0.add(lp - ((p - a0) as f64).ln());
        f1.add(lp - ((p - a1) as f64).ln());
    }

    let (m, r, exact) = if k <= EXACT_CUTOFF {
        let m = compute_mk(k, primes)?;
        let r = compute_rk(k, primes)?;
        let g = ExactRational::new(m.clone(), r.clone())?;
        (Some(m), Some(r), Some(g))
    } else {
        (None, None, None)
    };

    Ok(EstimateBreakdown {
        k,
        m,
        r,
        ghat: exact,
        log_ghat: ghat_log(k, primes)?,
        log_f_small: small.value(),
        log_f1: f1.value(),
        log_f0: f0.value(),
    })
}

/// Exact checks of the ĝ(k+1)/ĝ(k) growth argument at a prime k+1.
#[derive(Debug, Clone, PartialEq)]
pub struct RatioCertificate {
    pub k: u64,
    /// M_{k+1} = (k+1)²·M_k.
    pub m_identity_ok: bool,
    /// R_k/R_{k+1} = (1/(k(k+1)))·∏_{p≤k} (p − a_0p)/(p − a_0p − 1).
    pub r_identity_ok: bool,
    /// For every p ≤ k, k+1 in base p is k with its last digit incremented.
    pub digit_increment_ok: bool,
    /// ĝ(k+1)/ĝ(k).
    pub ratio: ExactRational,
    /// ((k+1)/k)·∏_{p≤k} p/(p − 1).
    pub mertens_lower_bound: ExactRational,
    pub bound_ok: bool,
}

impl RatioCertificate {
    pub fn all_ok(&self) -> bool {
        self.m_identity_ok && self.r_identity_ok && self.digit_increment_ok && self.bound_ok
    }
}

pub fn ratio_certificate(k: u64, primes: &PrimeTable) -> Result<RatioCertificate> {
    let q = k
        .checked_add(1)
        .ok_or_else(|| Error::Domain("k + 1 overflows".into()))?;
    check_exact(q, primes)?;
    if k < 2 {
        return Err(Error::Domain(format!(
            "ratio certificate needs an odd prime k + 1, got k = {k}"
        )));
    }
    if !primes.is_prime(q)? {
        return Err(Error::NotPrime(q));
    }
    let small = primes.up_to(k);

    let m_k = compute_mk(k, primes)?;
    let m_q = compute_mk(q, primes)?;
    let m_identity_ok = m_q == BigUint::from(q) * q * &m_k;

    let digit_increment_ok = small.iter().all(|&p| {
        let dk = digits(k, p).expect("prime base");
        let dq = digits(q, p).expect("prime base");
        dk.len() == dq.len()
            && dk.digit(0) + 2 <= p
            && dq.digit(0) == dk.digit(0) + 1
            && dk.digits()[1..] == dq.digits()[1..]
    });

    let r_k = compute_rk(k, primes)?;
    let r_q = compute_rk(q, primes)?;
    // A zero factor p − a_0p − 1 can only appear if the digit check failed.
    let closed_den = product_of_small(small.iter().map(|&p| p - k % p - 1));
    let r_identity_ok = !closed_den.is_zero() && {
        let closed_num = product_of_small(small.iter().map(|&p| p - k % p));
        let lhs = Ratio::new(r_k.clone(), r_q.clone());
        let rhs = Ratio::new(closed_num, closed_den * k * q);
        lhs == rhs
    };

    let ghat_k = Ratio::new(m_k, r_k);
    let ghat_q = Ratio::new(m_q, r_q);
    let ratio = ExactRational(ghat_q / ghat_k);

    let mertens_num = product_of_small(small.iter().copied()) * q;
    let mertens_den = product_of_small(small.iter().map(|&p| p - 1)) * k;
    let mertens_lower_bound = ExactRational::new(mertens_num, mertens_den)?;
    let bound_ok = ratio >= mertens_lower_bound;

    Ok(RatioCertificate {
        k,
        m_identity_ok,
        r_identity_ok,
        digit_increment_ok,
        ratio,
        mertens_lower_bound,
        bound_ok,
    })
}
