//! The Erdős–Selfridge function g(k): the least n > k + 1 such that C(n, k)
//! has no prime factor ≤ k.
//!
//! Both search methods share one scanner. The naive method walks every
//! integer and tests primes in ascending order. The wheel method first folds
//! the digit filters of the smallest primes into a modulus `W`, so only
//! residues that already pass those filters are ever visited, then tests the
//! remaining primes most-likely-to-fail first.
//!
//! Work is split into blocks of consecutive wheel periods and handed out in
//! rounds. A round only finishes once every block in it has either been
//! scanned or lies wholly above the best hit so far, so the minimum over a
//! round is the true g whatever the scheduling.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::digits::{digits, dominates_unchecked, DigitVector};
use crate::error::{Error, Result};
use crate::estimator::{ghat, ghat_log, EXACT_CUTOFF};
use crate::primes::PrimeTable;

pub const DEFAULT_WHEEL_BUDGET: u64 = 1 << 62;
/// Cap on materialized wheel residues (8 bytes each).
pub const DEFAULT_RESIDUE_BUDGET: usize = 1 << 20;
/// Target number of candidates per work block.
const BLOCK_CANDIDATES: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Naive,
    Wheel,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Method::Naive),
            "wheel" => Ok(Method::Wheel),
            other => Err(Error::InvalidConfig(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub k: u64,
    /// Largest n examined before giving up.
    pub scan_bound: u64,
    pub method: Method,
    /// Largest wheel modulus the wheel method may build.
    pub wheel_budget: u64,
    pub residue_budget: usize,
    pub workers: usize,
}

impl SearchConfig {
    pub fn new(k: u64, scan_bound: u64, method: Method) -> Self {
        SearchConfig {
            k,
            scan_bound,
            method,
            wheel_budget: DEFAULT_WHEEL_BUDGET,
            residue_budget: DEFAULT_RESIDUE_BUDGET,
            workers: 1,
        }
    }

    /// Config with `scan_bound = 10·⌈ĝ(k)⌉`, saturating at `u64::MAX`.
    pub fn with_default_bound(k: u64, method: Method, primes: &PrimeTable) -> Result<Self> {
        Ok(SearchConfig::new(k, default_scan_bound(k, primes)?, method))
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if self.scan_bound <= self.k.saturating_add(1) {
            return Err(Error::InvalidConfig(format!(
                "scan bound {} must exceed k + 1 = {}",
                self.scan_bound,
                self.k + 1
            )));
        }
        if self.wheel_budget < 2 {
            return Err(Error::InvalidConfig("wheel budget must be at least 2".into()));
        }
        if self.residue_budget < 1 {
            return Err(Error::InvalidConfig("residue budget must be positive".into()));
        }
        if self.workers < 1 {
            return Err(Error::InvalidConfig("need at least one worker".into()));
        }
        Ok(())
    }
}

pub fn default_scan_bound(k: u64, primes: &PrimeTable) -> Result<u64> {
    let est = if k <= EXACT_CUTOFF {
        ghat(k, primes)?.ceil().to_u64()
    } else {
        let e = ghat_log(k, primes)?.exp().ceil();
        (e < u64::MAX as f64).then_some(e as u64)
    };
    Ok(est.map_or(u64::MAX, |g| g.saturating_mul(10)))
}

/// Digit vectors of k and g in one base, showing `p ∤ C(g, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationWitness {
    pub p: u64,
    pub k_digits: DigitVector,
    pub g_digits: DigitVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub k: u64,
    pub g: u64,
    /// Candidates in (k+1, g] a sequential scan of the same method visits.
    pub candidates_tested: u64,
    pub certificate: Vec<DominationWitness>,
    pub elapsed: Duration,
}

impl SearchResult {
    /// Re-checks every witness digit by digit.
    pub fn verify(&self) -> bool {
        self.g > self.k + 1
            && self.certificate.iter().all(|w| {
                w.k_digits.value() == self.k
                    && w.g_digits.value() == self.g
                    && w.g_digits.dominates(&w.k_digits)
            })
    }
}

/// Residues modulo p^(⌊log_p k⌋+1) whose base-p digits dominate those of k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueSet {
    pub p: u64,
    pub modulus: u64,
    /// Ascending.
    pub residues: Vec<u64>,
}

pub fn allowed_residues(k: u64, p: u64) -> Result<ResidueSet> {
    let kd = digits(k, p)?;
    let mut residues = vec![0u64];
    let mut modulus = 1u64;
    // Most significant position first keeps the list ascending.
    for &a in kd.digits().iter().rev() {
        residues = residues
            .iter()
            .flat_map(|&r| (a..p).map(move |d| r * p + d))
            .collect();
        modulus *= p;
    }
    Ok(ResidueSet {
        p,
        modulus,
        residues,
    })
}

/// Digit filters of the smallest primes folded into one modulus by CRT.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wheel {
    pub modulus: u64,
    pub residues: Vec<u64>,
    /// Folded primes, ascending.
    pub primes: Vec<u64>,
}

impl Wheel {
    fn trivial() -> Self {
        Wheel {
            modulus: 1,
            residues: vec![0],
            primes: Vec::new(),
        }
    }

    /// Fraction of integers that survive the folded filters.
    pub fn density(&self) -> f64 {
        self.residues.len() as f64 / self.modulus as f64
    }

    /// Number of wheel candidates in [0, x].
    pub fn count_up_to(&self, x: u64) -> u64 {
        let periods = x / self.modulus;
        let rem = x % self.modulus;
        periods * self.residues.len() as u64 + self.residues.partition_point(|&r| r <= rem) as u64
    }
}

/// Folds primes ≤ k in ascending order while the modulus stays within
/// `wheel_budget` and the residue list within `residue_budget`.
pub fn build_wheel(k: u64, primes: &PrimeTable, wheel_budget: u64, residue_budget: usize) -> Result<Wheel> {
    primes.ensure_covers(k)?;
    let mut wheel = Wheel::trivial();
    for &p in primes.up_to(k) {
        let set = allowed_residues(k, p)?;
        let fits = wheel
            .modulus
            .checked_mul(set.modulus)
            .is_some_and(|m| m <= wheel_budget)
            && wheel
                .residues
                .len()
                .checked_mul(set.residues.len())
                .is_some_and(|n| n <= residue_budget);
        if !fits {
            break;
        }
        wheel = fold(&wheel, &set);
    }
    Ok(wheel)
}

fn fold(wheel: &Wheel, set: &ResidueSet) -> Wheel {
    let w = wheel.modulus as u128;
    let m = set.modulus as u128;
    let w_inv = mod_inverse(wheel.modulus % set.modulus, set.modulus) as u128;
    let mut residues = Vec::with_capacity(wheel.residues.len() * set.residues.len());
    for &r1 in &wheel.residues {
        for &r2 in &set.residues {
            // x = r1 + W·t with t ≡ (r2 − r1)·W⁻¹ (mod m)
            let diff = (r2 as u128 + m - r1 as u128 % m) % m;
            let t = diff * w_inv % m;
            residues.push((r1 as u128 + w * t) as u64);
        }
    }
    residues.sort_unstable();
    let mut folded = wheel.primes.clone();
    folded.push(set.p);
    Wheel {
        modulus: wheel.modulus * set.modulus,
        residues,
        primes: folded,
    }
}

fn mod_inverse(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "wheel moduli are coprime");
    old_s.rem_euclid(m as i128) as u64
}

/// Remaining primes, most likely to reject first: descending a_0p/p, ties
/// to the larger p.
fn rejection_order(k: u64, primes: &[u64]) -> Vec<u64> {
    let mut out = primes.to_vec();
    out.sort_by(|&p, &q| {
        let lhs = (k % p) as u128 * q as u128;
        let rhs = (k % q) as u128 * p as u128;
        match rhs.cmp(&lhs) {
            Ordering::Equal => q.cmp(&p),
            ord => ord,
        }
    });
    out
}

pub fn g_naive(config: &SearchConfig, primes: &PrimeTable) -> Result<SearchResult> {
    if config.method != Method::Naive {
        return Err(Error::InvalidConfig("g_naive needs method = naive".into()));
    }
    config.validate()?;
    primes.ensure_covers(config.k)?;
    let filters = primes.up_to(config.k).to_vec();
    scan(config, primes, Wheel::trivial(), filters)
}

pub fn g_wheel(config: &SearchConfig, primes: &PrimeTable) -> Result<SearchResult> {
    if config.method != Method::Wheel {
        return Err(Error::InvalidConfig("g_wheel needs method = wheel".into()));
    }
    config.validate()?;
    let wheel = build_wheel(config.k, primes, config.wheel_budget, config.residue_budget)?;
    let rest = &primes.up_to(config.k)[wheel.primes.len()..];
    let filters = rejection_order(config.k, rest);
    scan(config, primes, wheel, filters)
}

pub fn search(config: &SearchConfig, primes: &PrimeTable) -> Result<SearchResult> {
    match config.method {
        Method::Naive => g_naive(config, primes),
        Method::Wheel => g_wheel(config, primes),
    }
}

fn scan(config: &SearchConfig, primes: &PrimeTable, wheel: Wheel, filters: Vec<u64>) -> Result<SearchResult> {
    let start = Instant::now();
    let k = config.k;
    let lo = k + 1; // exclusive
    let hi = config.scan_bound;

    let per_period = wheel.residues.len() as u64;
    let periods_per_block = (BLOCK_CANDIDATES / per_period).max(1);
    let first_period = lo / wheel.modulus;
    let last_period = hi / wheel.modulus;
    let total_blocks = (last_period - first_period) / periods_per_block + 1;

    let scan_block = |b: u64, best: &AtomicU64| -> Option<u64> {
        let p0 = first_period + b * periods_per_block;
        let p1 = (p0 + periods_per_block).min(last_period + 1);
        for period in p0..p1 {
            let base = period as u128 * wheel.modulus as u128;
            if base > best.load(AtomicOrdering::Relaxed) as u128 {
                return None;
            }
            for &r in &wheel.residues {
                let n = base + r as u128;
                if n <= lo as u128 {
                    continue;
                }
                if n > hi as u128 {
                    return None;
                }
                let n = n as u64;
                if filters.iter().all(|&p| dominates_unchecked(n, k, p)) {
                    best.fetch_min(n, AtomicOrdering::Relaxed);
                    return Some(n);
                }
            }
        }
        None
    };

    let best = AtomicU64::new(u64::MAX);
    let found = if config.workers == 1 {
        (0..total_blocks).find_map(|b| scan_block(b, &best))
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
        let round = config.workers as u64 * 4;
        pool.install(|| {
            let mut b0 = 0;
            while b0 < total_blocks {
                let b1 = (b0 + round).min(total_blocks);
                let hit = (b0..b1).into_par_iter().filter_map(|b| scan_block(b, &best)).min();
                if hit.is_some() {
                    return hit;
                }
                b0 = b1;
            }
            None
        })
    };

    let g = found.ok_or(Error::NotFound { k, lo, bound: hi })?;
    let certificate = primes
        .up_to(k)
        .iter()
        .map(|&p| {
            Ok(DominationWitness {
                p,
                k_digits: digits(k, p)?,
                g_digits: digits(g, p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SearchResult {
        k,
        g,
        candidates_tested: wheel.count_up_to(g) - wheel.count_up_to(lo),
        certificate,
        elapsed: start.elapsed(),
    })
}
