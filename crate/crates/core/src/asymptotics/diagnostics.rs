//! Prime-sum diagnostics around the asymptotic of log ĝ(k).

use num_integer::Roots;
use rayon::prelude::*;

use crate::digits::digit_len;
use crate::error::{Error, Result};
use crate::estimator::{decompose, ghat_log};
use crate::primes::PrimeTable;
use crate::sum::KahanSum;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Σ_{p≤x} ⌊log_p x⌋·ln p, i.e. Chebyshev's ψ(x).
pub fn chebyshev_weighted_sum(x: u64, primes: &PrimeTable) -> Result<f64> {
    if x < 2 {
        return Err(Error::Domain(format!("need x >= 2, got {x}")));
    }
    primes.ensure_covers(x)?;
    let mut acc = KahanSum::new();
    for &p in primes.up_to(x) {
        let e = digit_len(x, p) - 1;
        acc.add(e as f64 * (p as f64).ln());
    }
    Ok(acc.value())
}

/// ∏_{p≤x} p/(p−1), accumulated in log space.
pub fn mertens_product(x: u64, primes: &PrimeTable) -> Result<f64> {
    if x < 2 {
        return Err(Error::Domain(format!("need x >= 2, got {x}")));
    }
    primes.ensure_covers(x)?;
    let s: KahanSum = primes
        .up_to(x)
        .iter()
        .map(|&p| (1.0 / (p - 1) as f64).ln_1p())
        .collect();
    Ok(s.value().exp())
}

/// The a_0p factor of ĝ(k) regrouped by a = a_1p = ⌊k/p⌋ and cut at
/// a = (ln k)².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lemma64Pieces {
    pub k: u64,
    /// Σ over a ≥ (ln k)² of ln p − ln((a+1)p − k).
    pub piece_tail: f64,
    /// Σ over a < (ln k)² of ln p.
    pub piece_logp: f64,
    /// −Σ over a < (ln k)² of ln((a+1)p − k).
    pub piece_neg: f64,
    /// The a_0p log-factor as computed by the estimator.
    pub f0_direct: f64,
}

impl Lemma64Pieces {
    pub fn total(&self) -> f64 {
        let mut s = KahanSum::new();
        s.extend([self.piece_tail, self.piece_logp, self.piece_neg]);
        s.value()
    }

    pub fn relative_gap(&self) -> f64 {
        (self.total() - self.f0_direct).abs() / self.f0_direct.abs().max(1.0)
    }
}

pub fn lemma64_pieces(k: u64, primes: &PrimeTable) -> Result<Lemma64Pieces> {
    if k < 100 {
        return Err(Error::Domain(format!("piece split needs k >= 100, got {k}")));
    }
    primes.ensure_covers(k)?;
    let cutoff = (k as f64).ln().powi(2);
    let root = k.sqrt();

    let mut tail = KahanSum::new();
    let mut logp = KahanSum::new();
    let mut neg = KahanSum::new();
    for &p in primes.in_range(root, k) {
        let a = k / p;
        // p − a_0p = p − (k − a·p)
        let gap = (a + 1) * p - k;
        let lp = (p as f64).ln();
        let lg = (gap as f64).ln();
        if a as f64 >= cutoff {
            tail.add(lp - lg);
        } else {
            logp.add(lp);
            neg.add(-lg);
        }
    }

    Ok(Lemma64Pieces {
        k,
        piece_tail: tail.value(),
        piece_logp: logp.value(),
        piece_neg: neg.value(),
        f0_direct: decompose(k, primes)?.log_f0,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub k: u64,
    pub log_ghat: f64,
    /// log ĝ(k)·ln k / k.
    pub normalized: f64,
}

/// One row per input k, in input order.
pub fn convergence_table(k_values: &[u64], primes: &PrimeTable) -> Result<Vec<ConvergenceRow>> {
    if let Some(&bad) = k_values.iter().find(|&&k| k < 3) {
        return Err(Error::Domain(format!("convergence rows need k >= 3, got {bad}")));
    }
    k_values
        .par_iter()
        .map(|&k| {
            let log_ghat = ghat_log(k, primes)?;
            let kf = k as f64;
            Ok(ConvergenceRow {
                k,
                log_ghat,
                normalized: log_ghat * kf.ln() / kf,
            })
        })
        .collect()
}

/// `points` integers spaced evenly in log between `kmin` and `kmax`,
/// deduplicated, ascending.
pub fn log_spaced(kmin: u64, kmax: u64, points: usize) -> Result<Vec<u64>> {
    if kmin < 1 || kmax < kmin || points < 1 {
        return Err(Error::Domain(format!(
            "need 1 <= kmin <= kmax and points >= 1, got {kmin}, {kmax}, {points}"
        )));
    }
    if points == 1 || kmin == kmax {
        return Ok(vec![kmin]);
    }
    let (lo, hi) = ((kmin as f64).ln(), (kmax as f64).ln());
    let mut out: Vec<u64> = (0..points)
        .map(|i| {
            let t = i as f64 / (points - 1) as f64;
            ((lo + t * (hi - lo)).exp().round() as u64).clamp(kmin, kmax)
        })
        .collect();
    out.dedup();
    Ok(out)
}
