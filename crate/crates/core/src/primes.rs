//! Prime tables from a segmented sieve of Eratosthenes.

use crate::error::{Error, Result};

pub const DEFAULT_SEGMENT_SIZE: usize = 1 << 20;
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    /// Number of integers marked per segment.
    pub segment_size: usize,
    /// Upper bound on bytes held by the finished table plus one segment.
    pub memory_budget: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_size: DEFAULT_SEGMENT_SIZE,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

impl SieveConfig {
    /// Bytes needed to sieve up to `limit`, from Rosser–Schoenfeld's
    /// π(x) < 1.25506·x/ln x.
    pub fn estimated_bytes(&self, limit: u64) -> u64 {
        let pi_bound = if limit < 17 {
            7.0
        } else {
            let x = limit as f64;
            1.25506 * x / x.ln()
        };
        let table = (pi_bound.ceil() as u64).saturating_mul(8);
        table.saturating_add(self.segment_size as u64)
    }
}

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// π(limit).
    pub fn count(&self) -> usize {
        self.primes.len()
    }

    /// π(x) for x ≤ limit.
    pub fn pi(&self, x: u64) -> usize {
        self.primes.partition_point(|&p| p <= x)
    }

    /// Primes p ≤ x.
    pub fn up_to(&self, x: u64) -> &[u64] {
        &self.primes[..self.pi(x)]
    }

    /// Primes p with lo < p ≤ hi.
    pub fn in_range(&self, lo: u64, hi: u64) -> &[u64] {
        let start = self.pi(lo);
        let end = self.pi(hi).max(start);
        &self.primes[start..end]
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        self.ensure_covers(n)?;
        Ok(self.primes.binary_search(&n).is_ok())
    }

    pub fn ensure_covers(&self, need: u64) -> Result<()> {
        if self.limit < need {
            return Err(Error::PrimeTableTooSmall {
                have: self.limit,
                need,
            });
        }
        Ok(())
    }
}

pub fn primes_up_to(limit: u64) -> Result<PrimeTable> {
    primes_up_to_with(limit, &SieveConfig::default())
}

pub fn primes_up_to_with(limit: u64, config: &SieveConfig) -> Result<PrimeTable> {
    if config.segment_size == 0 {
        return Err(Error::InvalidConfig("segment size must be positive".into()));
    }
    let needed = config.estimated_bytes(limit);
    if needed > config.memory_budget {
        return Err(Error::ResourceLimit {
            limit,
            needed_bytes: needed,
            budget_bytes: config.memory_budget,
        });
    }
    if limit < 2 {
        return Ok(PrimeTable {
            limit,
            primes: Vec::new(),
        });
    }

    let root = num_integer::Roots::sqrt(&limit);
    let base = simple_sieve(root);
    let mut primes = base.clone();

    let seg_len = config.segment_size as u64;
    let mut composite = vec![false; config.segment_size];
    let mut lo = root + 1;
    while lo <= limit {
        let hi = limit.min(lo.saturating_add(seg_len - 1));
        let len = (hi - lo + 1) as usize;
        composite[..len].fill(false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            while m <= hi {
                composite[(m - lo) as usize] = true;
                m += p;
            }
        }
        primes.extend(
            composite[..len]
                .iter()
                .enumerate()
                .filter(|(_, &c)| !c)
                .map(|(i, _)| lo + i as u64),
        );
        if hi == limit {
            break;
        }
        lo = hi + 1;
    }

    Ok(PrimeTable { limit, primes })
}

fn simple_sieve(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}
