use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid base {0}: digit expansions need a base of at least 2")]
    InvalidBase(u64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("sieve limit {limit} needs ~{needed_bytes} bytes, over the {budget_bytes}-byte budget; segment the range")]
    ResourceLimit {
        limit: u64,
        needed_bytes: u64,
        budget_bytes: u64,
    },

    #[error("prime table covers primes up to {have}, but {need} is required")]
    PrimeTableTooSmall { have: u64, need: u64 },

    #[error("k = {k} exceeds the exact-arithmetic cutoff {cutoff}; use the log-space path")]
    SizeGuard { k: u64, cutoff: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("no n in ({lo}, {bound}] has C(n, {k}) free of primes <= {k}; raise the scan bound")]
    NotFound { k: u64, lo: u64, bound: u64 },

    #[error("tolerance {tolerance:e} needs more than {cap} series terms")]
    ToleranceUnreachable { tolerance: f64, cap: u64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

impl Error {
    /// Errors a caller can recover from by widening a bound.
    pub fn is_recoverable(&self) -> bool {
        matches!(self, Error::NotFound { .. } | Error::ToleranceUnreachable { .. })
    }
}
