//! Computational toolkit for the Erdős–Selfridge function.
//!
//! - [`primes`]: segmented sieve and prime tables.
//! - [`digits`]: base-p digits and the Kummer domination test.
//! - [`estimator`]: exact and log-space ĝ(k) = M_k / R_k, its three-factor
//!   split at √k, and the exact ratio checks at primes k + 1.
//! - [`searcher`]: g(k) by direct scan and by residue wheel.
//! - [`asymptotics`]: the limiting constant of log ĝ(k)·log k / k and the
//!   numeric checks around it.
//! - [`fixtures`]: published values of g(k) too expensive to recompute here.

pub mod asymptotics;
pub mod digits;
pub mod error;
pub mod estimator;
pub mod fixtures;
pub mod primes;
pub mod searcher;
pub mod sum;

pub use digits::{binomial_prime_free, digits, dominates, DigitVector};
pub use error::{Error, Result};
pub use estimator::{
    compute_mk, compute_rk, decompose, ghat, ghat_log, ratio_certificate, EstimateBreakdown, ExactRational,
    RatioCertificate, EXACT_CUTOFF,
};
pub use primes::{primes_up_to, primes_up_to_with, PrimeTable, SieveConfig};
pub use searcher::{allowed_residues, g_naive, g_wheel, search, Method, SearchConfig, SearchResult};
