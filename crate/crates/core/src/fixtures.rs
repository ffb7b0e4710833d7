//! Published values of g(k) for k = 376, 377.
//!
//! Each took one to two weeks of wall time to find, so they are carried here
//! as reference data only.

pub const G_376: &str = "7778804220120654420924631668091";
pub const G_377: &str = "5973303871796437264595936954237";

use num_bigint::BigUint;

pub fn published() -> [(u64, &'static str); 2] {
    [(376, G_376), (377, G_377)]
}

/// Published values parsed as big integers.
pub fn published_values() -> Vec<(u64, BigUint)> {
    published()
        .into_iter()
        .map(|(k, g)| (k, g.parse().expect("fixtures are decimal")))
        .collect()
}
