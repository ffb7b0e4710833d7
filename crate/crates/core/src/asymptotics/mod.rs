//! The limit log ĝ(k)·ln k / k → c and the checks that support it.

pub mod calculus;
pub mod constant;
pub mod dd;
pub mod diagnostics;

pub use calculus::{antiderivative_check, integral_identity_check, IntegralCheck};
pub use constant::{constant_c, constant_c_with_cap, ConstantResult};
pub use dd::Dd;
pub use diagnostics::{
    chebyshev_weighted_sum, convergence_table, lemma64_pieces, log_spaced, mertens_product, ConvergenceRow,
    Lemma64Pieces, EULER_GAMMA,
};
