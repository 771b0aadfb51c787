//! Precision infrastructure: exact rationals, an arbitrary-precision binary
//! float, the adaptive precision driver and a few special-function scalars.

pub mod adaptive;
pub mod bigfloat;
pub mod gamma;

pub use adaptive::{AdaptiveReal, Evaluation, PrecisionPolicy};
pub use bigfloat::BigFloat;
pub use gamma::{gen_binomial, gen_binomial_exact, log_gamma, log_gamma_ext};

/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;
