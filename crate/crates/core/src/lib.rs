//! Exact and asymptotic counting of partitions into values of an integer
//! polynomial.
//!
//! The exact side is a big-integer knapsack over the parts `f(1), f(2), ...`.
//! The asymptotic side evaluates the circle-method main term: the
//! Matsumoto-Weng zeta attached to the roots of `f - a_0`, the generating-log
//! expansion `W`, the saddle point `(X, Y)` and the correction coefficients
//! `w_q`. Both sides share one explicitly threaded [`PrecisionConfig`].

pub mod arcs;
pub mod error;
pub mod exact;
pub mod mwzeta;
pub mod phi;
pub mod poly;
pub mod precision;
pub mod saddle;
pub mod specfun;

pub use error::{Error, Result};
pub use precision::PrecisionConfig;
