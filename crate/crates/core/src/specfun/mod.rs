//! High-precision special functions and truncated-series arithmetic.

pub mod bernoulli;
pub mod gamma;
pub mod mellin;
pub mod polylog;
pub mod quad;
pub mod series;
pub mod zeta;

pub use bernoulli::bernoulli_even;
pub use gamma::{digamma_positive_integer, gamma, gamma_real};
pub use mellin::cahen_mellin_check;
pub use polylog::{polylog, polylog_via_identity};
pub use series::{gen_binom, series_exp, series_mul, TruncatedSeries};
pub use zeta::{hurwitz_tail, riemann_zeta, riemann_zeta_jet, riemann_zeta_real};
