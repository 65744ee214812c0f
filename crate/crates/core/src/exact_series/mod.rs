//! Exact rational arithmetic and truncated-power-series algebra.
//!
//! Invariants:
//! - scalars are arbitrary-precision rationals in lowest terms with positive
//!   denominator; no value is ever constructed from a float
//! - every series carries its truncation order explicitly; mixed-order
//!   operations truncate to the minimum order
//! - all operations are exact: round-trips (mul/div, exp/log, reversion)
//!   recover their inputs literally, coefficient by coefficient

mod log_series;
mod rational;
mod truncated;

pub use log_series::LogSeries;
pub use rational::{is_canonical, rat, rat_str, ratio, Rational};
pub use truncated::{SeriesError, TruncatedSeries};
