//! Exact-arithmetic core for the quintic mirror computation.
//!
//! Everything here is computed over arbitrary-precision rationals; there is
//! no floating point anywhere. The crate is organized as a pipeline:
//!
//! * [`exact_series`] — truncated power series and log-twisted series.
//! * [`picard_fuchs`] — the period operator and its Frobenius basis.
//! * [`mirror_map`] — the canonical coordinate q(z) and its inverse.
//! * [`yukawa`] — the normalized coupling as an exact q-expansion.
//! * [`instanton`] — rational-curve counts extracted from the coupling.
//! * [`monodromy`] — integer-matrix analysis of the boundary monodromy,
//!   weight filtrations, and good integral bases.
//! * [`toric`] — the crepant resolution of the quotient cone, replayed as a
//!   sequence of fan subdivisions and certified smooth.
//!
//! Invariants:
//! - all arithmetic is exact; every equality test is literal equality
//! - truncation orders are explicit; nothing infers precision
//! - all values are immutable after construction and safe to share

pub mod exact_series;
pub mod instanton;
pub mod mirror_map;
pub mod monodromy;
pub mod picard_fuchs;
pub mod toric;
pub mod yukawa;

pub use exact_series::{LogSeries, Rational, SeriesError, TruncatedSeries};
