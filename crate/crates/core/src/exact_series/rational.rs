//! The scalar type: arbitrary-precision exact rationals.
//!
//! Invariants:
//! - stored in lowest terms with positive denominator (the backing type
//!   maintains this for every arithmetic result)
//! - construction from floats is never provided

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

/// Rational from a machine integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from a decimal string `"n"` or `"n/d"`.
///
/// Panics on malformed input; intended for literals in fixtures and tests.
pub fn rat_str(s: &str) -> Rational {
    s.parse::<Rational>()
        .unwrap_or_else(|e| panic!("bad rational literal {s:?}: {e}"))
}

/// Canonicality audit: lowest terms, positive denominator.
///
/// The backing arithmetic preserves this on its own; the audit exists so
/// tests can verify that no operation sneaks in a non-canonical value.
pub fn is_canonical(r: &Rational) -> bool {
    let (n, d) = (r.numer(), r.denom());
    if d.sign() != Sign::Plus {
        return false;
    }
    if n.is_zero() {
        return d.is_one();
    }
    n.gcd(d).is_one()
}
