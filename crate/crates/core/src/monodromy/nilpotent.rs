//! Logarithms and exponentials of unipotent matrices.
//!
//! For a unipotent M (all eigenvalues 1), X = M − I is nilpotent and both
//! series terminate: log M = Σ_{j≥1} (−1)^{j+1} X^j / j and exp N likewise,
//! so everything stays exact.

use std::fmt;

use num::One;

use crate::exact_series::{rat, ratio, Rational};
use crate::monodromy::matrix::SquareMatrix;

/// Errors from the unipotent logarithm.
#[derive(Debug, Clone, PartialEq)]
pub enum NilpotentError {
    /// (M − I)^n did not vanish, so M has an eigenvalue other than 1 and
    /// the logarithm series does not terminate.
    NotUnipotent { power: usize },
}

impl fmt::Display for NilpotentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilpotentError::NotUnipotent { power } => {
                write!(f, "matrix is not unipotent: (M - I)^{power} is nonzero")
            }
        }
    }
}

impl std::error::Error for NilpotentError {}

/// The terminating logarithm of a unipotent matrix.
pub fn nilpotent_log(m: &SquareMatrix) -> Result<SquareMatrix, NilpotentError> {
    let n = m.size();
    let x = m.sub(&SquareMatrix::identity(n));
    if !x.pow(n).is_zero() {
        return Err(NilpotentError::NotUnipotent { power: n });
    }
    let mut out = SquareMatrix::zero(n);
    let mut power = SquareMatrix::identity(n);
    for j in 1..n as i64 {
        power = power.mul(&x);
        let sign = if j % 2 == 1 { 1 } else { -1 };
        out = out.add(&power.scale(&ratio(sign, j)));
    }
    Ok(out)
}

/// The terminating exponential of a nilpotent matrix.
///
/// Panics if N^n is nonzero (the series would not terminate).
pub fn nilpotent_exp(n_mat: &SquareMatrix) -> SquareMatrix {
    let n = n_mat.size();
    assert!(n_mat.pow(n).is_zero(), "exponent must be nilpotent");
    let mut out = SquareMatrix::identity(n);
    let mut power = SquareMatrix::identity(n);
    let mut factorial = Rational::one();
    for j in 1..n as i64 {
        power = power.mul(n_mat);
        factorial *= rat(j);
        out = out.add(&power.scale(&(Rational::one() / &factorial)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_a_single_jordan_block() {
        // [[1,1],[0,1]] has log [[0,1],[0,0]]
        let m = SquareMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        let log = nilpotent_log(&m).unwrap();
        assert_eq!(log, SquareMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]));
        assert_eq!(nilpotent_exp(&log), m);
    }

    #[test]
    fn log_picks_up_the_series_corrections() {
        // [[1,1,0],[0,1,1],[0,0,1]]: X - X^2/2 has a -1/2 in the corner
        let m = SquareMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let log = nilpotent_log(&m).unwrap();
        assert_eq!(*log.entry(0, 2), ratio(-1, 2));
        assert_eq!(nilpotent_exp(&log), m);
    }

    #[test]
    fn exp_log_round_trip_on_a_generic_unipotent() {
        let m = SquareMatrix::from_i64_rows(&[
            &[1, 2, -3, 5],
            &[0, 1, 7, -1],
            &[0, 0, 1, 4],
            &[0, 0, 0, 1],
        ]);
        let log = nilpotent_log(&m).unwrap();
        assert_eq!(nilpotent_exp(&log), m);
        assert!(log.pow(4).is_zero());
    }

    #[test]
    fn non_unipotent_matrices_are_rejected() {
        let m = SquareMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert_eq!(
            nilpotent_log(&m).unwrap_err(),
            NilpotentError::NotUnipotent { power: 2 }
        );
        let shown = nilpotent_log(&m).unwrap_err().to_string();
        assert!(shown.contains("not unipotent"));
    }

    #[test]
    #[should_panic(expected = "nilpotent")]
    fn exp_rejects_non_nilpotent_input() {
        nilpotent_exp(&SquareMatrix::identity(2));
    }
}
