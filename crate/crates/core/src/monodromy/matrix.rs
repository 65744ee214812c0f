//! Dense square matrices over the exact rationals.
//!
//! Sizes here are tiny (4×4 for the period lattice), so plain Gaussian
//! elimination with exact arithmetic is both simple and fast. Entries are
//! kept canonical by the underlying rational type.

use std::fmt;

use num::{One, Signed, Zero};

use crate::exact_series::{rat, Rational};

/// An n×n matrix with exact rational entries, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl SquareMatrix {
    /// Builds a matrix from rows; panics unless the rows form a nonempty
    /// square array.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        assert!(n > 0, "matrix must be nonempty");
        assert!(
            rows.iter().all(|r| r.len() == n),
            "matrix must be square"
        );
        SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "matrix must be nonempty");
        SquareMatrix {
            n,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.n).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        let n = self.n;
        let mut out = SquareMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let term = a * other.entry(k, j);
                    out.entries[i * n + j] += term;
                }
            }
        }
        out
    }

    pub fn mat_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.n, "size mismatch");
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, x)| a * x)
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    pub fn add(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n, "size mismatch");
        SquareMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &SquareMatrix) -> SquareMatrix {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> SquareMatrix {
        SquareMatrix {
            n: self.n,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, k: usize) -> SquareMatrix {
        let mut out = SquareMatrix::identity(self.n);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn transpose(&self) -> SquareMatrix {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        out
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn det(&self) -> Rational {
        let n = self.n;
        let mut m = self.rows();
        let mut det = Rational::one();
        for col in 0..n {
            let piv = match (col..n).find(|&r| !m[r][col].is_zero()) {
                Some(p) => p,
                None => return Rational::zero(),
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            det *= &m[col][col];
            let pivot = m[col][col].clone();
            for r in col + 1..n {
                if !m[r][col].is_zero() {
                    let f = &m[r][col] / &pivot;
                    for j in col..n {
                        let t = &f * &m[col][j];
                        m[r][j] -= t;
                    }
                }
            }
        }
        det
    }

    /// Inverse by Gauss–Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<SquareMatrix> {
        let n = self.n;
        let mut m: Vec<Vec<Rational>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.extend(SquareMatrix::identity(n).row(i).to_vec());
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
            m.swap(piv, col);
            let pivot = m[col][col].clone();
            for x in &mut m[col] {
                *x /= &pivot;
            }
            for r in 0..n {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for j in 0..2 * n {
                        let t = &f * &m[col][j];
                        m[r][j] -= t;
                    }
                }
            }
        }
        Some(SquareMatrix::from_rows(
            m.into_iter().map(|row| row[n..].to_vec()).collect(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        *self == SquareMatrix::identity(self.n)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x.is_integer())
    }

    /// The first entry (row-major order) where two matrices differ, for
    /// readable failure messages.
    pub fn first_difference(&self, other: &SquareMatrix) -> Option<(usize, usize)> {
        if self.n != other.n {
            return Some((0, 0));
        }
        for i in 0..self.n {
            for j in 0..self.n {
                if self.entry(i, j) != other.entry(i, j) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// True when the vector is entirely zero.
pub fn vec_is_zero(v: &[Rational]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// The positive rational `c` such that `v / c` is integral and primitive
/// (componentwise gcd 1); zero for the zero vector.
pub fn vector_content(v: &[Rational]) -> Rational {
    use num::BigInt;
    let mut lcm = BigInt::one();
    for x in v {
        lcm = num::integer::lcm(lcm, x.denom().clone());
    }
    let mut g = BigInt::zero();
    for x in v {
        let scaled = (x.numer() * (&lcm / x.denom())).abs();
        g = num::integer::gcd(g, scaled);
    }
    Rational::new(g, lcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::ratio;

    #[test]
    fn multiplication_and_identity() {
        let a = SquareMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let i = SquareMatrix::identity(2);
        assert_eq!(a.mul(&i), a);
        assert_eq!(i.mul(&a), a);
        let b = SquareMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            a.mul(&b),
            SquareMatrix::from_i64_rows(&[&[2, 1], &[4, 3]])
        );
    }

    #[test]
    fn determinant_and_inverse() {
        let a = SquareMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        assert_eq!(a.det(), rat(1));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, SquareMatrix::from_i64_rows(&[&[1, -1], &[-1, 2]]));
        assert!(a.mul(&inv).is_identity());

        let singular = SquareMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), rat(0));
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn rational_entries_stay_exact() {
        let a = SquareMatrix::from_rows(vec![
            vec![ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 4), ratio(1, 5)],
        ]);
        let det = a.det();
        assert_eq!(det, ratio(1, 60)); // 1/10 - 1/12
        assert!(a.mul(&a.inverse().unwrap()).is_identity());
        assert!(!a.is_integral());
        assert!(SquareMatrix::identity(3).is_integral());
    }

    #[test]
    fn powers_and_transpose() {
        let n = SquareMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert!(n.pow(2).is_zero());
        assert_eq!(n.pow(0), SquareMatrix::identity(2));
        assert_eq!(
            n.transpose(),
            SquareMatrix::from_i64_rows(&[&[0, 0], &[1, 0]])
        );
    }

    #[test]
    fn mat_vec_matches_rows() {
        let a = SquareMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.mat_vec(&[rat(1), rat(1)]), vec![rat(3), rat(7)]);
    }

    #[test]
    fn first_difference_locates_entry() {
        let a = SquareMatrix::identity(3);
        let mut rows = a.rows();
        rows[1][2] = rat(9);
        let b = SquareMatrix::from_rows(rows);
        assert_eq!(a.first_difference(&b), Some((1, 2)));
        assert_eq!(a.first_difference(&a), None);
    }

    #[test]
    fn content_of_vectors() {
        assert_eq!(vector_content(&[rat(10), rat(0), rat(5), rat(0)]), rat(5));
        assert_eq!(vector_content(&[ratio(1, 2), ratio(1, 3)]), ratio(1, 6));
        assert_eq!(vector_content(&[rat(0), rat(0)]), rat(0));
        assert_eq!(vector_content(&[rat(-3), rat(6)]), rat(3));
    }
}
