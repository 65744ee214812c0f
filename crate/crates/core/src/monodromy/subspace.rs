//! Row-space computations over the rationals.
//!
//! Subspaces are represented by their reduced row-echelon bases, which are
//! canonical: two row lists span the same subspace exactly when their
//! reduced bases are equal. All functions drop zero rows, so the returned
//! basis length is the dimension.

use num::Zero;

use crate::exact_series::Rational;
use crate::monodromy::matrix::SquareMatrix;

/// Reduced row-echelon form of the given rows, zero rows dropped.
pub fn rref(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let height = m.len();
    let width = m.first().map_or(0, |r| r.len());
    debug_assert!(m.iter().all(|r| r.len() == width), "ragged rows");
    let mut r = 0;
    for c in 0..width {
        if r == height {
            break;
        }
        let piv = match (r..height).find(|&i| !m[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        m.swap(r, piv);
        let pivot = m[r][c].clone();
        for x in &mut m[r] {
            *x /= &pivot;
        }
        for i in 0..height {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..width {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m
}

/// Dimension of the span of the rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    rref(rows).len()
}

/// Canonical basis of the column space of a matrix.
pub fn image_basis(m: &SquareMatrix) -> Vec<Vec<Rational>> {
    rref(&m.transpose().rows())
}

/// Canonical basis of the solutions of M·x = 0 for a rectangular row list.
pub fn kernel_of_rows(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let width = rows.first().map_or(0, |r| r.len());
    let reduced = rref(rows);
    let mut pivots = Vec::with_capacity(reduced.len());
    for row in &reduced {
        pivots.push(row.iter().position(|x| !x.is_zero()).expect("no zero rows"));
    }
    let mut out = Vec::new();
    for free in (0..width).filter(|j| !pivots.contains(j)) {
        let mut v = vec![Rational::zero(); width];
        v[free] = Rational::from_integer(1.into());
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -reduced[i][free].clone();
        }
        out.push(v);
    }
    out
}

/// Canonical basis of the null space of a square matrix.
pub fn kernel_basis(m: &SquareMatrix) -> Vec<Vec<Rational>> {
    kernel_of_rows(&m.rows())
}

/// Whether `v` lies in the span of the given rows.
pub fn contains(space: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return true;
    }
    let mut extended = space.to_vec();
    extended.push(v.to_vec());
    rank(&extended) == rank(space)
}

/// Solves Σ xⱼ·colⱼ = target for linearly independent columns; `None` when
/// the target is outside their span. The solution is unique by independence.
pub fn solve_with_independent_columns(
    columns: &[Vec<Rational>],
    target: &[Rational],
) -> Option<Vec<Rational>> {
    let height = target.len();
    debug_assert!(columns.iter().all(|c| c.len() == height), "ragged columns");
    let mut aug: Vec<Vec<Rational>> = Vec::with_capacity(height);
    for i in 0..height {
        let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
        row.push(target[i].clone());
        aug.push(row);
    }
    let reduced = rref(&aug);
    let mut sol = vec![Rational::zero(); columns.len()];
    for row in &reduced {
        let p = row.iter().position(|x| !x.is_zero()).expect("no zero rows");
        if p == columns.len() {
            return None; // row (0 ... 0 | 1): inconsistent
        }
        sol[p] = row[columns.len()].clone();
    }
    Some(sol)
}
