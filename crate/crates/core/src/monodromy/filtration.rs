//! The weight filtration of a nilpotent operator.
//!
//! For nilpotent N with N^{m+1} = 0 there is a unique increasing filtration
//! W₀ ⊆ W₁ ⊆ … ⊆ W_{2m} = V, centered at m, with N·W_k ⊆ W_{k−2} and
//! N^k inducing isomorphisms gr_{m+k} → gr_{m−k}. It is computed here by
//! the standard recursion: W₀ = Im N^m, W_{2m−1} = Ker N^m, and the middle
//! terms come from the filtration of the operator induced on a complement
//! of Im N^m inside Ker N^m, centered at m−1.

use std::fmt;

use crate::exact_series::Rational;
use crate::monodromy::matrix::SquareMatrix;
use crate::monodromy::subspace::{
    contains, kernel_of_rows, rank, rref, solve_with_independent_columns,
};

/// Errors from the filtration construction.
#[derive(Debug, Clone, PartialEq)]
pub enum FiltrationError {
    /// N^{center+1} did not vanish, so no filtration centered there exists.
    NotNilpotent { power: usize },
}

impl fmt::Display for FiltrationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiltrationError::NotNilpotent { power } => {
                write!(f, "operator is not nilpotent of the required index: N^{power} is nonzero")
            }
        }
    }
}

impl std::error::Error for FiltrationError {}

/// The subspaces W₀..W_{2·center}, each as a canonical row basis.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFiltration {
    pub center: usize,
    pub spaces: Vec<Vec<Vec<Rational>>>,
}

impl WeightFiltration {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(|s| s.len()).collect()
    }

    pub fn space(&self, k: usize) -> &[Vec<Rational>] {
        &self.spaces[k]
    }
}

/// Computes the weight filtration of `n` centered at `center`.
pub fn weight_filtration(
    n: &SquareMatrix,
    center: usize,
) -> Result<WeightFiltration, FiltrationError> {
    if !n.pow(center + 1).is_zero() {
        return Err(FiltrationError::NotNilpotent { power: center + 1 });
    }
    Ok(WeightFiltration {
        center,
        spaces: filtration_spaces(n, center),
    })
}

fn filtration_spaces(n: &SquareMatrix, m: usize) -> Vec<Vec<Vec<Rational>>> {
    let dim = n.size();
    let full: Vec<Vec<Rational>> = SquareMatrix::identity(dim).rows();
    if m == 0 {
        return vec![full];
    }
    let nm = n.pow(m);
    let images: Vec<Vec<Rational>> = full.iter().map(|v| nm.mat_vec(v)).collect();
    let im_nm = rref(&images);
    // Ker N^m: coefficient kernels of the map c ↦ N^m(Σ cᵢvᵢ), lifted back.
    let coeff_matrix: Vec<Vec<Rational>> = (0..dim)
        .map(|i| images.iter().map(|w| w[i].clone()).collect())
        .collect();
    let ker_nm: Vec<Vec<Rational>> = rref(
        &kernel_of_rows(&coeff_matrix)
            .iter()
            .map(|c| combine(c, &full))
            .collect::<Vec<_>>(),
    );
    // Greedy complement C of Im N^m inside Ker N^m.
    let mut complement: Vec<Vec<Rational>> = Vec::new();
    let mut current = im_nm.clone();
    for v in &ker_nm {
        if !contains(&current, v) {
            complement.push(v.clone());
            current.push(v.clone());
        }
    }
    // Operator induced on the complement: project N·c back onto C along Im N^m.
    let wbar: Vec<Vec<Vec<Rational>>> = if complement.is_empty() {
        vec![Vec::new(); 2 * m - 1]
    } else {
        let span: Vec<Vec<Rational>> = complement
            .iter()
            .chain(im_nm.iter())
            .cloned()
            .collect();
        let coords: Vec<Vec<Rational>> = complement
            .iter()
            .map(|c| {
                let sol = solve_with_independent_columns(&span, &n.mat_vec(c))
                    .expect("N maps Ker N^m into Ker N^{m-1} + Im N^m");
                sol[..complement.len()].to_vec()
            })
            .collect();
        let induced = SquareMatrix::from_rows(transpose_rows(&coords));
        debug_assert!(induced.pow(m).is_zero(), "induced operator index");
        filtration_spaces(&induced, m - 1)
    };
    let mut spaces: Vec<Vec<Vec<Rational>>> = vec![Vec::new(); 2 * m + 1];
    spaces[0] = im_nm.clone();
    spaces[2 * m] = rref(&full);
    spaces[2 * m - 1] = ker_nm;
    for (k, space) in spaces.iter_mut().enumerate().take(2 * m - 1).skip(1) {
        let mut rows = im_nm.clone();
        for cvec in &wbar[k - 1] {
            rows.push(combine(cvec, &complement));
        }
        *space = rref(&rows);
    }
    spaces
}

/// Σ cᵢ·basisᵢ as an ambient vector.
fn combine(coeffs: &[Rational], basis: &[Vec<Rational>]) -> Vec<Rational> {
    let width = basis.first().map_or(0, |b| b.len());
    let mut out = vec![Rational::from_integer(0.into()); width];
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

fn transpose_rows(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let width = rows.first().map_or(0, |r| r.len());
    (0..width)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Whether N·W_k ⊆ W_{k−2} for every k (with W_{<0} = 0).
pub fn filtration_shift_property(n: &SquareMatrix, wf: &WeightFiltration) -> bool {
    for k in 0..wf.spaces.len() {
        let lower: &[Vec<Rational>] = if k >= 2 { &wf.spaces[k - 2] } else { &[] };
        for v in &wf.spaces[k] {
            if !contains(lower, &n.mat_vec(v)) {
                return false;
            }
        }
    }
    true
}

/// Whether N^k induces isomorphisms gr_{center+k} → gr_{center−k}: equal
/// graded dimensions and surjectivity of the induced map.
pub fn graded_isomorphism_property(n: &SquareMatrix, wf: &WeightFiltration) -> bool {
    let c = wf.center;
    for k in 1..=c {
        let hi = &wf.spaces[c + k];
        let hi_prev = &wf.spaces[c + k - 1];
        let lo = &wf.spaces[c - k];
        let lo_prev: &[Vec<Rational>] = if c - k >= 1 { &wf.spaces[c - k - 1] } else { &[] };
        if hi.len() as i64 - hi_prev.len() as i64 != lo.len() as i64 - lo_prev.len() as i64 {
            return false;
        }
        let nk = n.pow(k);
        let mut span: Vec<Vec<Rational>> = lo_prev.to_vec();
        span.extend(hi.iter().map(|v| nk.mat_vec(v)));
        if rank(&span) != lo.len() {
            return false;
        }
    }
    true
}
