//! The period operator of the quintic-mirror family and its Frobenius basis
//! at the maximally unipotent boundary point z = 0.
//!
//! Invariants:
//! - the operator is L = θ⁴ − 5z(5θ+1)(5θ+2)(5θ+3)(5θ+4) with θ = z·d/dz,
//!   stored expanded as Σ a_k(z)·θ^k with exact polynomial coefficients
//! - its indicial polynomial at z = 0 is ρ⁴, so solutions carry log-depths
//!   0..3 and live in [`LogSeries`]
//! - every returned solution is annihilated by the operator through its
//!   truncation order, exactly
//! - the depth-0 solution y₀ has integer coefficients and constant term 1;
//!   deeper solutions have vanishing constant term in every lower log part

use std::fmt;

use num::{One, Zero};

use crate::exact_series::{rat, LogSeries, Rational, TruncatedSeries};

/// Errors from the Frobenius recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PicardFuchsError {
    /// The recursion's leading coefficient vanished at the given index.
    /// Cannot occur for an operator with indicial polynomial ρ^d; kept as a
    /// defensive signal of an internal bug.
    RecurrenceBreakdown { index: usize },
}

impl fmt::Display for PicardFuchsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PicardFuchsError::RecurrenceBreakdown { index } => {
                write!(f, "Frobenius recursion broke down at coefficient {index}")
            }
        }
    }
}

impl std::error::Error for PicardFuchsError {}

/// A linear differential operator Σ_k a_k(z)·θ^k with polynomial
/// coefficients, θ = z·d/dz.
///
/// The coefficients are exact polynomials (series whose order equals their
/// degree); unlike genuinely truncated series they are completely known, so
/// [`OdeOperator::coeff_at_order`] may extend them with zeros losslessly.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeOperator {
    coeffs: Vec<TruncatedSeries>,
}

impl OdeOperator {
    /// Operator from coefficient polynomials a₀..a_d.
    ///
    /// Panics if `coeffs` is empty or the leading coefficient is zero.
    pub fn new(coeffs: Vec<TruncatedSeries>) -> Self {
        assert!(!coeffs.is_empty(), "an operator needs coefficients");
        assert!(
            !coeffs.last().unwrap().is_zero(),
            "leading coefficient must be nonzero"
        );
        OdeOperator { coeffs }
    }

    /// Operator degree d (the highest power of θ).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient polynomial a_k.
    pub fn coeff(&self, k: usize) -> &TruncatedSeries {
        &self.coeffs[k]
    }

    /// Coefficient polynomial re-expressed at the given truncation order.
    /// Extension pads with zeros, which is exact for a polynomial.
    pub fn coeff_at_order(&self, k: usize, order: usize) -> TruncatedSeries {
        let p = &self.coeffs[k];
        if order <= p.order() {
            return p.truncated(order);
        }
        TruncatedSeries::new(order, p.coeffs().to_vec())
    }

    /// [z^m] a_k(z) for every k, as the polynomial B_m(x) = Σ_k a_{k,m}·x^k
    /// governing the Frobenius recursion.
    fn side_polynomial(&self, m: usize) -> Vec<Rational> {
        self.coeffs
            .iter()
            .map(|a| {
                if m <= a.order() {
                    a.coeff(m).clone()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    /// Largest z-degree over the coefficient polynomials.
    fn z_degree(&self) -> usize {
        self.coeffs.iter().map(TruncatedSeries::order).max().unwrap()
    }
}

/// The period operator L = θ⁴ − 5z·(5θ+1)(5θ+2)(5θ+3)(5θ+4), expanded.
pub fn pf_operator() -> OdeOperator {
    // Expand Π_{j=1..4}(5x + j) by convolution, then scale by 5.
    let mut p = vec![1i64];
    for j in 1..=4 {
        let mut next = vec![0i64; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            next[i] += c * j; // constant part of (5x + j)
            next[i + 1] += c * 5; // x part
        }
        p = next;
    }
    let coeffs = (0..=4)
        .map(|k| {
            let theta_part = if k == 4 { 1 } else { 0 };
            TruncatedSeries::from_i64(1, &[theta_part, -5 * p[k]])
        })
        .collect();
    OdeOperator::new(coeffs)
}

/// Applies an operator formally to a log-twisted series.
///
/// θ acts on parts by (θs)_i = θ(S_i) + S_{i+1}; polynomial coefficients
/// multiply partwise without losing order.
pub fn apply_operator(l: &OdeOperator, s: &LogSeries) -> LogSeries {
    let order = s.order();
    let mut acc = LogSeries::zero(order, s.depth());
    let mut power = s.clone();
    for k in 0..=l.degree() {
        let ak = l.coeff_at_order(k, order);
        acc = acc.add(&power.mul_series(&ak));
        if k < l.degree() {
            power = power.theta();
        }
    }
    acc
}

/// The holomorphic period y₀(z) = Σ c_n zⁿ with c_n = (5n)!/(n!)⁵, through
/// order K, by the integer recurrence the operator forces.
pub fn holomorphic_period(k: usize) -> TruncatedSeries {
    let mut coeffs = Vec::with_capacity(k + 1);
    coeffs.push(Rational::one());
    for n in 1..=k as i64 {
        let mut step = rat(1);
        for j in 1..=5 {
            step *= rat(5 * (n - 1) + j);
        }
        let next = coeffs.last().unwrap() * step / rat(n).pow(5);
        coeffs.push(next);
    }
    let y0 = TruncatedSeries::new(k, coeffs);
    assert!(y0.is_integral(), "holomorphic period must have integer coefficients");
    y0
}

/// One Frobenius solution: log-depth, value, and a flag recording the
/// normalization S₀(0) = 1, S_i(0) = 0 for i ≥ 1 of its series parts.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusSolution {
    pub depth: usize,
    pub value: LogSeries,
    pub normalized: bool,
}

/// The Frobenius basis y₀..y₃ of the period operator through order K.
pub fn frobenius_basis(k: usize) -> Result<Vec<FrobeniusSolution>, PicardFuchsError> {
    assert!(k >= 1, "need at least order 1 to see the log structure");
    frobenius_basis_of(&pf_operator(), k)
}

/// Frobenius basis of any operator whose indicial polynomial at z = 0 is
/// ρ^d (maximally unipotent local structure).
///
/// Works in the nilpotent quotient ring ℚ[ρ]/ρ^d: the coefficients c_n(ρ)
/// of z^{n+ρ} satisfy c_n·B₀(ρ+n) = −Σ_{m≥1} B_m(ρ+n−m)·c_{n−m} with
/// B_m(x) = Σ_k ([z^m]a_k)·x^k. Solution j is Σ_i S_{j−i}(z)·(log z)^i/i!
/// where S_l = [ρ^l]c.
///
/// Panics if the indicial polynomial is not ρ^d.
pub fn frobenius_basis_of(
    l: &OdeOperator,
    k: usize,
) -> Result<Vec<FrobeniusSolution>, PicardFuchsError> {
    let d = l.degree();
    let b0 = l.side_polynomial(0);
    assert!(
        b0[..d].iter().all(Zero::is_zero) && !b0[d].is_zero(),
        "operator is not maximally unipotent at z = 0"
    );
    let zdeg = l.z_degree();

    // c[n] ∈ ℚ[ρ]/ρ^d as coefficient vectors of length d.
    let mut c: Vec<Vec<Rational>> = Vec::with_capacity(k + 1);
    let mut one = vec![Rational::zero(); d];
    one[0] = Rational::one();
    c.push(one);
    for n in 1..=k {
        let mut rhs = vec![Rational::zero(); d];
        for m in 1..=zdeg.min(n) {
            let bm = rho_evaluate(&l.side_polynomial(m), rat((n - m) as i64), d);
            let term = rho_mul(&bm, &c[n - m], d);
            for (r, t) in rhs.iter_mut().zip(term) {
                *r -= t;
            }
        }
        let den = rho_evaluate(&b0, rat(n as i64), d);
        if den[0].is_zero() {
            return Err(PicardFuchsError::RecurrenceBreakdown { index: n });
        }
        let inv = rho_inverse(&den, d);
        c.push(rho_mul(&rhs, &inv, d));
    }

    // S_l(z) = Σ_n [ρ^l]c_n · zⁿ
    let s: Vec<TruncatedSeries> = (0..d)
        .map(|l_idx| {
            TruncatedSeries::new(k, c.iter().map(|cn| cn[l_idx].clone()).collect())
        })
        .collect();

    Ok((0..d)
        .map(|j| {
            let parts = (0..=j).map(|i| s[j - i].clone()).collect();
            FrobeniusSolution {
                depth: j,
                value: LogSeries::new(parts),
                normalized: true,
            }
        })
        .collect())
}

/// p(ρ + t) in ℚ[ρ]/ρ^d for a polynomial p given by coefficients.
fn rho_evaluate(p: &[Rational], t: Rational, d: usize) -> Vec<Rational> {
    let mut acc = vec![Rational::zero(); d];
    // Horner in the quotient ring: acc = acc·(ρ+t) + p_k, k from top down.
    for pk in p.iter().rev() {
        let mut next = vec![Rational::zero(); d];
        for i in 0..d {
            next[i] += &acc[i] * &t;
            if i > 0 {
                let carry = acc[i - 1].clone();
                next[i] += carry;
            }
        }
        next[0] += pk;
        acc = next;
    }
    acc
}

/// Product in ℚ[ρ]/ρ^d.
fn rho_mul(a: &[Rational], b: &[Rational], d: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); d];
    for i in 0..d {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..d - i {
            if !b[j].is_zero() {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

/// Inverse of a unit in ℚ[ρ]/ρ^d (nonzero constant term required).
fn rho_inverse(a: &[Rational], d: usize) -> Vec<Rational> {
    let mut inv = vec![Rational::zero(); d];
    inv[0] = Rational::one() / &a[0];
    for n in 1..d {
        let mut acc = Rational::zero();
        for j in 0..n {
            acc += &inv[j] * &a[n - j];
        }
        inv[n] = -acc / &a[0];
    }
    inv
}
