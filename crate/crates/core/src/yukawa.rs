//! The mathematically normalized Yukawa coupling as an exact q-expansion.
//!
//! The unnormalized coupling W(z) in the period gauge satisfies the
//! first-order equation θ·log W = −a₃(z)/(2·a₄(z)) forced by the degree-4
//! period operator Σ a_k·θ^k (differentiate the pairing ⟨Ω, θ³Ω⟩ and use
//! skew-symmetry to eliminate lower iterates), normalized by the topological
//! limit W(0) = 5. The normalized coupling divides by the square of the
//! holomorphic period and converts three θ_z-derivatives into three
//! t-derivatives through the mirror map:
//!
//! κ(q) = W(z(q)) · y₀(z(q))⁻² · ((q/z)·dz/dq)³.
//!
//! Invariants:
//! - a₀ = 5 exactly
//! - a_k is an integer for every k ≤ 10 (a hard error here would falsify
//!   the implementation, so it is asserted)
//! - rescaling the gauge section by a unit series f multiplies W by f²

use num::Zero;

use crate::exact_series::{rat, Rational, SeriesError, TruncatedSeries};
use crate::mirror_map::mirror_map_from_basis;
use crate::picard_fuchs::{frobenius_basis, FrobeniusSolution, OdeOperator, pf_operator};

/// Coefficients a₀..a_K of the normalized coupling κ = Σ a_k q^k.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingSeries {
    pub order: usize,
    pub a: Vec<Rational>,
}

/// Solves θ·log W = −a₃/(2a₄) for the unnormalized coupling W of the given
/// degree-4 operator, at the given truncation order, with W(0) = 5.
pub fn coupling_ode_from_pf(l: &OdeOperator, k: usize) -> Result<TruncatedSeries, SeriesError> {
    assert_eq!(l.degree(), 4, "the coupling equation needs a degree-4 operator");
    let a3 = l.coeff_at_order(3, k);
    let a4 = l.coeff_at_order(4, k);
    let rhs = a3.neg().div(&a4.scale(&rat(2)))?;
    Ok(rhs.theta_inv()?.exp()?.scale(&rat(5)))
}

/// The normalized coupling κ through q^K.
///
/// Panics if `k < 2`. The chain-rule factor costs one z-order, so the
/// mirror map is computed internally at order K+1.
pub fn normalized_yukawa_q_expansion(k: usize) -> Result<CouplingSeries, SeriesError> {
    assert!(k >= 2, "coupling expansion needs order >= 2");
    let basis = frobenius_basis(k + 1).expect("the period operator cannot break down");
    yukawa_from_basis(&basis, k)
}

/// The same computation from an already-computed Frobenius basis of order at
/// least K+1.
pub fn yukawa_from_basis(
    basis: &[FrobeniusSolution],
    k: usize,
) -> Result<CouplingSeries, SeriesError> {
    let kz = k + 1;
    assert!(
        basis[0].value.order() >= kz,
        "need the basis through order {kz} for a coupling through {k}"
    );
    let mm = mirror_map_from_basis(basis)?;
    let z_of_q = mm.z_of_q.truncated(kz);
    let y0 = basis[0].value.part(0).truncated(kz);

    let w = coupling_ode_from_pf(&pf_operator(), kz)?;
    let w_q = w.compose(&z_of_q);
    let y0_q = y0.compose(&z_of_q);
    // (q/z)·dz/dq = θ_q(z)/z, computed by exact shifts; drops one order.
    let chain = z_of_q
        .theta()
        .divided_by_variable()?
        .div(&z_of_q.divided_by_variable()?)?;
    let kappa = w_q.mul(&chain.pow(3)).div(&y0_q.pow(2))?;

    let a = kappa.coeffs()[..=k].to_vec();
    for (n, c) in a.iter().enumerate().take(10 + 1) {
        assert!(c.is_integer(), "coupling coefficient a_{n} = {c} is not an integer");
    }
    Ok(CouplingSeries { order: k, a })
}

/// Verifies on computed data that rescaling the gauge section by the unit
/// series f multiplies the unnormalized coupling by f², exactly.
///
/// This is a genuine recomputation, not a definition chase: the operator is
/// conjugated by multiplication with 1/f (so that it annihilates f·y for
/// every period y), the coupling equation is re-derived from the conjugated
/// coefficients b₃ = a₃/f + 4·a₄·θ(1/f) and b₄ = a₄/f with the rescaled
/// normalization W_f(0) = 5·f(0)², and the result is compared against f²·W.
///
/// Panics if `f` is not a unit or its order is below `k`.
pub fn gauge_transform_check(f: &TruncatedSeries, k: usize) -> bool {
    assert!(!f.constant_term().is_zero(), "gauge section must be a unit series");
    assert!(f.order() >= k, "gauge series too short for the requested order");
    let f = f.truncated(k);
    let l = pf_operator();
    let w = coupling_ode_from_pf(&l, k).expect("coupling equation is solvable");

    let inv_f = TruncatedSeries::one(k)
        .div(&f)
        .expect("unit series is invertible");
    let a3 = l.coeff_at_order(3, k);
    let a4 = l.coeff_at_order(4, k);
    let b3 = a3.mul(&inv_f).add(&a4.mul(&inv_f.theta()).scale(&rat(4)));
    let b4 = a4.mul(&inv_f);

    let rhs = b3.neg().div(&b4.scale(&rat(2))).expect("b4 is a unit");
    let norm = f.constant_term() * f.constant_term() * rat(5);
    let w_f = rhs
        .theta_inv()
        .expect("conjugated right-hand side has no constant term")
        .exp()
        .expect("exponential of a vanishing-constant series")
        .scale(&norm);

    w_f == f.mul(&f).mul(&w)
}
