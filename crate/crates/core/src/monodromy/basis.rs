//! Distinguished integral bases adapted to a nilpotent isometry.
//!
//! Given an integral antisymmetric pairing ⟨·,·⟩ and a nilpotent operator N
//! with N³ ≠ 0, N⁴ = 0 that is an infinitesimal isometry (⟨Nx,y⟩ = −⟨x,Ny⟩),
//! the construction produces
//!   g₀: the primitive integral generator of the line Im N³ (lex-positive),
//!   g : an integral partner with ⟨g₀, g⟩ = 1,
//!   λ : the positive content of N²g, with g₁ = N²g/λ integral primitive,
//!   m : the scalar with N·g₁ = m·g₀,
//!   h : an integral witness with ⟨g₀,h⟩ = 0 and ⟨g₁,h⟩ = −1,
//! and the pair (g₀, g₁) is unique up to g₀ ↦ ±g₀, g₁ ↦ k·g₀ ± g₁ — a grid
//! of equivalent choices that all leave λ and m unchanged.

use std::fmt;

use num::{BigInt, Signed, Zero};

use crate::exact_series::Rational;
use crate::monodromy::matrix::{vec_is_zero, vector_content, SquareMatrix};
use crate::monodromy::subspace::rank;

/// An integral antisymmetric nondegenerate pairing ⟨x, y⟩ = xᵀ·J·y.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticStructure {
    j: SquareMatrix,
}

impl SymplecticStructure {
    /// Panics unless the matrix is integral, antisymmetric, and invertible.
    pub fn new(j: SquareMatrix) -> Self {
        assert!(j.is_integral(), "pairing matrix must be integral");
        assert_eq!(j.transpose(), j.scale(&Rational::from_integer((-1).into())), "pairing must be antisymmetric");
        assert!(!j.det().is_zero(), "pairing must be nondegenerate");
        SymplecticStructure { j }
    }

    /// The block form [[0, I], [−I, 0]] on n = 2k coordinates.
    pub fn standard(n: usize) -> Self {
        assert!(n % 2 == 0, "symplectic dimension must be even");
        let k = n / 2;
        let mut rows = SquareMatrix::zero(n).rows();
        for i in 0..k {
            rows[i][k + i] = Rational::from_integer(1.into());
            rows[k + i][i] = Rational::from_integer((-1).into());
        }
        SymplecticStructure::new(SquareMatrix::from_rows(rows))
    }

    pub fn size(&self) -> usize {
        self.j.size()
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.j
    }

    pub fn is_unimodular(&self) -> bool {
        self.j.det().abs() == Rational::from_integer(1.into())
    }

    /// ⟨x, y⟩ = xᵀ·J·y.
    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        x.iter()
            .zip(self.j.mat_vec(y))
            .map(|(a, b)| a * b)
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// The row of pairings (⟨x, e₀⟩, …, ⟨x, e_{n−1}⟩).
    pub fn pairing_row(&self, x: &[Rational]) -> Vec<Rational> {
        (0..self.size())
            .map(|j| {
                x.iter()
                    .enumerate()
                    .map(|(i, a)| a * self.j.entry(i, j))
                    .fold(Rational::zero(), |acc, t| acc + t)
            })
            .collect()
    }

    /// Whether MᵀJM = J.
    pub fn is_isometry(&self, m: &SquareMatrix) -> bool {
        m.transpose().mul(&self.j).mul(m) == self.j
    }

    /// Whether NᵀJ + JN = 0.
    pub fn is_infinitesimal_isometry(&self, n: &SquareMatrix) -> bool {
        n.transpose().mul(&self.j).add(&self.j.mul(n)).is_zero()
    }
}

/// The adapted basis data produced by [`good_integral_basis`].
#[derive(Debug, Clone, PartialEq)]
pub struct GoodIntegralBasis {
    /// Primitive integral generator of Im N³, lexicographically positive.
    pub g0: Vec<Rational>,
    /// N²g/λ: integral, primitive, with N·g₁ = m·g₀.
    pub g1: Vec<Rational>,
    /// Integral partner with ⟨g₀, g⟩ = 1.
    pub g: Vec<Rational>,
    /// Integral witness with ⟨g₀, h⟩ = 0 and ⟨g₁, h⟩ = −1.
    pub h: Vec<Rational>,
    /// Positive content of N²g.
    pub lambda: Rational,
    /// The scalar with N·g₁ = m·g₀.
    pub m: Rational,
}

/// Errors from the basis construction.
#[derive(Debug, Clone, PartialEq)]
pub enum GoodBasisError {
    /// ⟨g₀, ·⟩ does not take the value 1 on the integer lattice.
    NoUnimodularPartner,
    /// ⟨g₁, ·⟩ does not take the value −1 on the kernel of ⟨g₀, ·⟩.
    NoGridWitness,
}

impl fmt::Display for GoodBasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoodBasisError::NoUnimodularPartner => {
                write!(f, "no integral vector pairs to 1 with the generator of Im N^3")
            }
            GoodBasisError::NoGridWitness => {
                write!(f, "no integral vector pairs to -1 with g1 inside the kernel of <g0, .>")
            }
        }
    }
}

impl std::error::Error for GoodBasisError {}

fn lex_positive(v: &[Rational]) -> bool {
    for x in v {
        if !x.is_zero() {
            return x.is_positive();
        }
    }
    false
}

/// Integer coefficients c with Σ cⱼ·valuesⱼ = gcd(values) ≥ 0, built by
/// folding the extended Euclidean algorithm left to right (deterministic).
fn gcd_combination(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut d = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); values.len()];
    for (j, v) in values.iter().enumerate() {
        if v.is_zero() {
            continue;
        }
        if d.is_zero() {
            // first nonzero value: take it with sign
            d = v.abs();
            coeffs[j] = if v.is_negative() { BigInt::from(-1) } else { BigInt::from(1) };
            continue;
        }
        let eg = num::Integer::extended_gcd(&d, v);
        let (mut g, mut s, mut t) = (eg.gcd, eg.x, eg.y);
        if g.is_negative() {
            g = -g;
            s = -s;
            t = -t;
        }
        for c in &mut coeffs {
            *c *= &s;
        }
        coeffs[j] = t;
        d = g;
    }
    (d, coeffs)
}

fn to_bigints(v: &[Rational]) -> Vec<BigInt> {
    v.iter()
        .map(|x| {
            assert!(x.is_integer(), "expected an integral vector");
            x.to_integer()
        })
        .collect()
}

/// Runs the construction described in the module docs.
///
/// Panics unless N is 4×4, nilpotent with N³ ≠ 0 and N⁴ = 0, and an
/// infinitesimal isometry of the pairing; the `Err` cases are the two
/// genuinely arithmetic obstructions.
pub fn good_integral_basis(
    n: &SquareMatrix,
    sym: &SymplecticStructure,
) -> Result<GoodIntegralBasis, GoodBasisError> {
    assert_eq!(n.size(), 4, "the construction lives on a rank-4 lattice");
    assert_eq!(sym.size(), 4, "pairing size mismatch");
    let n3 = n.pow(3);
    assert!(!n3.is_zero() && n.pow(4).is_zero(), "operator must be nilpotent of index 4");
    assert!(
        sym.is_infinitesimal_isometry(n),
        "operator must be an infinitesimal isometry of the pairing"
    );

    // g0: primitive lex-positive generator of the line Im N^3.
    let col = (0..4)
        .map(|j| n3.column(j))
        .find(|c| !vec_is_zero(c))
        .expect("N^3 is nonzero");
    let content = vector_content(&col);
    let mut g0: Vec<Rational> = col.iter().map(|x| x / &content).collect();
    if !lex_positive(&g0) {
        for x in &mut g0 {
            *x = -x.clone();
        }
    }

    // g: integral vector with <g0, g> = 1, via the extended gcd of the
    // pairing row of g0.
    let row0 = to_bigints(&sym.pairing_row(&g0));
    let (d, coeffs) = gcd_combination(&row0);
    if d != BigInt::from(1) {
        return Err(GoodBasisError::NoUnimodularPartner);
    }
    let g: Vec<Rational> = coeffs.into_iter().map(Rational::from_integer).collect();
    debug_assert_eq!(sym.pairing(&g0, &g), Rational::from_integer(1.into()));

    // lambda and g1 from N^2 g.
    let v = n.pow(2).mat_vec(&g);
    assert!(
        !vec_is_zero(&v),
        "N^2 g vanishes; the pairing is incompatible with the operator"
    );
    let lambda = vector_content(&v);
    let g1: Vec<Rational> = v.iter().map(|x| x / &lambda).collect();

    // m: N g1 lies on the line spanned by g0 since dim Im N^3 = 1.
    let ng1 = n.mat_vec(&g1);
    let pivot = g0.iter().position(|x| !x.is_zero()).expect("g0 is nonzero");
    let m = &ng1[pivot] / &g0[pivot];
    for (a, b) in ng1.iter().zip(&g0) {
        assert_eq!(a, &(&m * b), "N g1 must be proportional to g0");
    }

    // h: integral solution of <g0, h> = 0, <g1, h> = -1. The vectors
    // k_j = e_j - <g0, e_j> g integrally span the kernel lattice of <g0, .>
    // (subtracting the g-component of any kernel vector recovers it), so an
    // extended gcd over <g1, k_j> decides solvability.
    let row1 = to_bigints(&sym.pairing_row(&g1));
    let g_ints = to_bigints(&g);
    let kernel_gens: Vec<Vec<BigInt>> = (0..4)
        .map(|j| {
            let mut k: Vec<BigInt> = g_ints.iter().map(|gi| -(&row0[j] * gi)).collect();
            k[j] += 1;
            k
        })
        .collect();
    let weights: Vec<BigInt> = kernel_gens
        .iter()
        .map(|k| k.iter().zip(&row1).map(|(a, b)| a * b).sum())
        .collect();
    let (dw, cw) = gcd_combination(&weights);
    if dw != BigInt::from(1) {
        return Err(GoodBasisError::NoGridWitness);
    }
    let mut h = vec![BigInt::zero(); 4];
    for (c, k) in cw.iter().zip(&kernel_gens) {
        for (hi, ki) in h.iter_mut().zip(k) {
            *hi -= c * ki;
        }
    }
    let h: Vec<Rational> = h.into_iter().map(Rational::from_integer).collect();
    debug_assert!(sym.pairing(&g0, &h).is_zero());
    debug_assert_eq!(sym.pairing(&g1, &h), Rational::from_integer((-1).into()));

    Ok(GoodIntegralBasis { g0, g1, g, h, lambda, m })
}

/// Whether (1/λ)·N²x = −⟨g₁,x⟩·g₀ + ⟨g₀,x⟩·g₁ holds on every standard
/// basis vector — the identity that pins the square of the operator to the
/// adapted basis.
pub fn square_action_identity(
    n: &SquareMatrix,
    sym: &SymplecticStructure,
    basis: &GoodIntegralBasis,
) -> bool {
    let n2 = n.pow(2);
    for j in 0..n.size() {
        let mut e = vec![Rational::zero(); n.size()];
        e[j] = Rational::from_integer(1.into());
        let lhs: Vec<Rational> = n2.mat_vec(&e).iter().map(|x| x / &basis.lambda).collect();
        let c0 = -sym.pairing(&basis.g1, &e);
        let c1 = sym.pairing(&basis.g0, &e);
        let rhs: Vec<Rational> = basis
            .g0
            .iter()
            .zip(&basis.g1)
            .map(|(a, b)| &c0 * a + &c1 * b)
            .collect();
        if lhs != rhs {
            return false;
        }
    }
    true
}

/// Checks the two-parameter ambiguity g₀′ = ±g₀, g₁′ = k·g₀ ± g₁ for
/// k ∈ [k_lo, k_hi]: every member is again a valid adapted basis, produced
/// by the partner g′ = ±g + k·h, with λ and m unchanged.
pub fn basis_ambiguity_grid(
    n: &SquareMatrix,
    sym: &SymplecticStructure,
    basis: &GoodIntegralBasis,
    k_lo: i64,
    k_hi: i64,
) -> bool {
    let n2 = n.pow(2);
    for k in k_lo..=k_hi {
        for sign in [1i64, -1] {
            let s = Rational::from_integer(sign.into());
            let kq = Rational::from_integer(k.into());
            let g0p: Vec<Rational> = basis.g0.iter().map(|x| &s * x).collect();
            let g1p: Vec<Rational> = basis
                .g0
                .iter()
                .zip(&basis.g1)
                .map(|(a, b)| &kq * a + &s * b)
                .collect();
            let gp: Vec<Rational> = basis
                .g
                .iter()
                .zip(&basis.h)
                .map(|(a, b)| &s * a + &kq * b)
                .collect();
            // integral and primitive
            if !g1p.iter().all(|x| x.is_integer()) || vector_content(&g1p) != Rational::from_integer(1.into()) {
                return false;
            }
            // the partner pairs to 1 with g0'
            if sym.pairing(&g0p, &gp) != Rational::from_integer(1.into()) {
                return false;
            }
            // N^2 g' has content lambda and quotient g1'
            let v = n2.mat_vec(&gp);
            if vector_content(&v) != basis.lambda {
                return false;
            }
            let quotient: Vec<Rational> = v.iter().map(|x| x / &basis.lambda).collect();
            if quotient != g1p {
                return false;
            }
            // m is invariant: N g1' = m g0'
            let lhs = n.mat_vec(&g1p);
            let rhs: Vec<Rational> = g0p.iter().map(|x| &basis.m * x).collect();
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Dimensions (dim Im N, dim Im N², dim Im N³) — the flag data of the
/// nilpotent operator.
pub fn image_dimensions(n: &SquareMatrix) -> Vec<usize> {
    (1..=3)
        .map(|k| rank(&n.pow(k).transpose().rows()))
        .collect()
}
