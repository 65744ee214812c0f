//! Dense truncated power series over exact rationals.
//!
//! Invariants:
//! - a series of order K stores exactly the coefficients c₀..c_K
//! - every binary operation truncates to the minimum input order
//! - equality is coefficientwise up to the common order
//! - convolution is the schoolbook O(K²) algorithm; desk-scale orders make
//!   anything faster unnecessary

use std::fmt;

use num::{One, Zero};

use super::rational::{is_canonical, rat, Rational};

/// Errors from series operations whose preconditions can fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Division by a series with zero constant term.
    DivisionByNonUnit,
    /// exp/log (or θ-inversion) applied to a series with the wrong constant
    /// term; carries the offending value.
    BadConstantTerm { found: Rational },
    /// Reversion of a series without vanishing constant term and invertible
    /// linear term.
    NotReversible,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::DivisionByNonUnit => {
                write!(f, "division by a series with zero constant term")
            }
            SeriesError::BadConstantTerm { found } => {
                write!(f, "constant term {found} violates the precondition")
            }
            SeriesError::NotReversible => {
                write!(f, "series has no compositional inverse (need c0 = 0, c1 != 0)")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// Formal power series truncated at an explicit order.
#[derive(Debug, Clone)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series of the given order from leading coefficients; missing high
    /// coefficients are zero.
    ///
    /// Panics if more than `order + 1` coefficients are supplied.
    pub fn new(order: usize, mut coeffs: Vec<Rational>) -> Self {
        assert!(
            coeffs.len() <= order + 1,
            "{} coefficients exceed order {}",
            coeffs.len(),
            order
        );
        debug_assert!(coeffs.iter().all(is_canonical));
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { order, coeffs }
    }

    /// Series from machine-integer coefficients.
    pub fn from_i64(order: usize, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&n| rat(n)).collect())
    }

    /// The zero series.
    pub fn zero(order: usize) -> Self {
        Self::new(order, Vec::new())
    }

    /// The constant series 1.
    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    /// A constant series.
    pub fn constant(order: usize, c: Rational) -> Self {
        Self::new(order, vec![c])
    }

    /// The identity series z.
    ///
    /// Panics if `order == 0`.
    pub fn variable(order: usize) -> Self {
        Self::monomial(order, 1, Rational::one())
    }

    /// The monomial c·z^k.
    ///
    /// Panics if `k > order`.
    pub fn monomial(order: usize, k: usize, c: Rational) -> Self {
        assert!(k <= order, "monomial degree {k} exceeds order {order}");
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(order, coeffs)
    }

    /// Truncation order K.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of z^k.
    ///
    /// Panics if `k > order`.
    pub fn coeff(&self, k: usize) -> &Rational {
        assert!(k <= self.order, "coefficient {k} beyond order {}", self.order);
        &self.coeffs[k]
    }

    /// All stored coefficients c₀..c_K.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Constant term c₀.
    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// True when every stored coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Canonicality audit over all coefficients.
    pub fn is_canonical(&self) -> bool {
        self.coeffs.iter().all(is_canonical)
    }

    /// Copy truncated to a lower order.
    ///
    /// Panics if `new_order > order`: series never gain precision.
    pub fn truncated(&self, new_order: usize) -> Self {
        assert!(
            new_order <= self.order,
            "cannot extend order {} to {new_order}",
            self.order
        );
        Self::new(new_order, self.coeffs[..=new_order].to_vec())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|c| -c).collect())
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Sum, truncated to the common order.
    pub fn add(&self, other: &Self) -> Self {
        let k = self.order.min(other.order);
        Self::new(
            k,
            (0..=k).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        )
    }

    /// Difference, truncated to the common order.
    pub fn sub(&self, other: &Self) -> Self {
        let k = self.order.min(other.order);
        Self::new(
            k,
            (0..=k).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        )
    }

    /// Cauchy product, truncated to the common order.
    pub fn mul(&self, other: &Self) -> Self {
        let k = self.order.min(other.order);
        let mut out = vec![Rational::zero(); k + 1];
        for i in 0..=k {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(k - i) {
                if !other.coeffs[j].is_zero() {
                    out[i + j] += &self.coeffs[i] * &other.coeffs[j];
                }
            }
        }
        Self::new(k, out)
    }

    /// Small integer power.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.order);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Quotient q with q·b = a through the common order.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.coeffs[0].is_zero() {
            return Err(SeriesError::DivisionByNonUnit);
        }
        let k = self.order.min(other.order);
        let mut q = vec![Rational::zero(); k + 1];
        for n in 0..=k {
            let mut acc = self.coeffs[n].clone();
            for j in 0..n {
                if !q[j].is_zero() {
                    acc -= &q[j] * &other.coeffs[n - j];
                }
            }
            q[n] = acc / &other.coeffs[0];
        }
        Ok(Self::new(k, q))
    }

    /// Formal exponential; requires c₀ = 0.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm {
                found: self.coeffs[0].clone(),
            });
        }
        let k = self.order;
        let mut e = vec![Rational::zero(); k + 1];
        e[0] = Rational::one();
        for n in 1..=k {
            let mut acc = Rational::zero();
            for j in 1..=n {
                if !self.coeffs[j].is_zero() {
                    acc += rat(j as i64) * &self.coeffs[j] * &e[n - j];
                }
            }
            e[n] = acc / rat(n as i64);
        }
        Ok(Self::new(k, e))
    }

    /// Formal logarithm; requires c₀ = 1.
    pub fn log(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm {
                found: self.coeffs[0].clone(),
            });
        }
        let k = self.order;
        let mut l = vec![Rational::zero(); k + 1];
        for n in 1..=k {
            let mut acc = rat(n as i64) * &self.coeffs[n];
            for j in 1..n {
                if !l[j].is_zero() {
                    acc -= rat(j as i64) * &l[j] * &self.coeffs[n - j];
                }
            }
            l[n] = acc / rat(n as i64);
        }
        Ok(Self::new(k, l))
    }

    /// The Euler operator θ = z·d/dz; order is preserved.
    pub fn theta(&self) -> Self {
        Self::new(
            self.order,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| rat(n as i64) * c)
                .collect(),
        )
    }

    /// Inverts θ on series with zero constant term, normalizing the result's
    /// constant term to zero.
    pub fn theta_inv(&self) -> Result<Self, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm {
                found: self.coeffs[0].clone(),
            });
        }
        Ok(Self::new(
            self.order,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| {
                    if n == 0 {
                        Rational::zero()
                    } else {
                        c / rat(n as i64)
                    }
                })
                .collect(),
        ))
    }

    /// Exact division by z (a one-step coefficient shift); the order drops
    /// by one.
    ///
    /// Panics if `order == 0`; errors if c₀ ≠ 0.
    pub fn divided_by_variable(&self) -> Result<Self, SeriesError> {
        assert!(self.order >= 1, "cannot shift an order-0 series");
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm {
                found: self.coeffs[0].clone(),
            });
        }
        Ok(Self::new(self.order - 1, self.coeffs[1..].to_vec()))
    }

    /// Composition self ∘ inner via Horner's scheme, truncated to the common
    /// order.
    ///
    /// Panics unless `inner` has zero constant term (composition of
    /// truncated series is only well defined then).
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(
            inner.coeffs[0].is_zero(),
            "composition requires vanishing inner constant term"
        );
        let k = self.order.min(inner.order);
        let mut out = Self::zero(k);
        for n in (0..=k).rev() {
            out = out.mul(inner);
            out.coeffs[0] += &self.coeffs[n];
        }
        out
    }

    /// Compositional inverse b with self(b(q)) = q through the order,
    /// computed by Lagrange inversion: b_m = (1/m)·[z^{m−1}] (z/a(z))^m.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        let k = self.order;
        if k == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotReversible);
        }
        // a = z·u with u a unit; w = 1/u at order K−1.
        let u = Self::new(k - 1, self.coeffs[1..].to_vec());
        let w = Self::one(k - 1).div(&u)?;
        let mut b = vec![Rational::zero(); k + 1];
        let mut w_pow = w.clone();
        b[1] = w_pow.coeffs[0].clone();
        for m in 2..=k {
            w_pow = w_pow.mul(&w);
            b[m] = &w_pow.coeffs[m - 1] / rat(m as i64);
        }
        Ok(Self::new(k, b))
    }
}

/// Coefficientwise comparison up to the common order: series of different
/// orders are equal when they agree on every mutually stored coefficient.
impl PartialEq for TruncatedSeries {
    fn eq(&self, other: &Self) -> bool {
        let k = self.order.min(other.order);
        self.coeffs[..=k] == other.coeffs[..=k]
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            match n {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{n}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::ratio;

    fn s(order: usize, coeffs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64(order, coeffs)
    }

    #[test]
    fn construction_pads_and_guards() {
        let a = s(4, &[1, 2]);
        assert_eq!(a.coeffs().len(), 5);
        assert_eq!(*a.coeff(1), rat(2));
        assert_eq!(*a.coeff(4), rat(0));
    }

    #[test]
    #[should_panic(expected = "exceed order")]
    fn too_many_coefficients_panics() {
        s(1, &[1, 2, 3]);
    }

    #[test]
    fn equality_up_to_common_order() {
        assert_eq!(s(5, &[1, 2, 3]), s(2, &[1, 2, 3]));
        assert_ne!(s(5, &[1, 2, 3]), s(2, &[1, 2, 4]));
        assert_eq!(s(3, &[0]), TruncatedSeries::zero(7));
    }

    #[test]
    fn mul_difference_of_squares() {
        // (1+x)(1−x) = 1 − x² at K = 5
        let p = s(5, &[1, 1]);
        let m = s(5, &[1, -1]);
        assert_eq!(p.mul(&m), s(5, &[1, 0, -1]));
    }

    #[test]
    fn mul_identity_element() {
        let a = TruncatedSeries::new(6, (0..=6).map(|i| ratio(i, i + 3)).collect());
        assert_eq!(a.mul(&TruncatedSeries::one(6)), a);
    }

    #[test]
    fn mul_geometric_telescope() {
        // (Σ xⁿ)·(1−x) = 1 at K = 8
        let geo = s(8, &[1, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(geo.mul(&s(8, &[1, -1])), TruncatedSeries::one(8));
    }

    #[test]
    fn mul_truncates_to_min_order() {
        let a = s(9, &[1, 1, 1]);
        let b = s(4, &[2]);
        assert_eq!(a.mul(&b).order(), 4);
    }

    #[test]
    fn div_geometric() {
        // 1/(1−x) = 1+x+x²+x³+x⁴ at K = 4
        let q = TruncatedSeries::one(4).div(&s(4, &[1, -1])).unwrap();
        assert_eq!(q, s(4, &[1, 1, 1, 1, 1]));
    }

    #[test]
    fn div_self_and_round_trip() {
        let a = TruncatedSeries::new(7, (0..=7).map(|i| ratio(2 * i + 5, 3)).collect());
        assert_eq!(a.div(&a).unwrap(), TruncatedSeries::one(7));
        let b = s(7, &[3, 1, 4, 1, 5, 9, 2, 6]);
        assert_eq!(a.div(&b).unwrap().mul(&b), a);
    }

    #[test]
    fn div_by_non_unit_rejected() {
        let err = TruncatedSeries::one(3).div(&s(3, &[0, 1])).unwrap_err();
        assert_eq!(err, SeriesError::DivisionByNonUnit);
    }

    #[test]
    fn exp_log_identity_cases() {
        assert_eq!(TruncatedSeries::zero(5).exp().unwrap(), TruncatedSeries::one(5));
        assert_eq!(TruncatedSeries::one(5).log().unwrap(), TruncatedSeries::zero(5));
    }

    #[test]
    fn exp_log_inverse_pair() {
        // exp(log(1+x)) = 1+x at K = 10
        let a = s(10, &[1, 1]);
        assert_eq!(a.log().unwrap().exp().unwrap(), a);
    }

    #[test]
    fn log_is_homomorphic() {
        // log((1+x)²) = 2·log(1+x) at K = 10
        let a = s(10, &[1, 1]);
        let lhs = a.mul(&a).log().unwrap();
        assert_eq!(lhs, a.log().unwrap().scale(&rat(2)));
    }

    #[test]
    fn exp_bad_constant_term() {
        let err = s(3, &[2]).exp().unwrap_err();
        assert_eq!(err, SeriesError::BadConstantTerm { found: rat(2) });
        let err = s(3, &[0]).log().unwrap_err();
        assert_eq!(err, SeriesError::BadConstantTerm { found: rat(0) });
    }

    #[test]
    fn theta_and_inverse() {
        let a = s(5, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(a.theta(), s(5, &[0, 1, 4, 9, 16, 25]));
        assert_eq!(a.theta().theta_inv().unwrap(), a);
    }

    #[test]
    fn reversion_identity() {
        let z = TruncatedSeries::variable(6);
        assert_eq!(z.reversion().unwrap(), z);
    }

    #[test]
    fn reversion_moebius_pair() {
        // z/(1−z) reverts to q/(1+q), coefficientwise (−1)^{m+1}
        let k = 9;
        let a = TruncatedSeries::variable(k)
            .div(&s(k, &[1, -1]))
            .unwrap();
        let b = a.reversion().unwrap();
        let expect = TruncatedSeries::variable(k).div(&s(k, &[1, 1])).unwrap();
        assert_eq!(b, expect);
    }

    #[test]
    fn reversion_compose_round_trip() {
        let a = s(12, &[0, 3, -2, 5, 0, 7, 1, -4, 2, 9, -6, 8, 11]);
        let b = a.reversion().unwrap();
        assert_eq!(a.compose(&b), TruncatedSeries::variable(12));
        assert_eq!(b.compose(&a), TruncatedSeries::variable(12));
    }

    #[test]
    fn reversion_rejects_bad_leading_terms() {
        assert_eq!(s(4, &[1, 1]).reversion().unwrap_err(), SeriesError::NotReversible);
        assert_eq!(s(4, &[0, 0, 1]).reversion().unwrap_err(), SeriesError::NotReversible);
    }

    #[test]
    fn compose_geometric_into_square() {
        // (1/(1−z)) ∘ z² = 1 + z² + z⁴ + …
        let a = TruncatedSeries::one(6).div(&s(6, &[1, -1])).unwrap();
        let inner = s(6, &[0, 0, 1]);
        assert_eq!(a.compose(&inner), s(6, &[1, 0, 1, 0, 1, 0, 1]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(s(2, &[1, 0, -3]).to_string(), "1 + (-3)*z^2 + O(z^3)");
        assert_eq!(TruncatedSeries::zero(1).to_string(), "0 + O(z^2)");
    }

    #[test]
    fn operations_preserve_canonical_scalars() {
        let a = TruncatedSeries::new(8, (0..=8).map(|i| ratio(i * 7 - 3, i + 2)).collect());
        let b = TruncatedSeries::new(8, (0..=8).map(|i| ratio(5 - i, 2 * i + 1)).collect());
        for series in [a.mul(&b), a.add(&b), a.sub(&b), a.div(&b).unwrap()] {
            assert!(series.is_canonical());
        }
    }
}
