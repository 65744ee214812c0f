//! Log-twisted series: finite sums Σ_i S_i(z)·(log z)^i / i!.
//!
//! Invariants:
//! - parts are truncated series of one common order
//! - the part index i carries the 1/i! normalization implicitly, which makes
//!   the Euler operator act by (θs)_i = θ(S_i) + S_{i+1}
//! - a plain power series is the depth-0 special case

use std::fmt;

use super::truncated::{SeriesError, TruncatedSeries};

/// A series with polynomial log-twist, the natural home of Frobenius
/// solutions at a maximally unipotent point.
#[derive(Debug, Clone, PartialEq)]
pub struct LogSeries {
    parts: Vec<TruncatedSeries>,
}

impl LogSeries {
    /// Builds from parts S₀, S₁, … (part i multiplies (log z)^i/i!).
    ///
    /// Panics if `parts` is empty; parts are truncated to the common order.
    pub fn new(parts: Vec<TruncatedSeries>) -> Self {
        assert!(!parts.is_empty(), "a log series needs at least one part");
        let order = parts.iter().map(TruncatedSeries::order).min().unwrap();
        LogSeries {
            parts: parts.into_iter().map(|p| p.truncated(order)).collect(),
        }
    }

    /// A plain power series as a depth-0 log series.
    pub fn from_series(s: TruncatedSeries) -> Self {
        LogSeries { parts: vec![s] }
    }

    /// The zero log series with the given structural depth.
    pub fn zero(order: usize, depth: usize) -> Self {
        LogSeries {
            parts: vec![TruncatedSeries::zero(order); depth + 1],
        }
    }

    /// Common truncation order of the parts.
    pub fn order(&self) -> usize {
        self.parts[0].order()
    }

    /// Number of stored parts minus one (structural, not reduced).
    pub fn depth(&self) -> usize {
        self.parts.len() - 1
    }

    /// Highest index with a nonzero part; 0 for the zero series.
    pub fn log_degree(&self) -> usize {
        self.parts
            .iter()
            .rposition(|p| !p.is_zero())
            .unwrap_or(0)
    }

    /// Part S_i; the zero series for i beyond the stored depth.
    pub fn part(&self, i: usize) -> TruncatedSeries {
        self.parts
            .get(i)
            .cloned()
            .unwrap_or_else(|| TruncatedSeries::zero(self.order()))
    }

    /// All stored parts.
    pub fn parts(&self) -> &[TruncatedSeries] {
        &self.parts
    }

    /// True when every part is zero.
    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(TruncatedSeries::is_zero)
    }

    /// The Euler operator θ = z·d/dz: (θs)_i = θ(S_i) + S_{i+1}.
    pub fn theta(&self) -> Self {
        let parts = (0..self.parts.len())
            .map(|i| {
                let t = self.parts[i].theta();
                match self.parts.get(i + 1) {
                    Some(next) => t.add(next),
                    None => t,
                }
            })
            .collect();
        LogSeries { parts }
    }

    /// Partwise sum; depths and orders meet at their extremes.
    pub fn add(&self, other: &Self) -> Self {
        let depth = self.depth().max(other.depth());
        let order = self.order().min(other.order());
        let parts = (0..=depth)
            .map(|i| self.part(i).truncated(order).add(&other.part(i)))
            .collect();
        LogSeries { parts }
    }

    /// Partwise difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Partwise negation.
    pub fn neg(&self) -> Self {
        LogSeries {
            parts: self.parts.iter().map(TruncatedSeries::neg).collect(),
        }
    }

    /// Multiplication by a plain series, partwise.
    pub fn mul_series(&self, f: &TruncatedSeries) -> Self {
        LogSeries {
            parts: self.parts.iter().map(|p| p.mul(f)).collect(),
        }
    }

    /// Division by a unit plain series, partwise.
    pub fn div_series(&self, f: &TruncatedSeries) -> Result<Self, SeriesError> {
        let parts = self
            .parts
            .iter()
            .map(|p| p.div(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LogSeries { parts })
    }
}

impl fmt::Display for LogSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, " + [{p}]*log(z)^{i}/{i}!")?;
            } else {
                write!(f, "[{p}]")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::rat;

    fn s(order: usize, coeffs: &[i64]) -> TruncatedSeries {
        TruncatedSeries::from_i64(order, coeffs)
    }

    #[test]
    fn theta_of_log_z_is_one() {
        // s = log z: parts (0, 1)
        let l = LogSeries::new(vec![TruncatedSeries::zero(5), TruncatedSeries::one(5)]);
        let t = l.theta();
        assert_eq!(t.part(0), TruncatedSeries::one(5));
        assert!(t.part(1).is_zero());
    }

    #[test]
    fn theta_mixes_adjacent_parts() {
        // s = z·log z: θs = z·log z + z
        let l = LogSeries::new(vec![TruncatedSeries::zero(4), s(4, &[0, 1])]);
        let t = l.theta();
        assert_eq!(t.part(0), s(4, &[0, 1]));
        assert_eq!(t.part(1), s(4, &[0, 1]));
    }

    #[test]
    fn theta_respects_factorial_normalization() {
        // s = (log z)²/2!: parts (0,0,1); θs = log z = part-1 value 1
        let l = LogSeries::new(vec![
            TruncatedSeries::zero(3),
            TruncatedSeries::zero(3),
            TruncatedSeries::one(3),
        ]);
        let t = l.theta();
        assert!(t.part(0).is_zero());
        assert_eq!(t.part(1), TruncatedSeries::one(3));
        assert!(t.part(2).is_zero());
    }

    #[test]
    fn log_degree_ignores_zero_tail() {
        let l = LogSeries::new(vec![s(3, &[1]), TruncatedSeries::zero(3)]);
        assert_eq!(l.log_degree(), 0);
        assert_eq!(l.depth(), 1);
    }

    #[test]
    fn division_by_unit_series_is_partwise() {
        let f = s(6, &[1, 2, 3]);
        let l = LogSeries::new(vec![f.mul(&s(6, &[5, 1])), f.clone()]);
        let q = l.div_series(&f).unwrap();
        assert_eq!(q.part(0), s(6, &[5, 1]));
        assert_eq!(q.part(1), TruncatedSeries::one(6));
    }

    #[test]
    fn orders_meet_at_minimum() {
        let l = LogSeries::new(vec![s(9, &[1]), s(4, &[2])]);
        assert_eq!(l.order(), 4);
        assert_eq!(l.part(0), TruncatedSeries::constant(4, rat(1)));
    }

    #[test]
    fn zero_detection() {
        assert!(LogSeries::zero(5, 3).is_zero());
        let l = LogSeries::new(vec![TruncatedSeries::zero(5), s(5, &[0, 1])]);
        assert!(!l.is_zero());
    }
}
