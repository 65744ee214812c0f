//! Rational-curve counts extracted from the normalized coupling.
//!
//! The coupling expands as κ = 5 + Σ_k n_k·k³·q^k/(1−q^k); collecting powers
//! of q gives the triangular system a_d = Σ_{k|d} n_k·k³, solved exactly by
//! forward substitution. A second, independent solver via Möbius inversion
//! (n_d·d³ = Σ_{k|d} μ(d/k)·a_k) must agree — the system is triangular with
//! unit-free diagonal d³, so its solution is unique.
//!
//! Invariants:
//! - extract ∘ predict and predict ∘ extract are exact identities
//! - every n_k for k ≤ 10 is a positive integer (observed; non-integrality
//!   is an error because it falsifies the upstream computation)

use std::fmt;

use num::{BigInt, Signed, Zero};

use crate::exact_series::{rat, Rational};
use crate::yukawa::CouplingSeries;

/// One extracted count with its residual check flags.
#[derive(Debug, Clone, PartialEq)]
pub struct InstantonEntry {
    pub degree: usize,
    pub count: BigInt,
    pub positive: bool,
}

/// The table of counts n₁..n_K.
#[derive(Debug, Clone, PartialEq)]
pub struct InstantonTable {
    pub entries: Vec<InstantonEntry>,
}

impl InstantonTable {
    /// The count for a degree, when present.
    pub fn count(&self, degree: usize) -> Option<&BigInt> {
        self.entries
            .iter()
            .find(|e| e.degree == degree)
            .map(|e| &e.count)
    }
}

/// Errors from count extraction.
#[derive(Debug, Clone, PartialEq)]
pub enum InstantonError {
    /// A quotient that must be an integer was not; signals an upstream bug.
    NonIntegralInstanton { degree: usize, value: Rational },
}

impl fmt::Display for InstantonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstantonError::NonIntegralInstanton { degree, value } => {
                write!(f, "count n_{degree} = {value} is not an integer")
            }
        }
    }
}

impl std::error::Error for InstantonError {}

/// Solves a_d = Σ_{k|d} n_k·k³ for the counts by forward substitution.
///
/// Panics unless a₀ = 5 and the order is at least 1.
pub fn extract_instanton_numbers(c: &CouplingSeries) -> Result<InstantonTable, InstantonError> {
    assert_eq!(c.a[0], rat(5), "coupling must start at the topological value 5");
    assert!(c.order >= 1, "need at least one positive-degree coefficient");
    let mut entries: Vec<InstantonEntry> = Vec::with_capacity(c.order);
    for d in 1..=c.order {
        let mut numerator = c.a[d].clone();
        for e in &entries {
            if d % e.degree == 0 {
                let k = e.degree as i64;
                numerator -= Rational::from_integer(&e.count * BigInt::from(k * k * k));
            }
        }
        let value = numerator / rat((d as i64).pow(3));
        if !value.is_integer() {
            return Err(InstantonError::NonIntegralInstanton { degree: d, value });
        }
        let count = value.to_integer();
        entries.push(InstantonEntry {
            degree: d,
            positive: count.is_positive(),
            count,
        });
    }
    Ok(InstantonTable { entries })
}

/// Independent solver: n_d = (1/d³)·Σ_{k|d} μ(d/k)·a_k.
pub fn extract_by_moebius(c: &CouplingSeries) -> Result<InstantonTable, InstantonError> {
    assert_eq!(c.a[0], rat(5), "coupling must start at the topological value 5");
    assert!(c.order >= 1, "need at least one positive-degree coefficient");
    let mut entries = Vec::with_capacity(c.order);
    for d in 1..=c.order {
        let mut numerator = Rational::zero();
        for k in 1..=d {
            if d % k == 0 {
                numerator += rat(moebius(d / k)) * &c.a[k];
            }
        }
        let value = numerator / rat((d as i64).pow(3));
        if !value.is_integer() {
            return Err(InstantonError::NonIntegralInstanton { degree: d, value });
        }
        let count = value.to_integer();
        entries.push(InstantonEntry {
            degree: d,
            positive: count.is_positive(),
            count,
        });
    }
    Ok(InstantonTable { entries })
}

/// The Möbius function by trial-division factorization.
pub(crate) fn moebius(m: usize) -> i64 {
    let mut m = m;
    let mut sign = 1i64;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Expands 5 + Σ_k n_k·k³·q^k/(1−q^k) through q^K; degrees beyond K are
/// ignored, and missing degrees contribute nothing (an empty table gives the
/// constant series 5).
pub fn predict_coupling_from_instantons(t: &InstantonTable, k: usize) -> CouplingSeries {
    let mut a = vec![Rational::zero(); k + 1];
    a[0] = rat(5);
    for e in &t.entries {
        if e.degree == 0 || e.degree > k {
            continue;
        }
        let d = e.degree as i64;
        let weight = Rational::from_integer(&e.count * BigInt::from(d * d * d));
        let mut pos = e.degree;
        while pos <= k {
            a[pos] += &weight;
            pos += e.degree;
        }
    }
    CouplingSeries { order: k, a }
}

/// Pass/fail record for one degree of the divisor-sum system.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeAudit {
    pub degree: usize,
    pub numerator: Rational,
    pub divisible: bool,
}

/// The full divisibility audit of a coupling/table pair.
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub degrees: Vec<DegreeAudit>,
    pub a2_minus_n1_div_8: bool,
    pub a3_minus_n1_div_27: bool,
}

impl AuditReport {
    pub fn all_pass(&self) -> bool {
        self.degrees.iter().all(|d| d.divisible)
            && self.a2_minus_n1_div_8
            && self.a3_minus_n1_div_27
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.degrees {
            writeln!(
                f,
                "degree {}: numerator {} {} by {}^3",
                d.degree,
                d.numerator,
                if d.divisible { "divisible" } else { "NOT divisible" },
                d.degree
            )?;
        }
        writeln!(
            f,
            "(a_2 - n_1) mod 8 == 0: {}",
            if self.a2_minus_n1_div_8 { "pass" } else { "FAIL" }
        )?;
        write!(
            f,
            "(a_3 - n_1) mod 27 == 0: {}",
            if self.a3_minus_n1_div_27 { "pass" } else { "FAIL" }
        )
    }
}

/// Checks that each degree's numerator is divisible by d³, plus the two
/// printed low-degree congruences (a₂ − n₁) ≡ 0 mod 8 and
/// (a₃ − n₁) ≡ 0 mod 27.
///
/// Panics if the coupling order is below 3 (the congruences need a₂, a₃).
pub fn divisibility_audit(c: &CouplingSeries, t: &InstantonTable) -> AuditReport {
    assert!(c.order >= 3, "audit needs coefficients through q^3");
    let mut degrees = Vec::with_capacity(c.order);
    for d in 1..=c.order {
        let mut numerator = c.a[d].clone();
        for e in &t.entries {
            if e.degree < d && d % e.degree == 0 {
                let k = e.degree as i64;
                numerator -= Rational::from_integer(&e.count * BigInt::from(k * k * k));
            }
        }
        let divisible = (&numerator / rat((d as i64).pow(3))).is_integer();
        degrees.push(DegreeAudit {
            degree: d,
            numerator,
            divisible,
        });
    }
    let n1 = t
        .count(1)
        .map(|n| Rational::from_integer(n.clone()))
        .unwrap_or_else(Rational::zero);
    let div_by = |x: &Rational, m: i64| (x / rat(m)).is_integer();
    let d2 = &c.a[2] - &n1;
    let d3 = &c.a[3] - &n1;
    AuditReport {
        degrees,
        a2_minus_n1_div_8: div_by(&d2, 8),
        a3_minus_n1_div_27: div_by(&d3, 27),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_series::rat_str;
    use crate::yukawa::normalized_yukawa_q_expansion;

    fn coupling(values: &[&str]) -> CouplingSeries {
        CouplingSeries {
            order: values.len() - 1,
            a: values.iter().map(|v| rat_str(v)).collect(),
        }
    }

    #[test]
    fn classical_low_degrees() {
        let c = coupling(&["5", "2875", "4876875", "8564575000"]);
        let t = extract_instanton_numbers(&c).unwrap();
        assert_eq!(*t.count(1).unwrap(), BigInt::from(2875));
        assert_eq!(*t.count(2).unwrap(), BigInt::from(609250));
        assert_eq!(*t.count(3).unwrap(), BigInt::from(317206375));
        // 27·n₃ + n₁ = a₃ exactly
        assert_eq!(
            BigInt::from(27) * t.count(3).unwrap() + t.count(1).unwrap(),
            BigInt::from(8564575000i64)
        );
    }

    #[test]
    fn counts_through_degree_ten() {
        let c = normalized_yukawa_q_expansion(10).unwrap();
        let t = extract_instanton_numbers(&c).unwrap();
        let expect = [
            "2875",
            "609250",
            "317206375",
            "242467530000",
            "229305888887625",
            "248249742118022000",
            "295091050570845659250",
            "375632160937476603550000",
            "503840510416985243645106250",
            "704288164978454686113488249750",
        ];
        for (i, e) in expect.iter().enumerate() {
            let d = i + 1;
            assert_eq!(*t.count(d).unwrap(), rat_str(e).to_integer(), "n_{d}");
            assert!(t.entries[i].positive, "n_{d} positive");
        }
    }

    #[test]
    fn moebius_solver_agrees() {
        let c = normalized_yukawa_q_expansion(10).unwrap();
        assert_eq!(
            extract_instanton_numbers(&c).unwrap(),
            extract_by_moebius(&c).unwrap()
        );
    }

    #[test]
    fn moebius_function_values() {
        let expect = [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(moebius(i + 1), *e, "mu({})", i + 1);
        }
    }

    #[test]
    fn predict_from_single_degree() {
        let t = InstantonTable {
            entries: vec![InstantonEntry {
                degree: 1,
                count: BigInt::from(2875),
                positive: true,
            }],
        };
        let c = predict_coupling_from_instantons(&t, 1);
        assert_eq!(c.a, vec![rat(5), rat(2875)]);
    }

    #[test]
    fn predict_from_empty_table() {
        let t = InstantonTable { entries: vec![] };
        let c = predict_coupling_from_instantons(&t, 4);
        assert_eq!(c.a, vec![rat(5), rat(0), rat(0), rat(0), rat(0)]);
    }

    #[test]
    fn round_trips_are_exact() {
        let c = normalized_yukawa_q_expansion(10).unwrap();
        let t = extract_instanton_numbers(&c).unwrap();
        assert_eq!(predict_coupling_from_instantons(&t, 10), c);

        let made_up = InstantonTable {
            entries: (1..=6)
                .map(|d| InstantonEntry {
                    degree: d,
                    count: BigInt::from(100 * d as i64 - 350),
                    positive: d > 3,
                })
                .collect(),
        };
        let c2 = predict_coupling_from_instantons(&made_up, 6);
        assert_eq!(extract_instanton_numbers(&c2).unwrap(), made_up);
    }

    #[test]
    fn non_integral_count_is_an_error() {
        let c = coupling(&["5", "2875", "4876876"]);
        let err = extract_instanton_numbers(&c).unwrap_err();
        match err {
            InstantonError::NonIntegralInstanton { degree, value } => {
                assert_eq!(degree, 2);
                assert_eq!(value, rat_str("4874001/8"));
            }
        }
    }

    #[test]
    fn audit_passes_on_computed_data() {
        let c = normalized_yukawa_q_expansion(10).unwrap();
        let t = extract_instanton_numbers(&c).unwrap();
        let report = divisibility_audit(&c, &t);
        assert!(report.all_pass());
        assert_eq!(report.degrees.len(), 10);
        // degree 1 is trivially divisible by 1³
        assert!(report.degrees[0].divisible);
    }

    #[test]
    fn audit_flags_broken_congruences() {
        let good = coupling(&["5", "2875", "4876875", "8564575000"]);
        let t = extract_instanton_numbers(&good).unwrap();
        let bad = coupling(&["5", "2875", "4876876", "8564575001"]);
        let report = divisibility_audit(&bad, &t);
        assert!(!report.a2_minus_n1_div_8);
        assert!(!report.a3_minus_n1_div_27);
        assert!(!report.all_pass());
        let shown = report.to_string();
        assert!(shown.contains("NOT divisible"));
        assert!(shown.contains("FAIL"));
    }

    #[test]
    fn printed_congruences_hold() {
        // (4876875 − 2875)/8 = 609250 and (8564575000 − 2875)/27 exactly
        assert_eq!((rat(4876875) - rat(2875)) / rat(8), rat(609250));
        assert!(((rat_str("8564575000") - rat(2875)) / rat(27)).is_integer());
    }
}
