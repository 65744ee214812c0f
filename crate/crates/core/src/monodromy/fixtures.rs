//! Built-in monodromy data of the quintic mirror family and the report
//! that re-derives and verifies every structural statement about it.
//!
//! The two generators act on the integral period vector Π = (G₁, G₂, z₁, z₂):
//! a rank-one unipotent `conifold` matrix T and an `order_five` matrix A
//! with A⁵ = I. The product T_∞ = T⁻¹A⁻¹ is the maximally unipotent
//! monodromy at large complex structure; its logarithm, powers, cohomology
//! transport, adapted integral basis, and weight filtration are all pinned
//! here to independently computed values and rechecked from scratch by
//! [`quintic_mirror_report`].

use std::fmt;

use num::Signed;

use crate::exact_series::{rat, ratio, Rational};
use crate::monodromy::basis::{
    basis_ambiguity_grid, good_integral_basis, image_dimensions, square_action_identity,
    SymplecticStructure,
};
use crate::monodromy::filtration::{
    filtration_shift_property, graded_isomorphism_property, weight_filtration,
};
use crate::monodromy::matrix::SquareMatrix;
use crate::monodromy::nilpotent::{nilpotent_exp, nilpotent_log};

/// The built-in generators and structure matrices.
#[derive(Debug, Clone)]
pub struct MonodromyData {
    /// T: the rank-one unipotent monodromy about the discriminant.
    pub conifold: SquareMatrix,
    /// A: the finite monodromy about the orbifold point, A⁵ = I.
    pub order_five: SquareMatrix,
    /// The intersection pairing, standard symplectic in this basis.
    pub pairing: SymplecticStructure,
    /// Unimodular change to coordinates (·, ·, w₁, w₂) = (·, ·, 2G₁−z₁, G₂)
    /// in which T_∞ acts on (w₁, w₂) as the unit upper-triangular shift.
    pub w_basis: SquareMatrix,
}

impl MonodromyData {
    /// T_∞ = T⁻¹·A⁻¹: the maximally unipotent monodromy.
    pub fn maximally_unipotent(&self) -> SquareMatrix {
        self.conifold
            .inverse()
            .expect("T is unimodular")
            .mul(&self.order_five.inverse().expect("A is unimodular"))
    }

    /// diag(1, 1, −1, −1): converts the period-vector action M into the
    /// cohomology action D·Mᵀ·D (the two dual slots pick up a sign).
    pub fn duality_signs(&self) -> SquareMatrix {
        SquareMatrix::from_i64_rows(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 0],
            &[0, 0, -1, 0],
            &[0, 0, 0, -1],
        ])
    }
}

/// The built-in quintic monodromy data.
pub fn builtin_data() -> MonodromyData {
    MonodromyData {
        conifold: SquareMatrix::from_i64_rows(&[
            &[1, 0, 0, 0],
            &[0, 1, 0, 1],
            &[0, 0, 1, 0],
            &[0, 0, 0, 1],
        ]),
        order_five: SquareMatrix::from_i64_rows(&[
            &[-9, -3, 5, 3],
            &[0, 1, 0, -1],
            &[-20, -5, 11, 5],
            &[-15, 5, 8, -4],
        ]),
        pairing: SymplecticStructure::standard(4),
        w_basis: SquareMatrix::from_i64_rows(&[
            &[-1, 0, 0, 0],
            &[0, 0, 0, 1],
            &[2, 0, -1, 0],
            &[0, 1, 0, 0],
        ]),
    }
}

/// One named verification with its outcome and a human-readable detail.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The full monodromy verification suite.
#[derive(Debug, Clone, PartialEq)]
pub struct MonodromyReport {
    pub checks: Vec<CheckOutcome>,
}

impl MonodromyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

impl fmt::Display for MonodromyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "[{}] {}: {}",
                if c.passed { "pass" } else { "FAIL" },
                c.name,
                c.detail
            )?;
        }
        write!(
            f,
            "{} of {} checks passed",
            self.checks.iter().filter(|c| c.passed).count(),
            self.checks.len()
        )
    }
}

fn matrix_check(name: &str, computed: &SquareMatrix, expected: &SquareMatrix) -> CheckOutcome {
    match computed.first_difference(expected) {
        None => CheckOutcome {
            name: name.to_string(),
            passed: true,
            detail: format!("all {0}x{0} entries match", computed.size()),
        },
        Some((i, j)) => CheckOutcome {
            name: name.to_string(),
            passed: false,
            detail: format!(
                "entry ({i}, {j}): expected {}, found {}",
                expected.entry(i, j),
                computed.entry(i, j)
            ),
        },
    }
}

fn vector_check(name: &str, computed: &[Rational], expected: &[Rational]) -> CheckOutcome {
    match computed.iter().zip(expected).position(|(a, b)| a != b) {
        None if computed.len() == expected.len() => CheckOutcome {
            name: name.to_string(),
            passed: true,
            detail: format!(
                "({})",
                computed.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
            ),
        },
        pos => CheckOutcome {
            name: name.to_string(),
            passed: false,
            detail: match pos {
                Some(i) => format!(
                    "coordinate {i}: expected {}, found {}",
                    expected[i], computed[i]
                ),
                None => format!(
                    "length mismatch: expected {}, found {}",
                    expected.len(),
                    computed.len()
                ),
            },
        },
    }
}

fn bool_check(name: &str, passed: bool, pass_detail: &str, fail_detail: &str) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed,
        detail: if passed { pass_detail } else { fail_detail }.to_string(),
    }
}

fn value_check(name: &str, computed: &Rational, expected: &Rational) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        passed: computed == expected,
        detail: if computed == expected {
            format!("= {computed}")
        } else {
            format!("expected {expected}, found {computed}")
        },
    }
}

/// The expected T_∞ = T⁻¹A⁻¹.
fn expected_t_infinity() -> SquareMatrix {
    SquareMatrix::from_i64_rows(&[
        &[11, 8, -5, 0],
        &[0, 1, 0, 0],
        &[20, 15, -9, 0],
        &[5, -5, -3, 1],
    ])
}

/// The expected log T_∞.
fn expected_log() -> SquareMatrix {
    SquareMatrix::from_rows(vec![
        vec![rat(10), ratio(11, 2), rat(-5), rat(0)],
        vec![rat(0), rat(0), rat(0), rat(0)],
        vec![rat(20), rat(10), rat(-10), rat(0)],
        vec![rat(10), ratio(-25, 6), ratio(-11, 2), rat(0)],
    ])
}

/// The expected (log T_∞)².
fn expected_log_squared() -> SquareMatrix {
    SquareMatrix::from_i64_rows(&[
        &[0, 5, 0, 0],
        &[0, 0, 0, 0],
        &[0, 10, 0, 0],
        &[-10, 0, 5, 0],
    ])
}

/// The expected (log T_∞)³.
fn expected_log_cubed() -> SquareMatrix {
    SquareMatrix::from_i64_rows(&[
        &[0, 0, 0, 0],
        &[0, 0, 0, 0],
        &[0, 0, 0, 0],
        &[0, -5, 0, 0],
    ])
}

/// The expected nilpotent operator on the cohomology basis (α₁, α₂, β¹, β²).
fn expected_cohomology_operator() -> SquareMatrix {
    SquareMatrix::from_rows(vec![
        vec![rat(10), rat(0), rat(-20), rat(-10)],
        vec![ratio(11, 2), rat(0), rat(-10), ratio(25, 6)],
        vec![rat(5), rat(0), rat(-10), ratio(-11, 2)],
        vec![rat(0), rat(0), rat(0), rat(0)],
    ])
}

/// Recomputes the whole monodromy story from the two generator matrices and
/// verifies every step against independently pinned values.
pub fn quintic_mirror_report() -> MonodromyReport {
    let data = builtin_data();
    let mut checks = Vec::new();
    let identity = SquareMatrix::identity(4);

    // Generator-level facts.
    checks.push(value_check("det(T) = 1", &data.conifold.det(), &rat(1)));
    checks.push(value_check("det(A) = 1", &data.order_five.det(), &rat(1)));
    let t_minus_i = data.conifold.sub(&identity);
    checks.push(bool_check(
        "(T - I)^2 = 0 with rank(T - I) = 1",
        t_minus_i.pow(2).is_zero() && image_dimensions(&t_minus_i)[0] == 1,
        "T is a rank-one unipotent",
        "T does not have the rank-one unipotent shape",
    ));
    checks.push(matrix_check("A^5 = I", &data.order_five.pow(5), &identity));
    checks.push(bool_check(
        "T and A preserve the intersection pairing",
        data.pairing.is_isometry(&data.conifold) && data.pairing.is_isometry(&data.order_five),
        "both generators are J-isometries",
        "a generator fails M^T J M = J",
    ));

    // The maximally unipotent product.
    let t_inf = data.maximally_unipotent();
    checks.push(bool_check(
        "T_inf = T^-1 A^-1 is integral and unimodular",
        t_inf.is_integral() && t_inf.det() == rat(1),
        "integer entries, determinant 1",
        "T_inf is not an integral unimodular matrix",
    ));
    checks.push(matrix_check(
        "T_inf matches its expected value",
        &t_inf,
        &expected_t_infinity(),
    ));
    let u = t_inf.sub(&identity);
    checks.push(bool_check(
        "T_inf is maximally unipotent",
        !u.pow(3).is_zero() && u.pow(4).is_zero(),
        "(T_inf - I)^3 != 0 and (T_inf - I)^4 = 0",
        "unipotency index is not 4",
    ));
    checks.push(bool_check(
        "T_inf preserves the intersection pairing",
        data.pairing.is_isometry(&t_inf),
        "T_inf^T J T_inf = J",
        "T_inf fails the isometry identity",
    ));

    // Logarithm and its powers.
    let n_periods = match nilpotent_log(&t_inf) {
        Ok(m) => m,
        Err(e) => {
            checks.push(bool_check("log T_inf exists", false, "", &e.to_string()));
            return MonodromyReport { checks };
        }
    };
    checks.push(matrix_check(
        "log T_inf matches its expected value",
        &n_periods,
        &expected_log(),
    ));
    checks.push(matrix_check(
        "(log T_inf)^2 matches its expected value",
        &n_periods.pow(2),
        &expected_log_squared(),
    ));
    checks.push(matrix_check(
        "(log T_inf)^3 matches its expected value",
        &n_periods.pow(3),
        &expected_log_cubed(),
    ));
    checks.push(bool_check(
        "(log T_inf)^4 = 0",
        n_periods.pow(4).is_zero(),
        "the logarithm is nilpotent of index 4",
        "(log T_inf)^4 is nonzero",
    ));
    checks.push(matrix_check(
        "exp(log T_inf) = T_inf",
        &nilpotent_exp(&n_periods),
        &t_inf,
    ));
    checks.push(vector_check(
        "(log T_inf)^2 bottom row reads off the periods",
        n_periods.pow(2).row(3),
        &[rat(-10), rat(0), rat(5), rat(0)],
    ));
    checks.push(vector_check(
        "(log T_inf)^3 bottom row reads off the periods",
        n_periods.pow(3).row(3),
        &[rat(0), rat(-5), rat(0), rat(0)],
    ));
    checks.push(bool_check(
        "log T_inf is an infinitesimal isometry",
        data.pairing.is_infinitesimal_isometry(&n_periods),
        "N^T J + J N = 0 on the period basis",
        "the logarithm fails the infinitesimal isometry identity",
    ));

    // The w-coordinates in which T_inf is a shift.
    checks.push(vector_check(
        "w-basis row for w1 = 2*G1 - z1",
        data.w_basis.row(2),
        &[rat(2), rat(0), rat(-1), rat(0)],
    ));
    checks.push(vector_check(
        "w-basis row for w2 = G2",
        data.w_basis.row(3),
        &[rat(0), rat(1), rat(0), rat(0)],
    ));
    checks.push(bool_check(
        "w-basis change is unimodular",
        data.w_basis.is_integral() && data.w_basis.det().abs() == rat(1),
        "integral with determinant -1",
        "the w-basis change is not unimodular",
    ));
    let conjugated = data
        .w_basis
        .mul(&t_inf)
        .mul(&data.w_basis.inverse().expect("w-basis is unimodular"));
    checks.push(vector_check(
        "conjugated T_inf sends w1 to w1 + w2",
        conjugated.row(2),
        &[rat(0), rat(0), rat(1), rat(1)],
    ));
    checks.push(vector_check(
        "conjugated T_inf fixes w2",
        conjugated.row(3),
        &[rat(0), rat(0), rat(0), rat(1)],
    ));

    // Transport to the cohomology basis.
    let d = data.duality_signs();
    let n_cohom = d.mul(&n_periods.transpose()).mul(&d);
    checks.push(matrix_check(
        "cohomology operator matches its expected value",
        &n_cohom,
        &expected_cohomology_operator(),
    ));
    let e3 = [rat(0), rat(0), rat(0), rat(1)];
    checks.push(vector_check(
        "N^2 sends beta2 to 10*alpha1 + 5*beta1",
        &n_cohom.pow(2).mat_vec(&e3),
        &[rat(10), rat(0), rat(5), rat(0)],
    ));
    checks.push(vector_check(
        "N^3 sends beta2 to 5*alpha2",
        &n_cohom.pow(3).mat_vec(&e3),
        &[rat(0), rat(5), rat(0), rat(0)],
    ));
    checks.push(bool_check(
        "cohomology operator is an infinitesimal isometry",
        data.pairing.is_infinitesimal_isometry(&n_cohom),
        "N^T J + J N = 0 on the cohomology basis",
        "the cohomology operator fails the infinitesimal isometry identity",
    ));
    let m_cohom = d.mul(&t_inf.transpose()).mul(&d);
    checks.push(bool_check(
        "cohomology action of T_inf preserves the pairing",
        data.pairing.is_isometry(&m_cohom),
        "(D T_inf^T D)^T J (D T_inf^T D) = J",
        "the transported monodromy fails the isometry identity",
    ));

    // Image flag and the adapted integral basis.
    let dims = image_dimensions(&n_cohom);
    checks.push(bool_check(
        "dim Im N^3 = 1 and dim Im N^2 = 2",
        dims[2] == 1 && dims[1] == 2,
        "the image flag has dimensions (3, 2, 1)",
        "unexpected image dimensions",
    ));
    match good_integral_basis(&n_cohom, &data.pairing) {
        Ok(basis) => {
            checks.push(vector_check(
                "g0 = alpha2",
                &basis.g0,
                &[rat(0), rat(1), rat(0), rat(0)],
            ));
            checks.push(vector_check(
                "g1 = 2*alpha1 + beta1",
                &basis.g1,
                &[rat(2), rat(0), rat(1), rat(0)],
            ));
            checks.push(value_check("lambda = 5", &basis.lambda, &rat(5)));
            checks.push(value_check("m = 1", &basis.m, &rat(1)));
            checks.push(bool_check(
                "square action identity holds on all basis vectors",
                square_action_identity(&n_cohom, &data.pairing, &basis),
                "N^2/lambda = -<g1,.>g0 + <g0,.>g1",
                "the square action identity fails",
            ));
            checks.push(bool_check(
                "basis ambiguity grid preserves lambda and m",
                basis_ambiguity_grid(&n_cohom, &data.pairing, &basis, -2, 2),
                "all (k, sign) variants for k in -2..=2 are good bases",
                "an ambiguity-grid variant fails",
            ));
        }
        Err(e) => {
            checks.push(bool_check("good integral basis exists", false, "", &e.to_string()));
        }
    }

    // Weight filtration in both representations.
    let expected_dims = vec![1usize, 1, 2, 2, 3, 3, 4];
    match (weight_filtration(&n_cohom, 3), weight_filtration(&n_periods, 3)) {
        (Ok(wf_cohom), Ok(wf_periods)) => {
            checks.push(bool_check(
                "weight filtration dims are (1,1,2,2,3,3,4) in both representations",
                wf_cohom.dims() == expected_dims && wf_periods.dims() == expected_dims,
                "cohomology and period representations agree",
                &format!(
                    "found {:?} and {:?}",
                    wf_cohom.dims(),
                    wf_periods.dims()
                ),
            ));
            checks.push(bool_check(
                "filtration axioms hold",
                filtration_shift_property(&n_cohom, &wf_cohom)
                    && graded_isomorphism_property(&n_cohom, &wf_cohom),
                "N W_k <= W_{k-2} and N^k induces graded isomorphisms",
                "a filtration axiom fails",
            ));
        }
        (a, b) => {
            let msg = [a.err(), b.err()]
                .into_iter()
                .flatten()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            checks.push(bool_check("weight filtration exists", false, "", &msg));
        }
    }

    MonodromyReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_full_report_passes() {
        let report = quintic_mirror_report();
        for c in &report.checks {
            assert!(c.passed, "failed check '{}': {}", c.name, c.detail);
        }
        assert!(report.all_passed());
        assert!(report.failures().is_empty());
        assert_eq!(report.checks.len(), 36);
    }

    #[test]
    fn report_is_fast() {
        let start = std::time::Instant::now();
        let _ = quintic_mirror_report();
        assert!(start.elapsed().as_millis() < 1000, "report must run in under a second");
    }

    #[test]
    fn fixture_matrices_have_the_stated_shapes() {
        let data = builtin_data();
        assert_eq!(data.conifold.size(), 4);
        assert!(data.order_five.pow(5).is_identity());
        assert!(data.w_basis.det().abs() == rat(1));
        let t_inf = data.maximally_unipotent();
        assert_eq!(t_inf, expected_t_infinity());
    }

    #[test]
    fn report_names_the_first_differing_entry() {
        let wrong = SquareMatrix::identity(2);
        let right = SquareMatrix::from_i64_rows(&[&[1, 0], &[3, 1]]);
        let outcome = matrix_check("example", &wrong, &right);
        assert!(!outcome.passed);
        assert_eq!(outcome.detail, "entry (1, 0): expected 3, found 0");
        let vec_outcome = vector_check("example", &[rat(1), rat(2)], &[rat(1), rat(5)]);
        assert!(!vec_outcome.passed);
        assert_eq!(vec_outcome.detail, "coordinate 1: expected 5, found 2");
    }

    #[test]
    fn display_prints_one_line_per_check() {
        let report = quintic_mirror_report();
        let text = report.to_string();
        assert_eq!(text.lines().count(), report.checks.len() + 1);
        assert!(text.contains("[pass]"));
        assert!(text.ends_with("36 of 36 checks passed"));
    }
}
