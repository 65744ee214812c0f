//! The three-step crepant resolution of the quotient fan.
//!
//! The ambient space is the quotient of projective four-space by the group
//! (ℤ/5)³ of phase symmetries. Its fan lives in the index-five sublattice
//! of ℤ³ and is spanned from the single simplicial cone σ on the corner
//! rays (5,0,0), (0,5,0), (0,0,5). Slicing the fan by the plane where the
//! coordinates sum to five turns cones into planar cells, so the entire
//! resolution is a sequence of subdivisions of the triangle σ:
//!
//! * **Step I** blows up the three fixed points of the group action —
//!   centers (3,1,1), (1,3,1), (1,1,3) — leaving one central triangle and
//!   three quadrilaterals.
//! * **Step IIA / IIB** blow up the (proper transforms of the) fixed
//!   curves, inserting the nine mid-edge rays and then the six remaining
//!   boundary rays.
//! * **Step III** passes to a small resolution: re-running the height
//!   construction at the Step I centers splits the six surviving
//!   quadrilaterals along diagonals without adding any ray.
//!
//! The result is the unique fan pinned by the fixtures: 25 unimodular
//! cones on 21 rays, all of coordinate sum five, i.e. a smooth crepant
//! resolution. [`resolution_pipeline`] replays the whole construction and
//! cross-checks every intermediate fan against stored ray and edge sets.

use std::fmt;

use crate::toric::fan::{Cell, Fan, FanError};
use crate::toric::lattice::{IndexFiveLattice, Point};
use crate::toric::subdivide::blowup;

/// Corner rays of the initial cone σ.
pub const CORNERS: [Point; 3] = [[5, 0, 0], [0, 5, 0], [0, 0, 5]];

/// Step I centers: images of the fixed points of the group action.
pub const STEP_I_CENTERS: [Point; 3] = [[3, 1, 1], [1, 3, 1], [1, 1, 3]];

/// Step IIA centers: first round of rays on the fixed curves.
pub const STEP_IIA_CENTERS: [Point; 9] = [
    [2, 1, 2],
    [1, 2, 2],
    [2, 2, 1],
    [4, 0, 1],
    [1, 0, 4],
    [0, 1, 4],
    [0, 4, 1],
    [1, 4, 0],
    [4, 1, 0],
];

/// Step IIB centers: remaining boundary rays on the fixed curves.
pub const STEP_IIB_CENTERS: [Point; 6] = [
    [3, 0, 2],
    [2, 0, 3],
    [0, 2, 3],
    [0, 3, 2],
    [2, 3, 0],
    [3, 2, 0],
];

const FIXTURE_I: &str = include_str!("fixtures/step_i.txt");
const FIXTURE_IIA: &str = include_str!("fixtures/step_iia.txt");
const FIXTURE_IIB: &str = include_str!("fixtures/step_iib.txt");
const FIXTURE_III: &str = include_str!("fixtures/step_iii.txt");

/// Doubled area of the slice triangle of σ.
const SUPPORT_DOUBLED_AREA: i64 = 25;

/// Errors from replaying the resolution pipeline.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    /// A fan failed its internal complex validation.
    InvalidFan { step: &'static str, error: FanError },
    /// A fan disagrees with the stored fixture for that step.
    StepMismatch { step: &'static str, detail: String },
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PipelineError::InvalidFan { step, error } => {
                write!(f, "step {step} produced an invalid fan: {error}")
            }
            PipelineError::StepMismatch { step, detail } => {
                write!(f, "step {step} disagrees with its fixture: {detail}")
            }
        }
    }
}

impl std::error::Error for PipelineError {}

/// The fan of the unresolved quotient: the single cone σ.
pub fn initial_cone() -> Fan {
    Fan::new(vec![Cell::from_points(&CORNERS)])
}

/// All five fans of the resolution, from σ to the smooth final fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolutionPipeline {
    initial: Fan,
    steps: [Fan; 4],
}

impl ResolutionPipeline {
    /// Names accepted by [`ResolutionPipeline::step`], in pipeline order.
    pub const STEP_NAMES: [&'static str; 4] = ["I", "IIA", "IIB", "III"];

    /// The unresolved fan σ.
    pub fn initial(&self) -> &Fan {
        &self.initial
    }

    /// The fan after the named step, or `None` for an unknown name.
    pub fn step(&self, name: &str) -> Option<&Fan> {
        Self::STEP_NAMES
            .iter()
            .position(|&n| n == name)
            .map(|i| &self.steps[i])
    }

    /// The four post-step fans in pipeline order.
    pub fn steps(&self) -> &[Fan; 4] {
        &self.steps
    }

    /// The smooth fan after Step III.
    pub fn final_fan(&self) -> &Fan {
        &self.steps[3]
    }
}

/// Replays the three blowup steps and the small-resolution step, validating
/// every intermediate fan and comparing each against its stored fixture.
pub fn resolution_pipeline() -> Result<ResolutionPipeline, PipelineError> {
    let initial = initial_cone();
    check_fan("sigma", &initial)?;

    let step_i = blowup(&initial, &STEP_I_CENTERS);
    check_fan("I", &step_i)?;
    compare_step("I", &step_i, FIXTURE_I)?;

    let step_iia = blowup(&step_i, &STEP_IIA_CENTERS);
    check_fan("IIA", &step_iia)?;
    compare_step("IIA", &step_iia, FIXTURE_IIA)?;

    let step_iib = blowup(&step_iia, &STEP_IIB_CENTERS);
    check_fan("IIB", &step_iib)?;
    compare_step("IIB", &step_iib, FIXTURE_IIB)?;

    // The small resolution reuses the Step I centers: they are already rays,
    // so the height construction splits quads but inserts nothing new.
    let step_iii = blowup(&step_iib, &STEP_I_CENTERS);
    check_fan("III", &step_iii)?;
    compare_step("III", &step_iii, FIXTURE_III)?;

    Ok(ResolutionPipeline {
        initial,
        steps: [step_i, step_iia, step_iib, step_iii],
    })
}

fn check_fan(step: &'static str, fan: &Fan) -> Result<(), PipelineError> {
    fan.validate(SUPPORT_DOUBLED_AREA)
        .map_err(|error| PipelineError::InvalidFan { step, error })
}

fn compare_step(step: &'static str, fan: &Fan, fixture: &str) -> Result<(), PipelineError> {
    compare_with_fixture(fan, fixture)
        .map_err(|detail| PipelineError::StepMismatch { step, detail })
}

/// True when every cone of the fan is smooth in the index-five lattice.
pub fn verify_smooth(fan: &Fan) -> bool {
    fan.cells().iter().all(Cell::is_smooth_cone)
}

/// True when every ray lies on the coordinate-sum-five plane and is
/// primitive in the index-five lattice, so the subdivision adds no
/// discrepancy.
pub fn verify_crepant(fan: &Fan) -> bool {
    fan.rays()
        .iter()
        .all(|&r| r.iter().sum::<i64>() == 5 && IndexFiveLattice::is_primitive(r))
}

/// Parses a fixture file: a `rays` section of `x y z` lines followed by an
/// `edges` section of `x1 y1 z1 x2 y2 z2` lines.
pub(crate) fn parse_fixture(text: &str) -> (Vec<Point>, Vec<(Point, Point)>) {
    let mut rays = Vec::new();
    let mut edges = Vec::new();
    let mut in_edges = false;
    for line in text.lines() {
        let line = line.trim();
        match line {
            "" | "rays" => continue,
            "edges" => {
                in_edges = true;
                continue;
            }
            _ => {}
        }
        let nums: Vec<i64> = line
            .split_whitespace()
            .map(|w| w.parse().expect("fixture entries must be integers"))
            .collect();
        if in_edges {
            assert_eq!(nums.len(), 6, "edge lines carry six integers");
            edges.push(([nums[0], nums[1], nums[2]], [nums[3], nums[4], nums[5]]));
        } else {
            assert_eq!(nums.len(), 3, "ray lines carry three integers");
            rays.push([nums[0], nums[1], nums[2]]);
        }
    }
    (rays, edges)
}

/// Compares a fan's ray and edge sets against a fixture, reporting the
/// first discrepancy.
pub(crate) fn compare_with_fixture(fan: &Fan, fixture: &str) -> Result<(), String> {
    let (expected_rays, expected_edges) = parse_fixture(fixture);
    let rays = fan.rays();
    let edges = fan.edges();
    if let Some(r) = expected_rays.iter().find(|r| !rays.contains(r)) {
        return Err(format!("missing ray ({}, {}, {})", r[0], r[1], r[2]));
    }
    if let Some(r) = rays.iter().find(|r| !expected_rays.contains(r)) {
        return Err(format!("unexpected ray ({}, {}, {})", r[0], r[1], r[2]));
    }
    if let Some((a, b)) = expected_edges.iter().find(|e| !edges.contains(e)) {
        return Err(format!(
            "missing edge ({}, {}, {})-({}, {}, {})",
            a[0], a[1], a[2], b[0], b[1], b[2]
        ));
    }
    if let Some((a, b)) = edges.iter().find(|e| !expected_edges.contains(e)) {
        return Err(format!(
            "unexpected edge ({}, {}, {})-({}, {}, {})",
            a[0], a[1], a[2], b[0], b[1], b[2]
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::lattice::det3;
    use crate::toric::subdivide::star_subdivide;

    fn pipeline() -> ResolutionPipeline {
        resolution_pipeline().expect("pipeline must replay cleanly")
    }

    #[test]
    fn cell_edge_ray_and_quad_counts_match_at_every_step() {
        let p = pipeline();
        assert_eq!(p.initial().cone_count(), 1);
        assert_eq!(p.initial().doubled_area(), 25);
        let expected = [
            ("I", 4, 3, 6, 9),
            ("IIA", 13, 6, 15, 27),
            ("IIB", 19, 6, 21, 39),
            ("III", 25, 0, 21, 45),
        ];
        for (name, cells, quads, rays, edges) in expected {
            let fan = p.step(name).unwrap();
            assert_eq!(fan.cone_count(), cells, "cells after step {name}");
            assert_eq!(fan.quad_count(), quads, "quads after step {name}");
            assert_eq!(fan.rays().len(), rays, "rays after step {name}");
            assert_eq!(fan.edges().len(), edges, "edges after step {name}");
            assert_eq!(fan.doubled_area(), 25, "area after step {name}");
        }
        assert!(p.step("II").is_none());
    }

    #[test]
    fn final_triangulation_matches_the_pinned_cell_list() {
        let expected: [[Point; 3]; 25] = [
            [[0, 0, 5], [1, 0, 4], [1, 1, 3]],
            [[0, 0, 5], [1, 1, 3], [0, 1, 4]],
            [[0, 1, 4], [1, 1, 3], [1, 2, 2]],
            [[0, 1, 4], [1, 2, 2], [0, 2, 3]],
            [[0, 2, 3], [1, 2, 2], [0, 3, 2]],
            [[0, 3, 2], [1, 2, 2], [0, 4, 1]],
            [[0, 4, 1], [1, 2, 2], [1, 3, 1]],
            [[0, 4, 1], [1, 3, 1], [0, 5, 0]],
            [[0, 5, 0], [1, 3, 1], [1, 4, 0]],
            [[1, 0, 4], [2, 0, 3], [2, 1, 2]],
            [[1, 0, 4], [2, 1, 2], [1, 1, 3]],
            [[1, 1, 3], [2, 1, 2], [1, 2, 2]],
            [[1, 2, 2], [2, 1, 2], [2, 2, 1]],
            [[1, 2, 2], [2, 2, 1], [1, 3, 1]],
            [[1, 3, 1], [2, 2, 1], [1, 4, 0]],
            [[1, 4, 0], [2, 2, 1], [2, 3, 0]],
            [[2, 0, 3], [3, 0, 2], [2, 1, 2]],
            [[2, 1, 2], [3, 0, 2], [4, 0, 1]],
            [[2, 1, 2], [3, 1, 1], [2, 2, 1]],
            [[2, 1, 2], [4, 0, 1], [3, 1, 1]],
            [[2, 2, 1], [3, 1, 1], [4, 1, 0]],
            [[2, 2, 1], [3, 2, 0], [2, 3, 0]],
            [[2, 2, 1], [4, 1, 0], [3, 2, 0]],
            [[3, 1, 1], [4, 0, 1], [5, 0, 0]],
            [[3, 1, 1], [5, 0, 0], [4, 1, 0]],
        ];
        let expected_fan = Fan::new(expected.iter().map(|t| Cell::from_points(t)).collect());
        assert_eq!(*pipeline().final_fan(), expected_fan);
    }

    #[test]
    fn each_step_refines_the_previous_one() {
        let p = pipeline();
        let mut previous = p.initial().clone();
        for fan in p.steps() {
            assert!(fan.refines(&previous));
            previous = fan.clone();
        }
    }

    #[test]
    fn only_the_final_fan_is_smooth() {
        let p = pipeline();
        assert!(!verify_smooth(p.initial()));
        assert!(!verify_smooth(p.step("I").unwrap()));
        assert!(!verify_smooth(p.step("IIA").unwrap()));
        assert!(!verify_smooth(p.step("IIB").unwrap()));
        assert!(verify_smooth(p.final_fan()));
        assert!(p.final_fan().is_simplicial());
    }

    #[test]
    fn every_step_is_crepant() {
        let p = pipeline();
        assert!(verify_crepant(p.initial()));
        for fan in p.steps() {
            assert!(verify_crepant(fan));
        }
    }

    #[test]
    fn the_initial_cone_has_determinant_125_over_the_ambient_lattice() {
        // volume 125 over Z^3, i.e. 125/5 = 25 unimodular pieces in the
        // index-five lattice — exactly the final cone count
        assert_eq!(det3(CORNERS[0], CORNERS[1], CORNERS[2]).abs(), 125);
        let fan = initial_cone();
        let sigma = &fan.cells()[0];
        assert_eq!(sigma.ray_determinant(), Some(125));
        assert!(!sigma.is_smooth_cone());
    }

    #[test]
    fn star_subdivision_at_step_i_rays_reproduces_the_small_resolution() {
        let p = pipeline();
        let starred = star_subdivide(p.step("IIB").unwrap(), &STEP_I_CENTERS).unwrap();
        assert_eq!(starred, *p.final_fan());
        // and on the already-simplicial result it is the identity
        let again = star_subdivide(&starred, &STEP_I_CENTERS).unwrap();
        assert_eq!(again, starred);
    }

    #[test]
    fn sequential_star_subdivision_overshoots_the_height_construction() {
        // star-inserting the Step I rays one at a time cuts the triangle
        // into 7 cells, finer than the 4-cell fan the blowup produces
        let p = pipeline();
        let seq = star_subdivide(p.initial(), &STEP_I_CENTERS).unwrap();
        assert_eq!(seq.cone_count(), 7);
        assert!(seq.is_simplicial());
        assert_eq!(seq.doubled_area(), 25);
        assert_eq!(seq.rays(), p.step("I").unwrap().rays());
        assert!(seq.refines(p.step("I").unwrap()));
        assert_ne!(seq, *p.step("I").unwrap());
    }

    #[test]
    fn fixture_parsing_and_comparison_report_discrepancies() {
        let (rays, edges) = parse_fixture(FIXTURE_I);
        assert_eq!(rays.len(), 6);
        assert_eq!(edges.len(), 9);
        assert_eq!(rays[0], [0, 0, 5]);
        assert_eq!(edges[0], ([0, 0, 5], [0, 5, 0]));

        let p = pipeline();
        let detail = compare_with_fixture(p.step("I").unwrap(), FIXTURE_IIA).unwrap_err();
        assert!(detail.contains("missing ray"), "detail was: {detail}");
        let err = PipelineError::StepMismatch {
            step: "I",
            detail,
        };
        assert!(err.to_string().contains("step I disagrees"));
    }
}
