//! Cones and fans through their slice-plane picture.
//!
//! Every cone that appears here has its rays on the plane n₁+n₂+n₃ = 5, so
//! the whole fan is faithfully encoded by the planar complex cut out on
//! that slice, drawn in the coordinates (n₂, n₃). A [`Cell`] is one cone's
//! slice: a convex polygon stored as its counterclockwise vertex cycle,
//! rotated to start at the lexicographically smallest vertex — a canonical
//! form, so equality of cells and fans is literal equality.

use std::collections::BTreeMap;
use std::fmt;

use crate::toric::lattice::{det3, IndexFiveLattice, Point};

/// Planar coordinates of a slice point: (n₂, n₃).
pub fn slice_coords(p: Point) -> (i64, i64) {
    (p[1], p[2])
}

/// Orientation of the planar triple (o, a, b): positive for a left turn.
pub fn orientation(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// One cone of the fan, as the convex polygon it cuts on the slice plane.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    vertices: Vec<Point>,
}

impl Cell {
    /// Canonicalizes a vertex set into its counterclockwise convex cycle.
    ///
    /// Panics when fewer than three distinct points are given or when some
    /// point is not a vertex of the convex hull (cells never carry interior
    /// or edge-interior points).
    pub fn from_points(points: &[Point]) -> Cell {
        let mut ps: Vec<Point> = points.to_vec();
        ps.sort();
        ps.dedup();
        assert_eq!(ps.len(), points.len(), "cell vertices must be distinct");
        assert!(ps.len() >= 3, "a cone slice needs at least three vertices");
        // Andrew's monotone chain; the lexicographic sweep order on the
        // 3D points is induced by a positively oriented linear frame on
        // the slice plane, so the chain comes out counterclockwise.
        let mut lower: Vec<Point> = Vec::new();
        for &p in &ps {
            while lower.len() >= 2
                && orientation(
                    slice_coords(lower[lower.len() - 2]),
                    slice_coords(lower[lower.len() - 1]),
                    slice_coords(p),
                ) <= 0
            {
                lower.pop();
            }
            lower.push(p);
        }
        let mut upper: Vec<Point> = Vec::new();
        for &p in ps.iter().rev() {
            while upper.len() >= 2
                && orientation(
                    slice_coords(upper[upper.len() - 2]),
                    slice_coords(upper[upper.len() - 1]),
                    slice_coords(p),
                ) <= 0
            {
                upper.pop();
            }
            upper.push(p);
        }
        lower.pop();
        upper.pop();
        lower.extend(upper);
        assert_eq!(
            lower.len(),
            ps.len(),
            "cell vertices must be in convex position"
        );
        let min_at = lower
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| **p)
            .map(|(i, _)| i)
            .expect("nonempty");
        lower.rotate_left(min_at);
        Cell { vertices: lower }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_triangle(&self) -> bool {
        self.vertices.len() == 3
    }

    pub fn is_quad(&self) -> bool {
        self.vertices.len() == 4
    }

    /// Undirected boundary edges, each as an ordered (min, max) pair.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| canonical_edge(self.vertices[i], self.vertices[(i + 1) % n]))
            .collect()
    }

    /// Twice the slice-plane area (positive: the cycle is counterclockwise).
    pub fn doubled_area(&self) -> i64 {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let (x1, y1) = slice_coords(self.vertices[i]);
                let (x2, y2) = slice_coords(self.vertices[(i + 1) % n]);
                x1 * y2 - x2 * y1
            })
            .sum()
    }

    /// Whether `p` lies in the closed cell.
    pub fn contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orientation(
                slice_coords(self.vertices[i]),
                slice_coords(self.vertices[(i + 1) % n]),
                slice_coords(p),
            ) >= 0
        })
    }

    /// Whether `p` lies on the cell boundary.
    pub fn boundary_contains(&self, p: Point) -> bool {
        let n = self.vertices.len();
        self.contains(p)
            && (0..n).any(|i| {
                orientation(
                    slice_coords(self.vertices[i]),
                    slice_coords(self.vertices[(i + 1) % n]),
                    slice_coords(p),
                ) == 0
            })
    }

    /// The ℤ³ determinant of a triangular cell's rays; ±5 exactly when the
    /// cone is unimodular in the index-5 lattice.
    pub fn ray_determinant(&self) -> Option<i64> {
        if !self.is_triangle() {
            return None;
        }
        Some(det3(self.vertices[0], self.vertices[1], self.vertices[2]))
    }

    /// Whether the cone is smooth for the index-5 lattice: triangular with
    /// the ray coordinates forming a lattice basis.
    pub fn is_smooth_cone(&self) -> bool {
        if !self.is_triangle() {
            return false;
        }
        let coords: Vec<[i64; 3]> = self
            .vertices
            .iter()
            .filter_map(|&p| IndexFiveLattice::coords(p))
            .collect();
        if coords.len() != 3 {
            return false;
        }
        let d = det3(coords[0], coords[1], coords[2]);
        debug_assert_eq!(d * 5, self.ray_determinant().expect("triangle"));
        d.abs() == 1
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({}, {}, {})", p[0], p[1], p[2])?;
        }
        write!(f, "]")
    }
}

pub(crate) fn canonical_edge(a: Point, b: Point) -> (Point, Point) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A fan on the slice plane: a sorted list of canonical cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    cells: Vec<Cell>,
}

/// Validity failures for a slice complex covering the simplex support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FanError {
    NonPositiveArea { cell: Cell },
    WrongTotalArea { found: i64, expected: i64 },
    BadEdgeMultiplicity { count: usize },
    InteriorBoundaryEdge,
    EulerFailure { vertices: usize, edges: usize, faces: usize },
}

impl fmt::Display for FanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FanError::NonPositiveArea { cell } => {
                write!(f, "cell {cell} has non-positive area")
            }
            FanError::WrongTotalArea { found, expected } => {
                write!(f, "cells cover doubled area {found}, expected {expected}")
            }
            FanError::BadEdgeMultiplicity { count } => {
                write!(f, "an edge belongs to {count} cells (must be 1 or 2)")
            }
            FanError::InteriorBoundaryEdge => {
                write!(f, "a single-cell edge does not lie on the support boundary")
            }
            FanError::EulerFailure { vertices, edges, faces } => {
                write!(
                    f,
                    "Euler check failed: V - E + F = {} - {} + {} != 2",
                    vertices, edges, faces
                )
            }
        }
    }
}

impl std::error::Error for FanError {}

impl Fan {
    pub fn new(mut cells: Vec<Cell>) -> Fan {
        cells.sort();
        cells.dedup();
        Fan { cells }
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cone_count(&self) -> usize {
        self.cells.len()
    }

    pub fn quad_count(&self) -> usize {
        self.cells.iter().filter(|c| c.is_quad()).count()
    }

    pub fn is_simplicial(&self) -> bool {
        self.cells.iter().all(|c| c.is_triangle())
    }

    /// All rays (slice vertices), sorted and deduplicated.
    pub fn rays(&self) -> Vec<Point> {
        let mut out: Vec<Point> = self
            .cells
            .iter()
            .flat_map(|c| c.vertices().iter().copied())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All undirected edges, sorted and deduplicated.
    pub fn edges(&self) -> Vec<(Point, Point)> {
        let mut out: Vec<(Point, Point)> = self.cells.iter().flat_map(|c| c.edges()).collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn doubled_area(&self) -> i64 {
        self.cells.iter().map(|c| c.doubled_area()).sum()
    }

    /// Checks that the cells tile the support simplex like a planar
    /// complex: positive areas summing to the support, every edge shared by
    /// at most two cells with single-cell edges on the simplex boundary
    /// (a common vanishing coordinate), and the Euler relation
    /// V − E + (F + 1) = 2 with the outer face counted.
    pub fn validate(&self, expected_doubled_area: i64) -> Result<(), FanError> {
        for cell in &self.cells {
            if cell.doubled_area() <= 0 {
                return Err(FanError::NonPositiveArea { cell: cell.clone() });
            }
        }
        let total = self.doubled_area();
        if total != expected_doubled_area {
            return Err(FanError::WrongTotalArea {
                found: total,
                expected: expected_doubled_area,
            });
        }
        let mut multiplicity: BTreeMap<(Point, Point), usize> = BTreeMap::new();
        for cell in &self.cells {
            for e in cell.edges() {
                *multiplicity.entry(e).or_insert(0) += 1;
            }
        }
        for (&(p, q), &count) in &multiplicity {
            if count > 2 || count == 0 {
                return Err(FanError::BadEdgeMultiplicity { count });
            }
            if count == 1 {
                let on_boundary = (0..3).any(|k| p[k] == 0 && q[k] == 0);
                if !on_boundary {
                    return Err(FanError::InteriorBoundaryEdge);
                }
            }
        }
        let v = self.rays().len();
        let e = multiplicity.len();
        let f = self.cells.len() + 1;
        if v as i64 - e as i64 + f as i64 != 2 {
            return Err(FanError::EulerFailure { vertices: v, edges: e, faces: f });
        }
        Ok(())
    }

    /// Whether every cell of `self` sits inside some cell of `coarser`.
    pub fn refines(&self, coarser: &Fan) -> bool {
        self.cells.iter().all(|fine| {
            coarser
                .cells
                .iter()
                .any(|coarse| fine.vertices().iter().all(|&p| coarse.contains(p)))
        })
    }
}

impl fmt::Display for Fan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cell in &self.cells {
            writeln!(f, "{cell}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_cycle_is_ccw_and_min_first() {
        let cell = Cell::from_points(&[[5, 0, 0], [0, 5, 0], [0, 0, 5]]);
        assert_eq!(cell.vertices(), &[[0, 0, 5], [5, 0, 0], [0, 5, 0]]);
        assert!(cell.doubled_area() > 0);
        // input order is irrelevant
        let again = Cell::from_points(&[[0, 5, 0], [5, 0, 0], [0, 0, 5]]);
        assert_eq!(cell, again);
    }

    #[test]
    fn quad_cells_are_supported() {
        let cell = Cell::from_points(&[[3, 1, 1], [1, 3, 1], [0, 5, 0], [5, 0, 0]]);
        assert!(cell.is_quad());
        assert_eq!(cell.doubled_area(), 7);
    }

    #[test]
    fn areas_by_shoelace() {
        let sigma = Cell::from_points(&[[5, 0, 0], [0, 5, 0], [0, 0, 5]]);
        assert_eq!(sigma.doubled_area(), 25);
        let small = Cell::from_points(&[[3, 1, 1], [1, 3, 1], [1, 1, 3]]);
        assert_eq!(small.doubled_area(), 4);
    }

    #[test]
    #[should_panic(expected = "convex position")]
    fn interior_points_are_rejected() {
        Cell::from_points(&[[5, 0, 0], [0, 5, 0], [0, 0, 5], [1, 2, 2]]);
    }

    #[test]
    #[should_panic(expected = "convex position")]
    fn edge_interior_points_are_rejected() {
        Cell::from_points(&[[5, 0, 0], [0, 5, 0], [0, 0, 5], [4, 1, 0]]);
    }

    #[test]
    #[should_panic(expected = "distinct")]
    fn duplicate_points_are_rejected() {
        Cell::from_points(&[[5, 0, 0], [0, 5, 0], [0, 0, 5], [5, 0, 0]]);
    }

    #[test]
    fn containment_and_boundary() {
        let sigma = Cell::from_points(&[[5, 0, 0], [0, 5, 0], [0, 0, 5]]);
        assert!(sigma.contains([1, 2, 2]));
        assert!(sigma.contains([3, 1, 1]));
        assert!(sigma.contains([4, 1, 0]));
        assert!(!sigma.contains([-1, 3, 3]));
        assert!(sigma.boundary_contains([4, 1, 0]));
        assert!(sigma.boundary_contains([5, 0, 0]));
        assert!(!sigma.boundary_contains([1, 2, 2]));
    }

    #[test]
    fn determinants_and_smoothness() {
        let sigma = Cell::from_points(&[[5, 0, 0], [0, 5, 0], [0, 0, 5]]);
        assert_eq!(sigma.ray_determinant(), Some(125));
        assert!(!sigma.is_smooth_cone());
        let unimodular = Cell::from_points(&[[0, 0, 5], [1, 0, 4], [1, 1, 3]]);
        assert_eq!(unimodular.ray_determinant().map(i64::abs), Some(5));
        assert!(unimodular.is_smooth_cone());
        let quad = Cell::from_points(&[[3, 1, 1], [1, 3, 1], [0, 5, 0], [5, 0, 0]]);
        assert_eq!(quad.ray_determinant(), None);
        assert!(!quad.is_smooth_cone());
    }

    #[test]
    fn fan_collections_are_canonical() {
        let a = Cell::from_points(&[[5, 0, 0], [3, 1, 1], [1, 1, 3], [0, 0, 5]]);
        let b = Cell::from_points(&[[3, 1, 1], [1, 3, 1], [1, 1, 3]]);
        let fan = Fan::new(vec![a.clone(), b.clone(), a.clone()]);
        assert_eq!(fan.cone_count(), 2);
        assert_eq!(fan.cells(), &[a.clone(), b.clone()]);
        let same = Fan::new(vec![b, a]);
        assert_eq!(fan, same);
    }

    #[test]
    fn edges_are_undirected_and_deduplicated() {
        let fan = Fan::new(vec![
            Cell::from_points(&[[5, 0, 0], [0, 5, 0], [1, 1, 3]]),
            Cell::from_points(&[[5, 0, 0], [1, 1, 3], [0, 0, 5]]),
        ]);
        let edges = fan.edges();
        assert_eq!(edges.len(), 5);
        assert!(edges.contains(&canonical_edge([5, 0, 0], [1, 1, 3])));
        assert_eq!(fan.rays().len(), 4);
    }

    #[test]
    fn validation_of_a_good_tiling() {
        let fan = Fan::new(vec![
            Cell::from_points(&[[5, 0, 0], [0, 5, 0], [1, 1, 3]]),
            Cell::from_points(&[[5, 0, 0], [1, 1, 3], [0, 0, 5]]),
            Cell::from_points(&[[0, 5, 0], [0, 0, 5], [1, 1, 3]]),
        ]);
        assert!(fan.validate(25).is_ok());
        assert_eq!(fan.validate(24), Err(FanError::WrongTotalArea { found: 25, expected: 24 }));
    }

    #[test]
    fn validation_catches_holes() {
        // Leave out one of the three triangles: its two interior edges
        // become single-cell edges off the boundary.
        let fan = Fan::new(vec![
            Cell::from_points(&[[5, 0, 0], [0, 5, 0], [1, 1, 3]]),
            Cell::from_points(&[[5, 0, 0], [1, 1, 3], [0, 0, 5]]),
        ]);
        assert_eq!(fan.doubled_area(), 20);
        assert_eq!(fan.validate(20).unwrap_err(), FanError::InteriorBoundaryEdge);
    }

    #[test]
    fn refinement_is_detected() {
        let sigma = Fan::new(vec![Cell::from_points(&[[5, 0, 0], [0, 5, 0], [0, 0, 5]])]);
        let split = Fan::new(vec![
            Cell::from_points(&[[5, 0, 0], [0, 5, 0], [1, 1, 3]]),
            Cell::from_points(&[[5, 0, 0], [1, 1, 3], [0, 0, 5]]),
            Cell::from_points(&[[0, 5, 0], [0, 0, 5], [1, 1, 3]]),
        ]);
        assert!(split.refines(&sigma));
        assert!(!sigma.refines(&split));
        assert!(split.refines(&split));
    }

    #[test]
    fn error_messages_are_descriptive() {
        let err = FanError::WrongTotalArea { found: 20, expected: 25 };
        assert!(err.to_string().contains("20"));
        assert!(err.to_string().contains("25"));
        assert!(FanError::InteriorBoundaryEdge.to_string().contains("boundary"));
    }
}
