//! The two subdivision mechanisms used by the resolution pipeline.
//!
//! [`blowup`] realizes one blowup step as a regular subdivision: inside
//! each cell, the retained points keep height 0 and the blowup centers are
//! pushed down to height −1; the cells of the refined fan are the lower
//! faces of the lifted configuration. Centers that coincide with existing
//! vertices are pushed down too, which is exactly what makes the final
//! small-resolution step (centers = already-present rays) split the
//! remaining quadrilaterals without adding rays.
//!
//! [`star_subdivide`] is the textbook sequential star subdivision: each ray
//! in turn replaces every cell containing it by the joins of the ray with
//! the cell's far edges. It is order-dependent on non-simplicial fans and
//! generally coarser bookkeeping than the height construction, but on
//! simplicial fans inserting an existing ray is the identity.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::exact_series::{rat, ratio};
use crate::toric::fan::{orientation, slice_coords, Cell, Fan};
use crate::toric::lattice::Point;

/// Errors from star subdivision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubdivideError {
    /// The ray to insert lies outside the support of the fan.
    RayOutsideSupport { ray: Point },
}

impl fmt::Display for SubdivideError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubdivideError::RayOutsideSupport { ray } => {
                write!(
                    f,
                    "ray ({}, {}, {}) lies outside the fan support",
                    ray[0], ray[1], ray[2]
                )
            }
        }
    }
}

impl std::error::Error for SubdivideError {}

/// Refines every cell by the regular subdivision induced by heights 0 on
/// retained points and −1 on the given centers.
pub fn blowup(fan: &Fan, centers: &[Point]) -> Fan {
    let mut cells = Vec::new();
    for cell in fan.cells() {
        cells.extend(subdivide_cell(cell, centers));
    }
    Fan::new(cells)
}

/// Lower faces of one cell's lifted point configuration.
fn subdivide_cell(cell: &Cell, centers: &[Point]) -> Vec<Cell> {
    let mut pts: Vec<Point> = cell.vertices().to_vec();
    for &c in centers {
        if !pts.contains(&c) && cell.contains(c) {
            pts.push(c);
        }
    }
    let heights: BTreeMap<Point, i64> = pts
        .iter()
        .map(|&p| (p, if centers.contains(&p) { -1 } else { 0 }))
        .collect();
    if heights.values().all(|&h| h == 0) {
        return vec![cell.clone()];
    }
    let mut faces: BTreeSet<Vec<Point>> = BTreeSet::new();
    let m = pts.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let (x1, y1) = slice_coords(pts[i]);
                let (x2, y2) = slice_coords(pts[j]);
                let (x3, y3) = slice_coords(pts[k]);
                let det = (x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1);
                if det == 0 {
                    continue;
                }
                // affine height function through the lifted triple
                let (h1, h2, h3) = (heights[&pts[i]], heights[&pts[j]], heights[&pts[k]]);
                let b = ratio((h2 - h1) * (y3 - y1) - (h3 - h1) * (y2 - y1), det);
                let c = ratio((x2 - x1) * (h3 - h1) - (x3 - x1) * (h2 - h1), det);
                let a = rat(h1) - &b * rat(x1) - &c * rat(y1);
                let value = |p: Point| {
                    let (x, y) = slice_coords(p);
                    &a + &b * rat(x) + &c * rat(y)
                };
                if pts.iter().any(|&p| value(p) > rat(heights[&p])) {
                    continue; // not a lower face
                }
                let equality: Vec<Point> = pts
                    .iter()
                    .copied()
                    .filter(|&p| value(p) == rat(heights[&p]))
                    .collect();
                if equality.len() >= 3 {
                    // filtered in pts order, so equal faces dedup in the set
                    faces.insert(equality);
                }
            }
        }
    }
    let used: BTreeSet<Point> = faces.iter().flatten().copied().collect();
    let all: BTreeSet<Point> = pts.iter().copied().collect();
    assert_eq!(
        used, all,
        "regular subdivision buried a configuration point"
    );
    faces.into_iter().map(|f| Cell::from_points(&f)).collect()
}

/// Sequentially star-subdivides the fan at each ray in order.
pub fn star_subdivide(fan: &Fan, rays: &[Point]) -> Result<Fan, SubdivideError> {
    let mut current: Vec<Cell> = fan.cells().to_vec();
    for &p in rays {
        if !current.iter().any(|c| c.contains(p)) {
            return Err(SubdivideError::RayOutsideSupport { ray: p });
        }
        let mut next = Vec::new();
        for cell in &current {
            if !cell.contains(p) {
                next.push(cell.clone());
                continue;
            }
            let vs = cell.vertices();
            let n = vs.len();
            for i in 0..n {
                let (a, b) = (vs[i], vs[(i + 1) % n]);
                // skip edges whose closure contains the inserted ray
                let collinear =
                    orientation(slice_coords(a), slice_coords(b), slice_coords(p)) == 0;
                let in_box = a[1].min(b[1]) <= p[1]
                    && p[1] <= a[1].max(b[1])
                    && a[2].min(b[2]) <= p[2]
                    && p[2] <= a[2].max(b[2]);
                if collinear && in_box {
                    continue;
                }
                if p == a || p == b {
                    continue;
                }
                next.push(Cell::from_points(&[a, b, p]));
            }
        }
        current = next;
    }
    Ok(Fan::new(current))
}
