//! Toric replay of the crepant resolution of the quotient threefold.
//!
//! The mirror construction quotients projective four-space by a finite
//! group of phase symmetries; resolving that quotient is a purely
//! combinatorial process on a fan in an index-five sublattice of ℤ³.
//! Because every relevant ray lies on the plane where the coordinates sum
//! to five, the whole computation reduces to exact integer geometry on a
//! planar slice: cells ([`Cell`]), fans ([`Fan`]), two subdivision
//! mechanisms ([`blowup`], [`star_subdivide`]), and the four-step pipeline
//! ([`resolution_pipeline`]) that ends in a smooth crepant fan of 25
//! unimodular cones on 21 rays.

mod fan;
mod lattice;
mod pipeline;
mod subdivide;

pub use fan::{orientation, slice_coords, Cell, Fan, FanError};
pub use lattice::{det3, IndexFiveLattice, Point};
pub use pipeline::{
    initial_cone, resolution_pipeline, verify_crepant, verify_smooth, PipelineError,
    ResolutionPipeline, CORNERS, STEP_IIA_CENTERS, STEP_IIB_CENTERS, STEP_I_CENTERS,
};
pub use subdivide::{blowup, star_subdivide, SubdivideError};
