//! Integral monodromy of the quintic mirror family, verified exactly.
//!
//! Everything here works over the exact rationals on the rank-4 period
//! lattice: the unipotent logarithm and exponential, reduced-row-echelon
//! subspace arithmetic, the weight filtration of a nilpotent operator, the
//! adapted integral basis (g₀, g₁, λ, m) attached to a maximally unipotent
//! monodromy, and a built-in fixture suite that re-derives every structural
//! claim about the quintic family from its two generator matrices.
//!
//! Invariants:
//! - all computations are exact; equality checks are literal
//! - subspace bases are reduced row-echelon, hence canonical
//! - the fixture report recomputes everything from the generators and
//!   compares against independently pinned matrices entry by entry

pub mod basis;
pub mod filtration;
pub mod fixtures;
pub mod matrix;
pub mod nilpotent;
pub mod subspace;

pub use basis::{
    basis_ambiguity_grid, good_integral_basis, image_dimensions, square_action_identity,
    GoodBasisError, GoodIntegralBasis, SymplecticStructure,
};
pub use filtration::{
    filtration_shift_property, graded_isomorphism_property, weight_filtration, FiltrationError,
    WeightFiltration,
};
pub use fixtures::{
    builtin_data, quintic_mirror_report, CheckOutcome, MonodromyData, MonodromyReport,
};
pub use matrix::SquareMatrix;
pub use nilpotent::{nilpotent_exp, nilpotent_log, NilpotentError};
