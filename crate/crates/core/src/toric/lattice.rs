//! The rank-3 lattice underlying the resolution geometry.
//!
//! Rays live in ℤ³, but the relevant lattice is the index-5 sublattice
//! N = { n ∈ ℤ³ : n₁ + n₂ + n₃ ≡ 0 (mod 5) }, with basis
//! B = ((1,1,3), (0,1,4), (0,0,5)). Unimodularity of cones is measured in
//! N-coordinates, which is why a smooth cone has |det| = 5 when its rays
//! are read as plain ℤ³ vectors.

/// A lattice point, as plain integer coordinates in ℤ³.
pub type Point = [i64; 3];

/// 3×3 integer determinant of three row vectors.
pub fn det3(a: Point, b: Point, c: Point) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// The index-5 sublattice of ℤ³ cut out by n₁ + n₂ + n₃ ≡ 0 (mod 5).
pub struct IndexFiveLattice;

impl IndexFiveLattice {
    /// A basis of the sublattice; its ℤ³-determinant is the index 5.
    pub const BASIS: [Point; 3] = [[1, 1, 3], [0, 1, 4], [0, 0, 5]];

    /// Whether the point lies in the sublattice.
    pub fn contains(p: Point) -> bool {
        (p[0] + p[1] + p[2]).rem_euclid(5) == 0
    }

    /// Integer coordinates of `p` in [`Self::BASIS`], or `None` when `p`
    /// is not a lattice member.
    pub fn coords(p: Point) -> Option<[i64; 3]> {
        let [b0, b1, b2] = Self::BASIS;
        let d = det3(b0, b1, b2);
        debug_assert_eq!(d, 5);
        let nums = [det3(p, b1, b2), det3(b0, p, b2), det3(b0, b1, p)];
        if nums.iter().any(|n| n % d != 0) {
            return None;
        }
        Some([nums[0] / d, nums[1] / d, nums[2] / d])
    }

    /// Whether `p` is a primitive lattice vector: a member whose basis
    /// coordinates have gcd 1.
    pub fn is_primitive(p: Point) -> bool {
        match Self::coords(p) {
            None => false,
            Some(c) => gcd3(c) == 1,
        }
    }
}

fn gcd3(c: [i64; 3]) -> i64 {
    num::integer::gcd(num::integer::gcd(c[0], c[1]), c[2])
}
