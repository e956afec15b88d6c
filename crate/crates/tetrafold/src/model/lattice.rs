//! Diamond (tetrahedral) lattice geometry in integer coordinates.
//!
//! Beads live on the diamond lattice: each bond is one of the four
//! tetrahedral directions below, scaled by a sublattice sign that alternates
//! along the chain. Every bond has squared length 3 and every pair of
//! distinct directions meets at arccos(−1/3) ≈ 109.47°.

use std::fmt;
use std::ops::{Add, Neg, Sub};

/// The four tetrahedral bond directions, indexed by turn value t ∈ {0..3}.
///
/// Any two distinct directions have dot product −1; each has squared norm 3.
pub const BOND_DIRECTIONS: [LatticeVec; 4] = [
    LatticeVec { x: 1, y: 1, z: 1 },
    LatticeVec { x: 1, y: -1, z: -1 },
    LatticeVec { x: -1, y: 1, z: -1 },
    LatticeVec { x: -1, y: -1, z: 1 },
];

/// An integer lattice vector (position or displacement).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVec {
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl LatticeVec {
    /// The origin.
    pub const ZERO: LatticeVec = LatticeVec { x: 0, y: 0, z: 0 };

    pub fn new(x: i64, y: i64, z: i64) -> Self {
        LatticeVec { x, y, z }
    }

    /// Dot product.
    pub fn dot(self, other: LatticeVec) -> i64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Squared Euclidean norm (exact integer).
    pub fn norm_sq(self) -> i64 {
        self.dot(self)
    }

    /// Coordinate-parity class: (x + y + z) mod 2. Alternates along a chain,
    /// so beads on opposite parities can never coincide.
    pub fn parity(self) -> i64 {
        (self.x + self.y + self.z).rem_euclid(2)
    }

    /// Coordinates as floats, for geometry downstream.
    pub fn to_f64(self) -> [f64; 3] {
        [self.x as f64, self.y as f64, self.z as f64]
    }
}

impl Add for LatticeVec {
    type Output = LatticeVec;
    fn add(self, rhs: LatticeVec) -> LatticeVec {
        LatticeVec::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for LatticeVec {
    type Output = LatticeVec;
    fn sub(self, rhs: LatticeVec) -> LatticeVec {
        LatticeVec::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for LatticeVec {
    type Output = LatticeVec;
    fn neg(self) -> LatticeVec {
        LatticeVec::new(-self.x, -self.y, -self.z)
    }
}

impl fmt::Display for LatticeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directions_have_norm_three_and_dot_minus_one() {
        for (i, a) in BOND_DIRECTIONS.iter().enumerate() {
            assert_eq!(a.norm_sq(), 3);
            for (j, b) in BOND_DIRECTIONS.iter().enumerate() {
                if i != j {
                    assert_eq!(a.dot(*b), -1, "directions {i} and {j}");
                }
            }
        }
    }

    #[test]
    fn vector_arithmetic() {
        let a = LatticeVec::new(1, 1, 1);
        let b = LatticeVec::new(-1, 1, -1);
        assert_eq!(a - b, LatticeVec::new(2, 0, 2));
        assert_eq!(a + (-a), LatticeVec::ZERO);
        assert_eq!((a - b).norm_sq(), 8);
    }

    #[test]
    fn parity_flips_with_each_direction() {
        for d in BOND_DIRECTIONS {
            assert_eq!((LatticeVec::ZERO + d).parity(), 1);
        }
    }
}
