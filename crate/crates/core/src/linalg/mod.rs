//! Exact integer and rational linear algebra: determinants, rank, Hermite
//! normal form lattice bases, nonnegative rational solving, and lattice-point
//! enumeration in half-open parallelepipeds.

mod det;
mod hnf;
mod lp;
mod para;
mod solve;
mod vec;

pub use det::{det, det_in_span, rank};
pub use hnf::{hnf, hnf_with_transform, in_lattice, HnfDecomposition, LatticeBasis};
pub use lp::{cone_membership, positive_functional};
pub use para::parallelepiped_points;
pub use solve::{annihilator, clear_denominators, solve_exact};
pub use vec::{IntVector, RationalVector};
