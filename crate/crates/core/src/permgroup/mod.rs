//! Exact permutation groups: permutations, Schreier–Sims stabilizer chains,
//! membership, normality, and quotients by normal subgroups.

mod group;
mod perm;
mod quotient;

use thiserror::Error;

pub use group::PermutationGroup;
pub use perm::Permutation;
pub use quotient::{quotient_by_normal, QuotientGroup, MAX_QUOTIENT_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a bijection: point {point} is hit twice")]
    NotBijective { point: usize },
    #[error("malformed cycle notation: {0}")]
    CycleSyntax(String),
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("quotient of order {0} is too large to tabulate")]
    QuotientTooLarge(u128),
}
