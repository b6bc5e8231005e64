//! Regular p-gon tiled surfaces, their unfoldings, and the relationship between
//! the monodromy group of the unfolding and the rotation group of the surface.
//!
//! The crate is organised bottom-up:
//!
//! * [`permgroup`] is a small deterministic permutation-group engine
//!   (Schreier–Sims base and strong generating set, membership, normality,
//!   quotients).
//! * [`surface`] holds the combinatorial gluing of regular p-gons, its
//!   invariants, duals and rotation group.
//! * [`unfolding`] builds the rotation cocycle, the unfolded cover, its
//!   monodromy group over the (double) p-gon and the deck transformations.
//! * [`theorems`] ties the two together and produces a [`VerificationReport`].
//! * [`catalog`] and [`io`] provide built-in surfaces and the JSON file format.

pub mod catalog;
pub mod error;
pub mod io;
pub mod permgroup;
pub mod surface;
pub mod theorems;
pub mod unfolding;

pub use error::{Error, Result};
pub use permgroup::{PermError, Permutation, PermutationGroup, QuotientGroup};
pub use surface::{Pair, SchlafliSymbol, TiledSurface, ValidationError};
pub use theorems::{full_report, VerificationReport};
pub use unfolding::{unfold, UnfoldedSurface};

/// Greatest common divisor of two non-negative integers.
pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
