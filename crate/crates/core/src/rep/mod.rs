//! Exact character calculus for SU(2) and Sp(4).
//!
//! Everything here is integer arithmetic. Characters are Laurent polynomials
//! on a maximal torus; decompositions peel off irreducible characters from
//! the highest weight down.

mod charpoly;
mod sl2;
mod sp4;

pub use charpoly::{CharPoly, Weight, Weight2};
pub use sl2::{clebsch_gordan, tensor_power_decompose, Sl2Rep, TwistedTerm};
pub use sp4::{sp4_decompose_product, Sp4Rep, Sp4Weight};

/// Representations whose torus character can be written down exactly.
pub trait Character {
    type Weight: Weight;

    fn character(&self) -> CharPoly<Self::Weight>;
}

/// Character of `rep` as an exact Laurent polynomial.
pub fn char_of<R: Character>(rep: &R) -> CharPoly<R::Weight> {
    rep.character()
}
