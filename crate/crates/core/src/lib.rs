//! Predicted ranks of Tate classes on products of elliptic curves and
//! abelian surfaces, together with numerical estimates of the pole order of
//! the matching L-function at `s = 1`.
//!
//! The pipeline is: [`motive::build_motive`] splits `H^{2r}(X)(r)` into
//! twisted irreducible pieces, [`galois::predicted_rank`] counts invariants
//! under a declared Sato–Tate group, [`ap`] produces Frobenius data, and
//! [`lfunc`] turns that data into pole-order estimates. [`verify::run`]
//! ties the pieces together.

pub mod ap;
pub mod config;
pub mod error;
pub mod galois;
pub mod lfunc;
pub mod motive;
pub mod rep;
pub mod verify;

pub use error::{Error, Result};
