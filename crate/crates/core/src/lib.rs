//! Exact computation of motivic zeta functions `Z(M, T) = Σ [Sⁿ(M)] Tⁿ`,
//! determinants of finite-dimensional objects, and the determinant-twisted
//! functional equation relating `Z(M*, 1/T)` and `Z(M, T)`.
//!
//! Two backends implement the same λ-ring contract ([`engine::LambdaContext`]):
//!
//! * [`symbolic`]: a presented λ-ring over typed atoms (the Lefschetz class,
//!   order-two Artin classes, curve and abelian-variety generators);
//! * [`frobenius`]: graded objects carrying an invertible rational matrix per
//!   cohomological degree, whose classes are reversed characteristic
//!   polynomials.
//!
//! Every computation is exact; there is no floating point anywhere.

pub mod engine;
pub mod error;
pub mod frobenius;
pub mod newton;
pub mod poly;
pub mod rat;
pub mod ratfun;
pub mod ring;
pub mod series;
pub mod symbolic;
pub mod symfunc;
pub mod zpoly;

pub use error::{Error, Result};
pub use rat::Rat;
pub use ring::{QAlgebra, Ring};
