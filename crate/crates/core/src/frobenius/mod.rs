//! The matrix realization: graded objects with a rational "Frobenius" matrix
//! in each degree.

pub mod class;
pub mod context;
pub mod matrix;
pub mod morphism;
pub mod object;
pub mod random;

pub use class::{weight_of_invertible, K0Class};
pub use context::FrobContext;
pub use matrix::Matrix;
pub use morphism::{det_morphism, FrobMor};
pub use object::{check_weil, ChiStats, FrobObj};
pub use random::{seed_from_env, RandomParams};
