//! mdbook cannot build listings that depend on workspace crates, so each
//! chapter of `book/src` is included here as a module doc and checked by
//! `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/objects.md")]
pub mod objects {}
#[doc = include_str!("../../../book/src/zeta.md")]
pub mod zeta {}
#[doc = include_str!("../../../book/src/functional-equation.md")]
pub mod functional_equation {}
#[doc = include_str!("../../../book/src/determinants.md")]
pub mod determinants {}
#[doc = include_str!("../../../book/src/symbolic.md")]
pub mod symbolic {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
