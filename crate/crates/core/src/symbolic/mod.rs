//! Symbolic backend: a presented λ-ring over typed atoms.
//!
//! Atoms are declared in a [`Registry`]: the Lefschetz line `L`, order-two
//! Artin characters, and generators carrying a finite table of their
//! exterior or symmetric powers. Classes are [`K0Elem`]s in normal form and
//! objects are [`SymObject`]s built from declared atoms.

pub mod c1;
pub mod elem;
pub mod object;
pub mod packs;
pub mod realize;
pub mod registry;

pub use c1::{c1_normal_form, C1Form};
pub use elem::{k0_normalize, Atom, AtomClass, K0Elem, Monomial};
pub use object::{RootExpr, Summand, SymObject, SymbolicContext};
pub use realize::Realization;
pub use registry::{AtomDecl, AtomKind, GenTable, Registry, LEFSCHETZ};
