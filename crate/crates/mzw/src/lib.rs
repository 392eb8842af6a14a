//! `mzw`: a small language for defining objects in either backend of
//! [`mzeta`] and running zeta, determinant and functional-equation
//! diagnostics on them.

pub mod ast;
pub mod commands;
pub mod error;
pub mod lexer;
pub mod parser;
pub mod run;
pub mod session;

pub use ast::{Backend, Command, Expr, Program, Stmt};
pub use error::{CliError, ParseError};
pub use parser::{parse_expr, parse_program};
pub use run::{run_program, run_source, Outcome};
pub use session::{Object, Session};
