use std::collections::BTreeSet;
use std::fmt;

use crate::lexer::Pos;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    /// Token descriptions that would have been accepted here.
    pub expected: BTreeSet<String>,
}

impl ParseError {
    pub fn new<S: Into<String>>(pos: Pos, message: &str, expected: impl IntoIterator<Item = S>) -> Self {
        ParseError { pos, message: message.into(), expected: expected.into_iter().map(Into::into).collect() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.pos.line, self.pos.col, self.message)?;
        if !self.expected.is_empty() {
            let list: Vec<&str> = self.expected.iter().map(String::as_str).collect();
            write!(f, "; expected one of {}", list.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("name error: `{0}` is not bound")]
    Name(String),
    #[error("backend error: {0}")]
    Backend(String),
    #[error(transparent)]
    Core(#[from] mzeta::Error),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type CliResult<T> = Result<T, CliError>;
