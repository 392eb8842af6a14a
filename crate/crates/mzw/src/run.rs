//! Running whole programs: output capture and exit codes.

use serde_json::Value;

use crate::ast::{Program, Stmt};
use crate::commands::run_command;
use crate::error::CliResult;
use crate::parser::parse_program;
use crate::session::Session;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    /// One JSON record per executed command.
    pub reports: Vec<Value>,
    pub code: i32,
}

impl Outcome {
    fn fail(&mut self, msg: String) {
        self.stderr += &format!("error: {msg}\n");
        self.code = EXIT_ERROR;
    }
}

/// Executes one statement, appending its output.
pub fn exec_stmt(s: &mut Session, stmt: &Stmt, out: &mut Outcome) -> CliResult<()> {
    match stmt {
        Stmt::Let(name, e) => s.bind(name, e)?,
        Stmt::SetBackend(b) => s.set_backend(*b)?,
        Stmt::SetQ(q) => s.set_q(q.clone())?,
        Stmt::Command(c) => {
            let r = run_command(s, c)?;
            out.stdout += &format!("> {stmt}\n{}\n", r.text);
            out.reports.push(r.json);
            if r.failed && out.code == EXIT_OK {
                out.code = EXIT_CHECK_FAILED;
            }
        }
    }
    Ok(())
}

/// Runs statements in order and stops at the first error (exit code 2).
/// Failed checks do not stop the run; they set exit code 1.
pub fn run_program(s: &mut Session, p: &Program) -> Outcome {
    let mut out = Outcome::default();
    for stmt in &p.stmts {
        if let Err(e) = exec_stmt(s, stmt, &mut out) {
            out.fail(format!("in `{stmt}`: {e}"));
            break;
        }
    }
    out
}

pub fn run_source(s: &mut Session, src: &str) -> Outcome {
    match parse_program(src) {
        Ok(p) => run_program(s, &p),
        Err(e) => {
            let mut out = Outcome::default();
            out.fail(format!("parse error at {e}"));
            out
        }
    }
}
