//! Abstract syntax and its canonical pretty-printer. Printing a program and
//! parsing the result gives back an equal AST.

use std::fmt;

use mzeta::rat::fmt_rat;
use mzeta::Rat;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq)]
pub struct Program {
    pub stmts: Vec<Stmt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Symbolic,
    Frobenius,
}

impl Backend {
    pub fn keyword(self) -> &'static str {
        match self {
            Backend::Symbolic => "sym",
            Backend::Frobenius => "frob",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Self> {
        match s {
            "sym" | "symbolic" => Some(Backend::Symbolic),
            "frob" | "frobenius" => Some(Backend::Frobenius),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Stmt {
    Let(String, Expr),
    SetBackend(Backend),
    /// `set q RAT;`: the `q` used by `L`, `unit` and `random()`.
    SetQ(Rat),
    Command(Command),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    Unit,
    /// `L^k`; plain `L` is `Lef(1)`.
    Lef(i64),
    Curve {
        weil: Vec<Rat>,
        q: Rat,
    },
    Abelian(Vec<Vec<Rat>>),
    Artin(Vec<Vec<Rat>>),
    Psp(u32, Rat),
    Blowup(Rat),
    Generic(Value),
    Random,
    Sum(Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Dual(Box<Expr>),
    Sym(Box<Expr>, usize),
    Ext(Box<Expr>, usize),
    Det(Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Command {
    Zeta { name: String, order: Option<usize>, classical: bool },
    CheckFunceq { name: String, order: Option<usize> },
    CheckSelfdual { name: String, dim: i64, order: Option<usize> },
    CheckC1 { name: String },
    Det { name: String },
    Class { name: String },
    Count { name: String, from: usize, to: usize },
    Save(String),
    Load(String),
}

/// Words that cannot be bound by `let`.
pub const RESERVED: [&str; 21] = [
    "let", "set", "L", "unit", "curve", "abelian", "artin", "psp", "blowup", "generic", "random", "dual", "sym", "ext",
    "det", "zeta", "check", "class", "count", "save", "load",
];

fn rows(f: &mut fmt::Formatter<'_>, m: &[Vec<Rat>]) -> fmt::Result {
    f.write_str("[")?;
    for (i, r) in m.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        list(f, r)?;
    }
    f.write_str("]")
}

fn list(f: &mut fmt::Formatter<'_>, r: &[Rat]) -> fmt::Result {
    let items: Vec<String> = r.iter().map(fmt_rat).collect();
    write!(f, "[{}]", items.join(", "))
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Sum(..) => 0,
            Expr::Tensor(..) => 1,
            _ => 2,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            f.write_str("(")?;
            self.fmt_at(f, 0)?;
            return f.write_str(")");
        }
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Unit => f.write_str("unit"),
            Expr::Lef(1) => f.write_str("L"),
            Expr::Lef(k) => write!(f, "L^{k}"),
            Expr::Curve { weil, q } => {
                f.write_str("curve(weil=")?;
                list(f, weil)?;
                write!(f, ", q={})", fmt_rat(q))
            }
            Expr::Abelian(m) => {
                f.write_str("abelian(h1=")?;
                rows(f, m)?;
                f.write_str(")")
            }
            Expr::Artin(m) => {
                f.write_str("artin(")?;
                rows(f, m)?;
                f.write_str(")")
            }
            Expr::Psp(n, q) => write!(f, "psp({n}, {})", fmt_rat(q)),
            Expr::Blowup(q) => write!(f, "blowup({})", fmt_rat(q)),
            Expr::Generic(v) => write!(f, "generic({v})"),
            Expr::Random => f.write_str("random()"),
            Expr::Sum(a, b) => {
                a.fmt_at(f, 0)?;
                f.write_str(" + ")?;
                b.fmt_at(f, 1)
            }
            Expr::Tensor(a, b) => {
                a.fmt_at(f, 1)?;
                f.write_str(" * ")?;
                b.fmt_at(f, 2)
            }
            Expr::Dual(x) => write!(f, "dual({x})"),
            Expr::Sym(x, n) => write!(f, "sym({x}, {n})"),
            Expr::Ext(x, n) => write!(f, "ext({x}, {n})"),
            Expr::Det(x) => write!(f, "det({x})"),
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

fn order_flag(order: &Option<usize>) -> String {
    order.map_or(String::new(), |n| format!(" --order {n}"))
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Zeta { name, order, classical } => {
                write!(f, "zeta {name}{}{}", order_flag(order), if *classical { " --classical" } else { "" })
            }
            Command::CheckFunceq { name, order } => write!(f, "check funceq {name}{}", order_flag(order)),
            Command::CheckSelfdual { name, dim, order } => {
                write!(f, "check selfdual {name} --dim {dim}{}", order_flag(order))
            }
            Command::CheckC1 { name } => write!(f, "check c1 {name}"),
            Command::Det { name } => write!(f, "det {name}"),
            Command::Class { name } => write!(f, "class {name}"),
            Command::Count { name, from, to } => write!(f, "count {name} --powers {from}..{to}"),
            Command::Save(p) => write!(f, "save {}", Value::String(p.clone())),
            Command::Load(p) => write!(f, "load {}", Value::String(p.clone())),
        }
    }
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Let(n, e) => write!(f, "let {n} = {e};"),
            Stmt::SetBackend(b) => write!(f, "set backend {};", b.keyword()),
            Stmt::SetQ(q) => write!(f, "set q {};", fmt_rat(q)),
            Stmt::Command(c) => write!(f, "{c};"),
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}
