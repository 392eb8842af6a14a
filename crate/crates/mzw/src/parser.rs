//! Recursive-descent parser for `.mz` programs.

use mzeta::Rat;
use num_bigint::BigInt;
use serde_json::Value;

use crate::ast::{Backend, Command, Expr, Program, Stmt, RESERVED};
use crate::error::ParseError;
use crate::lexer::{tokenize, Pos, Tok, Token};

const CALLS: [&str; 12] =
    ["curve", "abelian", "artin", "psp", "blowup", "generic", "random", "dual", "sym", "ext", "det", "unit"];

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, at: 0 };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        stmts.push(p.stmt()?);
    }
    Ok(Program { stmts })
}

pub fn parse_expr(src: &str) -> Result<Expr, ParseError> {
    let mut p = Parser { toks: tokenize(src)?, at: 0 };
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    at: usize,
}

fn punct(p: &str) -> String {
    format!("`{p}`")
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if t != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn fail<T, S: Into<String>>(&self, expected: impl IntoIterator<Item = S>) -> Result<T, ParseError> {
        Err(ParseError::new(self.pos(), &format!("unexpected {}", self.peek()), expected))
    }

    fn eat(&mut self, p: &str) -> bool {
        if matches!(self.peek(), Tok::Punct(q) if *q == p) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, p: &str) -> Result<(), ParseError> {
        if self.eat(p) {
            Ok(())
        } else {
            self.fail([punct(p)])
        }
    }

    fn expect_eof(&self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Eof => Ok(()),
            _ => self.fail(["end of input"]),
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn word(&mut self, w: &str) -> Result<(), ParseError> {
        if self.is_word(w) {
            self.at += 1;
            Ok(())
        } else {
            self.fail([format!("`{w}`")])
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.at += 1;
                Ok(s)
            }
            Tok::Ident(s) => Err(ParseError::new(self.pos(), &format!("`{s}` is reserved"), ["identifier"])),
            _ => self.fail(["identifier"]),
        }
    }

    fn uint<T: std::str::FromStr>(&mut self) -> Result<T, ParseError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                let pos = self.pos();
                self.at += 1;
                s.parse()
                    .map_err(|_| ParseError::new(pos, &format!("integer `{s}` is out of range"), Vec::<String>::new()))
            }
            _ => self.fail(["integer"]),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let neg = self.eat("-");
        let pos = self.pos();
        let n: i64 = self.uint()?;
        if neg {
            n.checked_neg().ok_or_else(|| ParseError::new(pos, "integer out of range", Vec::<String>::new()))
        } else {
            Ok(n)
        }
    }

    fn big(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(s) => {
                self.at += 1;
                Ok(s.parse().expect("lexer yields digits"))
            }
            _ => self.fail(["integer"]),
        }
    }

    /// `["-"] INT ["/" INT]`
    fn rat(&mut self) -> Result<Rat, ParseError> {
        let neg = self.eat("-");
        let n = self.big()?;
        let d = if self.eat("/") {
            let pos = self.pos();
            let d = self.big()?;
            if d == BigInt::from(0) {
                return Err(ParseError::new(pos, "zero denominator", ["nonzero integer"]));
            }
            d
        } else {
            BigInt::from(1)
        };
        let r = Rat::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn rat_list(&mut self) -> Result<Vec<Rat>, ParseError> {
        self.expect("[")?;
        let mut out = Vec::new();
        if !self.eat("]") {
            loop {
                out.push(self.rat()?);
                if self.eat("]") {
                    break;
                }
                if !self.eat(",") {
                    return self.fail([punct(","), punct("]")]);
                }
            }
        }
        Ok(out)
    }

    fn matrix(&mut self) -> Result<Vec<Vec<Rat>>, ParseError> {
        self.expect("[")?;
        let mut out = Vec::new();
        if !self.eat("]") {
            loop {
                out.push(self.rat_list()?);
                if self.eat("]") {
                    break;
                }
                if !self.eat(",") {
                    return self.fail([punct(","), punct("]")]);
                }
            }
        }
        Ok(out)
    }

    fn keyword_arg(&mut self, key: &str) -> Result<(), ParseError> {
        self.word(key)?;
        self.expect("=")
    }

    fn json(&mut self) -> Result<Value, ParseError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.at += 1;
                Ok(Value::String(s))
            }
            Tok::Int(_) | Tok::Punct("-") => Ok(Value::from(self.int()?)),
            Tok::Ident(w) if matches!(w.as_str(), "true" | "false" | "null") => {
                self.at += 1;
                Ok(match w.as_str() {
                    "true" => Value::Bool(true),
                    "false" => Value::Bool(false),
                    _ => Value::Null,
                })
            }
            Tok::Punct("[") => {
                self.at += 1;
                let mut out = Vec::new();
                if !self.eat("]") {
                    loop {
                        out.push(self.json()?);
                        if self.eat("]") {
                            break;
                        }
                        if !self.eat(",") {
                            return self.fail([punct(","), punct("]")]);
                        }
                    }
                }
                Ok(Value::Array(out))
            }
            Tok::Punct("{") => {
                self.at += 1;
                let mut out = serde_json::Map::new();
                if !self.eat("}") {
                    loop {
                        let key = match self.bump() {
                            Tok::Str(s) => s,
                            _ => {
                                self.at -= 1;
                                return self.fail(["string"]);
                            }
                        };
                        self.expect(":")?;
                        out.insert(key, self.json()?);
                        if self.eat("}") {
                            break;
                        }
                        if !self.eat(",") {
                            return self.fail([punct(","), punct("}")]);
                        }
                    }
                }
                Ok(Value::Object(out))
            }
            _ => self.fail(["string", "integer", "`[`", "`{`", "`true`", "`false`", "`null`"]),
        }
    }

    fn stmt(&mut self) -> Result<Stmt, ParseError> {
        let s = match self.peek().clone() {
            Tok::Ident(w) if w == "let" => {
                self.at += 1;
                let name = self.name()?;
                self.expect("=")?;
                Stmt::Let(name, self.expr()?)
            }
            Tok::Ident(w) if w == "set" => {
                self.at += 1;
                if self.is_word("backend") {
                    self.at += 1;
                    match self.peek().clone() {
                        Tok::Ident(b) if Backend::from_keyword(&b).is_some() => {
                            self.at += 1;
                            Stmt::SetBackend(Backend::from_keyword(&b).expect("checked"))
                        }
                        _ => return self.fail(["`sym`", "`frob`"]),
                    }
                } else if self.is_word("q") {
                    self.at += 1;
                    Stmt::SetQ(self.rat()?)
                } else {
                    return self.fail(["`backend`", "`q`"]);
                }
            }
            Tok::Ident(_) => Stmt::Command(self.command()?),
            _ => return self.fail(["`let`", "`set`", "command"]),
        };
        self.expect(";")?;
        Ok(s)
    }

    /// Parses `--order N`, `--classical`, `--dim d` and `--powers a..b` in
    /// any order, rejecting flags not in `allowed`.
    fn flags(&mut self, allowed: &[&str]) -> Result<Flags, ParseError> {
        let mut f = Flags::default();
        while let Tok::Flag(name) = self.peek().clone() {
            if !allowed.contains(&name.as_str()) {
                let exp: Vec<String> = allowed.iter().map(|a| format!("`--{a}`")).chain([punct(";")]).collect();
                return self.fail(exp);
            }
            self.at += 1;
            match name.as_str() {
                "order" => f.order = Some(self.uint()?),
                "classical" => f.classical = true,
                "dim" => f.dim = Some(self.int()?),
                "powers" => {
                    let a = self.uint()?;
                    self.expect("..")?;
                    f.powers = Some((a, self.uint()?));
                }
                _ => unreachable!("filtered by allowed"),
            }
        }
        Ok(f)
    }

    fn command(&mut self) -> Result<Command, ParseError> {
        let pos = self.pos();
        let w = match self.bump() {
            Tok::Ident(w) => w,
            _ => unreachable!("called on an identifier"),
        };
        let missing = |flag: &str| ParseError::new(pos, &format!("`{w}` needs `--{flag}`"), [format!("`--{flag}`")]);
        Ok(match w.as_str() {
            "zeta" => {
                let name = self.name()?;
                let f = self.flags(&["order", "classical"])?;
                Command::Zeta { name, order: f.order, classical: f.classical }
            }
            "check" => {
                let kind = match self.peek().clone() {
                    Tok::Ident(k) if matches!(k.as_str(), "funceq" | "selfdual" | "c1") => {
                        self.at += 1;
                        k
                    }
                    _ => return self.fail(["`funceq`", "`selfdual`", "`c1`"]),
                };
                let name = self.name()?;
                match kind.as_str() {
                    "funceq" => Command::CheckFunceq { name, order: self.flags(&["order"])?.order },
                    "selfdual" => {
                        let f = self.flags(&["dim", "order"])?;
                        Command::CheckSelfdual { name, dim: f.dim.ok_or_else(|| missing("dim"))?, order: f.order }
                    }
                    _ => Command::CheckC1 { name },
                }
            }
            "det" => Command::Det { name: self.name()? },
            "class" => Command::Class { name: self.name()? },
            "count" => {
                let name = self.name()?;
                let (from, to) = self.flags(&["powers"])?.powers.ok_or_else(|| missing("powers"))?;
                Command::Count { name, from, to }
            }
            "save" | "load" => {
                let path = match self.bump() {
                    Tok::Str(s) => s,
                    _ => {
                        self.at -= 1;
                        return self.fail(["string"]);
                    }
                };
                if w == "save" {
                    Command::Save(path)
                } else {
                    Command::Load(path)
                }
            }
            _ => {
                self.at -= 1;
                return self
                    .fail(["`let`", "`set`", "`zeta`", "`check`", "`det`", "`class`", "`count`", "`save`", "`load`"]);
            }
        })
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.product()?;
        while self.eat("+") {
            lhs = Expr::Sum(Box::new(lhs), Box::new(self.product()?));
        }
        Ok(lhs)
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while self.eat("*") {
            lhs = Expr::Tensor(Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let w = match self.peek().clone() {
            Tok::Punct("(") => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(")")?;
                return Ok(e);
            }
            Tok::Ident(w) => w,
            _ => {
                let exp: Vec<String> = ["identifier", "`L`", "`(`"]
                    .iter()
                    .map(|s| s.to_string())
                    .chain(CALLS.iter().map(|c| format!("`{c}`")))
                    .collect();
                return self.fail(exp);
            }
        };
        self.at += 1;
        if w == "L" {
            return Ok(Expr::Lef(if self.eat("^") { self.int()? } else { 1 }));
        }
        if w == "unit" {
            return Ok(Expr::Unit);
        }
        if !CALLS.contains(&w.as_str()) {
            if RESERVED.contains(&w.as_str()) {
                self.at -= 1;
                return Err(ParseError::new(self.pos(), &format!("`{w}` cannot start an expression"), ["identifier"]));
            }
            return Ok(Expr::Name(w));
        }
        self.expect("(")?;
        let e = match w.as_str() {
            "curve" => {
                self.keyword_arg("weil")?;
                let weil = self.rat_list()?;
                self.expect(",")?;
                self.keyword_arg("q")?;
                Expr::Curve { weil, q: self.rat()? }
            }
            "abelian" => {
                self.keyword_arg("h1")?;
                Expr::Abelian(self.matrix()?)
            }
            "artin" => Expr::Artin(self.matrix()?),
            "psp" => {
                let n = self.uint()?;
                self.expect(",")?;
                Expr::Psp(n, self.rat()?)
            }
            "blowup" => Expr::Blowup(self.rat()?),
            "generic" => Expr::Generic(self.json()?),
            "random" => Expr::Random,
            "dual" => Expr::Dual(Box::new(self.expr()?)),
            "det" => Expr::Det(Box::new(self.expr()?)),
            _ => {
                let x = Box::new(self.expr()?);
                self.expect(",")?;
                let n = self.uint()?;
                if w == "sym" {
                    Expr::Sym(x, n)
                } else {
                    Expr::Ext(x, n)
                }
            }
        };
        self.expect(")")?;
        Ok(e)
    }
}

#[derive(Default)]
struct Flags {
    order: Option<usize>,
    classical: bool,
    dim: Option<i64>,
    powers: Option<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use mzeta::rat::rat;

    #[test]
    fn let_and_precedence() {
        let p = parse_program("let E = curve(weil=[1,0,2], q=2);\nlet X = E * psp(1,2) + L^-1;").unwrap();
        assert_eq!(p.stmts[0], Stmt::Let("E".into(), Expr::Curve { weil: vec![rat(1), rat(0), rat(2)], q: rat(2) }));
        let Stmt::Let(_, e) = &p.stmts[1] else { panic!() };
        let tensor = Expr::Tensor(Box::new(Expr::Name("E".into())), Box::new(Expr::Psp(1, rat(2))));
        assert_eq!(*e, Expr::Sum(Box::new(tensor), Box::new(Expr::Lef(-1))));
    }

    #[test]
    fn commands_and_flags() {
        let p =
            parse_program("zeta P1 --classical --order 3; count E --powers 1..4; check selfdual E --dim 1;").unwrap();
        assert_eq!(p.stmts[0], Stmt::Command(Command::Zeta { name: "P1".into(), order: Some(3), classical: true }));
        assert_eq!(p.stmts[1], Stmt::Command(Command::Count { name: "E".into(), from: 1, to: 4 }));
        assert_eq!(
            p.to_string(),
            "zeta P1 --order 3 --classical;\ncount E --powers 1..4;\ncheck selfdual E --dim 1;\n"
        );
    }

    #[test]
    fn errors_carry_position_and_expectations() {
        let e = parse_program("let E = curve(weil=[1,0,2] q=2);").unwrap_err();
        assert_eq!((e.pos.line, e.pos.col), (1, 28));
        assert!(e.expected.contains("`,`"));
        let e = parse_program("let x = ;").unwrap_err();
        assert!(e.expected.contains("identifier") && e.expected.contains("`curve`"));
        let e = parse_program("check selfdual E;").unwrap_err();
        assert!(e.expected.contains("`--dim`"));
        assert!(parse_program("let det = unit;").is_err());
    }

    #[test]
    fn generic_json_literal() {
        let e = parse_expr(r#"generic({"degrees": {"1": [["0", "-2"], ["1", "0"]]}})"#).unwrap();
        let Expr::Generic(v) = &e else { panic!() };
        assert_eq!(v["degrees"]["1"][0][1], "-2");
        assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }
}
