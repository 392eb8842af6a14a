//! Objects of the symbolic backend and their λ-operations.
//!
//! A [`SymObject`] is a list of summands of fixed parity. Each summand is a
//! [`RootExpr`] describing a formal root multiset: leaves are unit monomials
//! (one root) and declared generators (roots whose elementary symmetric
//! functions are the declared table). Exterior and symmetric powers follow
//! the super rule: on an odd summand `Sⁿ` takes elementary and `Λⁿ` complete
//! symmetric functions of the roots.

use std::fmt;
use std::sync::Arc;

use super::elem::{K0Elem, Monomial};
use serde_json::{json, Value};

use super::registry::{monomial_from_json, AtomDecl, AtomKind, Registry};
use crate::engine::{LambdaContext, SignedObject};
use crate::error::{Error, Result};
use crate::newton::{poly_from_power_sums, power_sums_from_poly};
use crate::poly::Poly;
use crate::ring::Ring;
use crate::symfunc::{ps_exterior, ps_symmetric, PowerSumSeq};

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, PartialEq, Debug)]
pub enum RootExpr {
    /// A single root, a unit monomial.
    Line(Monomial),
    Gen(Arc<AtomDecl>),
    Tensor(Box<RootExpr>, Box<RootExpr>),
    /// Products over `i`-element multisets of roots.
    Sym(usize, Box<RootExpr>),
    /// Products over `i`-element subsets of roots.
    Ext(usize, Box<RootExpr>),
}

impl RootExpr {
    fn table(&self) -> Option<&[K0Elem]> {
        match self {
            RootExpr::Gen(d) => d.gen_table().map(|(t, _)| t.table.as_slice()),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            RootExpr::Line(_) => 1,
            RootExpr::Gen(d) => d.gen_table().map_or(0, |(t, _)| t.dim),
            RootExpr::Tensor(a, b) => a.rank() * b.rank(),
            RootExpr::Sym(i, x) => binom(x.rank() + i - 1, *i),
            RootExpr::Ext(i, x) => binom(x.rank(), *i),
        }
    }

    /// `p_1, …, p_count` of the roots.
    pub fn psums(&self, count: usize) -> Result<PowerSumSeq<K0Elem>> {
        Ok(match self {
            RootExpr::Line(m) => {
                PowerSumSeq((1..=count as i64).map(|k| K0Elem::monomial(m.pow(k).expect("positive power"))).collect())
            }
            RootExpr::Gen(_) => {
                let e = self.table().expect("generator leaves carry tables");
                let signed = e.iter().enumerate().map(|(j, x)| if j % 2 == 1 { x.neg() } else { x.clone() }).collect();
                PowerSumSeq(power_sums_from_poly(&Poly::new(signed), count)?)
            }
            RootExpr::Tensor(a, b) => {
                let (pa, pb) = (a.psums(count)?, b.psums(count)?);
                PowerSumSeq(pa.0.iter().zip(&pb.0).map(|(x, y)| x.mul(y)).collect())
            }
            RootExpr::Sym(i, x) => ps_symmetric(&x.psums(i * count)?, *i, count)?,
            RootExpr::Ext(i, x) => ps_exterior(&x.psums(i * count)?, *i, count)?,
        })
    }

    /// `e_0, …, e_rank` of the roots.
    pub fn elementary(&self) -> Result<Vec<K0Elem>> {
        match self {
            RootExpr::Line(m) => return Ok(vec![K0Elem::one(), K0Elem::monomial(m.clone())]),
            RootExpr::Gen(_) => return Ok(self.table().expect("generator leaves carry tables").to_vec()),
            RootExpr::Tensor(a, b) => {
                let twist = |x: &RootExpr, m: &Monomial| -> Result<Vec<K0Elem>> {
                    let e = x.elementary()?;
                    Ok(e.iter()
                        .enumerate()
                        .map(|(j, c)| c.mul(&K0Elem::monomial(m.pow(j as i64).expect("positive power"))))
                        .collect())
                };
                match (a.as_ref(), b.as_ref()) {
                    (x, RootExpr::Line(m)) | (RootExpr::Line(m), x) => return twist(x, m),
                    _ => {}
                }
            }
            _ => {}
        }
        let r = self.rank();
        let p = poly_from_power_sums(&self.psums(r)?.0, r)?;
        Ok(p.coeffs().iter().enumerate().map(|(j, c)| if j % 2 == 1 { c.neg() } else { c.clone() }).collect())
    }

    /// The top elementary function, computed structurally.
    pub fn det(&self) -> Monomial {
        let pow = |m: Monomial, e: usize| m.pow(e as i64).expect("positive power");
        match self {
            RootExpr::Line(m) => m.clone(),
            RootExpr::Gen(d) => d.gen_table().expect("generator leaves carry tables").0.det_expr.clone(),
            RootExpr::Tensor(a, b) => pow(a.det(), b.rank()).mul(&pow(b.det(), a.rank())),
            RootExpr::Sym(i, x) => pow(x.det(), binom(x.rank() + i - 1, i - 1)),
            RootExpr::Ext(i, x) => pow(x.det(), binom(x.rank().saturating_sub(1), i - 1)),
        }
    }

    /// Roots inverted, pushed down to the leaves.
    pub fn dual(&self, reg: &Registry) -> Result<RootExpr> {
        Ok(match self {
            RootExpr::Line(m) => RootExpr::Line(m.inverse().expect("lines are units")),
            RootExpr::Gen(d) => {
                let t = &d.gen_table().expect("generator leaves carry tables").0.dual_expr;
                let mut unit = Monomial::one();
                let mut gen = None;
                for (a, e) in t.factors() {
                    match reg.get(a.name()) {
                        Ok(g) if g.gen_table().is_some() => gen = Some(g.clone()),
                        _ if a.name() == d.name => gen = Some(d.clone()),
                        _ => unit = unit.times(a, e)?,
                    }
                }
                match gen {
                    Some(g) if unit.is_one() => RootExpr::Gen(g),
                    Some(g) => RootExpr::Tensor(Box::new(RootExpr::Gen(g)), Box::new(RootExpr::Line(unit))),
                    None => RootExpr::Line(unit),
                }
            }
            RootExpr::Tensor(a, b) => RootExpr::Tensor(Box::new(a.dual(reg)?), Box::new(b.dual(reg)?)),
            RootExpr::Sym(i, x) => RootExpr::Sym(*i, Box::new(x.dual(reg)?)),
            RootExpr::Ext(i, x) => RootExpr::Ext(*i, Box::new(x.dual(reg)?)),
        })
    }
}

impl RootExpr {
    fn collect_gens<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            RootExpr::Line(m) => out.extend(m.factors().map(|(a, _)| a.name())),
            RootExpr::Gen(d) => out.push(&d.name),
            RootExpr::Tensor(a, b) => {
                a.collect_gens(out);
                b.collect_gens(out);
            }
            RootExpr::Sym(_, x) | RootExpr::Ext(_, x) => x.collect_gens(out),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            RootExpr::Line(m) => json!({ "line": m.to_json() }),
            RootExpr::Gen(d) => json!({ "gen": d.name }),
            RootExpr::Tensor(a, b) => json!({ "tensor": [a.to_json(), b.to_json()] }),
            RootExpr::Sym(i, x) => json!({ "sym": [i, x.to_json()] }),
            RootExpr::Ext(i, x) => json!({ "ext": [i, x.to_json()] }),
        }
    }

    pub fn from_json(reg: &Registry, v: &Value) -> Result<Self> {
        let bad = || Error::Malformed(format!("root expression: {v}"));
        let obj = v.as_object().filter(|o| o.len() == 1).ok_or_else(bad)?;
        let (key, body) = obj.iter().next().ok_or_else(bad)?;
        let pair = || -> Result<(&Value, &Value)> {
            match body.as_array().map(Vec::as_slice) {
                Some([a, b]) => Ok((a, b)),
                _ => Err(bad()),
            }
        };
        let power = || -> Result<(usize, Box<RootExpr>)> {
            let (i, x) = pair()?;
            Ok((i.as_u64().ok_or_else(bad)? as usize, Box::new(RootExpr::from_json(reg, x)?)))
        };
        Ok(match key.as_str() {
            "line" => RootExpr::Line(monomial_from_json(body, &|n| reg.atom(n))?),
            "gen" => {
                let d = reg.get(body.as_str().ok_or_else(bad)?)?;
                if d.gen_table().is_none() {
                    return Err(bad());
                }
                RootExpr::Gen(d.clone())
            }
            "tensor" => {
                let (a, b) = pair()?;
                RootExpr::Tensor(Box::new(RootExpr::from_json(reg, a)?), Box::new(RootExpr::from_json(reg, b)?))
            }
            "sym" => {
                let (i, x) = power()?;
                RootExpr::Sym(i, x)
            }
            "ext" => {
                let (i, x) = power()?;
                RootExpr::Ext(i, x)
            }
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for RootExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootExpr::Line(m) => write!(f, "{m}"),
            RootExpr::Gen(d) => f.write_str(&d.name),
            RootExpr::Tensor(a, b) => write!(f, "({a}) * ({b})"),
            RootExpr::Sym(i, x) => write!(f, "sym({x}, {i})"),
            RootExpr::Ext(i, x) => write!(f, "ext({x}, {i})"),
        }
    }
}

/// `h_0, …, h_n` from `e_0, e_1, …` (missing `e` are zero).
fn complete_from_elementary(e: &[K0Elem], n: usize) -> Vec<K0Elem> {
    let mut h = vec![K0Elem::one()];
    for k in 1..=n {
        let mut acc = K0Elem::zero();
        for i in 1..=k.min(e.len() - 1) {
            let t = e[i].mul(&h[k - i]);
            acc = if i % 2 == 1 { acc.add(&t) } else { acc.sub(&t) };
        }
        h.push(acc);
    }
    h
}

/// Truncates or zero-pads to `n + 1` entries.
fn padded(mut v: Vec<K0Elem>, n: usize) -> Vec<K0Elem> {
    v.resize(n + 1, K0Elem::zero());
    v
}

/// `Σ_{i+j=k} a_i b_j` for `k ≤ n`.
fn convolve(a: &[K0Elem], b: &[K0Elem], n: usize) -> Vec<K0Elem> {
    (0..=n)
        .map(|k| {
            let mut acc = K0Elem::zero();
            for i in 0..=k {
                if !a[i].is_zero() && !b[k - i].is_zero() {
                    acc = acc.add(&a[i].mul(&b[k - i]));
                }
            }
            acc
        })
        .collect()
}

#[derive(Clone, PartialEq, Debug)]
pub struct Summand {
    pub expr: RootExpr,
    pub odd: bool,
}

impl Summand {
    /// Elementary sequence `e_0..e_n`, padded with zeros.
    fn elementary(&self, n: usize) -> Result<Vec<K0Elem>> {
        Ok(padded(self.expr.elementary()?, n))
    }

    fn complete(&self, n: usize) -> Result<Vec<K0Elem>> {
        Ok(complete_from_elementary(&self.expr.elementary()?, n))
    }

    fn sym_classes(&self, n: usize) -> Result<Vec<K0Elem>> {
        if self.odd {
            self.elementary(n)
        } else {
            self.complete(n)
        }
    }

    fn ext_classes(&self, n: usize) -> Result<Vec<K0Elem>> {
        if self.odd {
            self.complete(n)
        } else {
            self.elementary(n)
        }
    }
}

/// A finite direct sum of parity-homogeneous summands.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct SymObject {
    pub summands: Vec<Summand>,
}

impl SymObject {
    pub fn zero() -> Self {
        SymObject::default()
    }

    pub fn summand(expr: RootExpr, odd: bool) -> Self {
        if expr.rank() == 0 {
            return SymObject::zero();
        }
        SymObject { summands: vec![Summand { expr, odd }] }
    }

    /// An even line.
    pub fn line(m: Monomial) -> Self {
        Self::summand(RootExpr::Line(m), false)
    }

    pub fn unit() -> Self {
        Self::line(Monomial::one())
    }

    /// The object carried by a declared atom: a line for invertible and Artin
    /// atoms, the generator itself (with its parity) for table atoms.
    pub fn from_atom(reg: &Registry, name: &str) -> Result<Self> {
        let d = reg.get(name)?;
        Ok(match &d.kind {
            AtomKind::InvertibleEven { .. } | AtomKind::ArtinOrder2 => Self::line(Monomial::atom(&d.atom())),
            AtomKind::NegativeGen(_) => Self::summand(RootExpr::Gen(d.clone()), true),
            AtomKind::PositiveGen(_) => Self::summand(RootExpr::Gen(d.clone()), false),
            AtomKind::Free => return Err(Error::MissingTable { atom: name.into(), n: 1 }),
        })
    }

    pub fn dsum(&self, rhs: &Self) -> Self {
        SymObject { summands: self.summands.iter().chain(&rhs.summands).cloned().collect() }
    }

    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.summands {
            for b in &rhs.summands {
                let expr = match (&a.expr, &b.expr) {
                    (RootExpr::Line(x), RootExpr::Line(y)) => RootExpr::Line(x.mul(y)),
                    (_, RootExpr::Line(y)) if y.is_one() => a.expr.clone(),
                    (RootExpr::Line(x), _) if x.is_one() => b.expr.clone(),
                    _ => RootExpr::Tensor(Box::new(a.expr.clone()), Box::new(b.expr.clone())),
                };
                out.push(Summand { expr, odd: a.odd ^ b.odd });
            }
        }
        SymObject { summands: out }
    }

    /// Super power of a single summand: `Sᵐ` (if `sym`) or `Λᵐ`.
    fn summand_power(s: &Summand, m: usize, sym: bool) -> SymObject {
        if m == 0 {
            return SymObject::unit();
        }
        if m == 1 {
            return SymObject { summands: vec![s.clone()] };
        }
        let odd = s.odd && m % 2 == 1;
        let x = Box::new(s.expr.clone());
        let expr = if sym != s.odd { RootExpr::Sym(m, x) } else { RootExpr::Ext(m, x) };
        SymObject::summand(expr, odd)
    }

    fn power(&self, n: usize, sym: bool) -> SymObject {
        // ⊕ over compositions n = Σ m_k of ⊗_k P^{m_k}(summand_k)
        let mut acc: Vec<SymObject> = vec![SymObject::unit()];
        acc.extend((1..=n).map(|_| SymObject::zero()));
        for s in &self.summands {
            let powers: Vec<SymObject> = (0..=n).map(|m| Self::summand_power(s, m, sym)).collect();
            let mut next = vec![SymObject::zero(); n + 1];
            for (i, a) in acc.iter().enumerate() {
                for (m, p) in powers.iter().enumerate().take(n + 1 - i) {
                    next[i + m] = next[i + m].dsum(&a.tensor(p));
                }
            }
            acc = next;
        }
        acc.swap_remove(n)
    }

    pub fn sym_power(&self, n: usize) -> Self {
        self.power(n, true)
    }

    pub fn ext_power(&self, n: usize) -> Self {
        self.power(n, false)
    }

    pub fn dual(&self, reg: &Registry) -> Result<Self> {
        let summands =
            self.summands.iter().map(|s| Ok(Summand { expr: s.expr.dual(reg)?, odd: s.odd })).collect::<Result<_>>()?;
        Ok(SymObject { summands })
    }

    pub fn even_part(&self) -> Self {
        SymObject { summands: self.summands.iter().filter(|s| !s.odd).cloned().collect() }
    }

    pub fn odd_part(&self) -> Self {
        SymObject { summands: self.summands.iter().filter(|s| s.odd).cloned().collect() }
    }

    pub fn rank(&self) -> usize {
        self.summands.iter().map(|s| s.expr.rank()).sum()
    }

    /// `(χ⁺, χ⁻)`.
    pub fn chi(&self) -> (i64, i64) {
        let (e, o) = (self.even_part().rank() as i64, self.odd_part().rank() as i64);
        (e, -o)
    }

    /// `Λ^{χ⁺}(M⁺) ⊗ S^{-χ⁻}(M⁻)⁻¹`, from the declared determinants.
    pub fn det_monomial(&self) -> Monomial {
        self.summands.iter().fold(Monomial::one(), |acc, s| {
            let d = s.expr.det();
            acc.mul(&if s.odd { d.inverse().expect("determinants are units") } else { d })
        })
    }

    /// The determinant as an object: a line of parity `χ⁻ mod 2`.
    pub fn det(&self) -> Self {
        SymObject::summand(RootExpr::Line(self.det_monomial()), self.chi().1 % 2 != 0)
    }

    pub fn class(&self) -> Result<K0Elem> {
        let mut acc = K0Elem::zero();
        for s in &self.summands {
            acc = acc.add(&s.elementary(1)?[1]);
        }
        Ok(acc)
    }

    pub fn sym_classes(&self, n: usize) -> Result<Vec<K0Elem>> {
        self.summands
            .iter()
            .try_fold(padded(vec![K0Elem::one()], n), |acc, s| Ok(convolve(&acc, &s.sym_classes(n)?, n)))
    }

    pub fn ext_classes(&self, n: usize) -> Result<Vec<K0Elem>> {
        self.summands
            .iter()
            .try_fold(padded(vec![K0Elem::one()], n), |acc, s| Ok(convolve(&acc, &s.ext_classes(n)?, n)))
    }

    pub fn sym_class(&self, n: usize) -> Result<K0Elem> {
        Ok(self.sym_classes(n)?.swap_remove(n))
    }

    pub fn ext_class(&self, n: usize) -> Result<K0Elem> {
        Ok(self.ext_classes(n)?.swap_remove(n))
    }
}

impl SymObject {
    /// Self-contained JSON: the declarations the object depends on (in
    /// dependency order) and its summands.
    pub fn to_json(&self, reg: &Registry) -> Result<Value> {
        let mut names = Vec::new();
        for s in &self.summands {
            s.expr.collect_gens(&mut names);
        }
        let decls = reg.closure(names)?;
        let summands: Vec<Value> =
            self.summands.iter().map(|s| json!({ "expr": s.expr.to_json(), "odd": s.odd })).collect();
        Ok(json!({
            "declarations": decls.iter().map(|d| d.to_json()).collect::<Vec<_>>(),
            "summands": summands,
        }))
    }

    /// Declares the object's atoms in `reg` and rebuilds it.
    pub fn from_json(reg: &mut Registry, v: &Value) -> Result<Self> {
        let bad = || Error::Malformed(format!("symbolic object: {v}"));
        reg.declare_json(v.get("declarations").ok_or_else(bad)?)?;
        let mut summands = Vec::new();
        for s in v.get("summands").and_then(Value::as_array).ok_or_else(bad)? {
            let expr = RootExpr::from_json(reg, s.get("expr").ok_or_else(bad)?)?;
            let odd = s.get("odd").and_then(Value::as_bool).ok_or_else(bad)?;
            summands.push(Summand { expr, odd });
        }
        Ok(SymObject { summands })
    }
}

impl fmt::Display for SymObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return f.write_str("0");
        }
        for (k, s) in self.summands.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "[{}]{}", s.expr, if s.odd { "-" } else { "+" })?;
        }
        Ok(())
    }
}

/// The symbolic λ-ring backend over a registry snapshot.
#[derive(Clone, Debug, Default)]
pub struct SymbolicContext {
    pub registry: Registry,
}

impl SymbolicContext {
    pub fn new(registry: Registry) -> Self {
        SymbolicContext { registry }
    }
}

impl LambdaContext for SymbolicContext {
    type Coeff = K0Elem;
    type Object = SymObject;

    fn split(&self, m: &SymObject) -> SignedObject<SymObject> {
        SignedObject::new(m.even_part(), m.odd_part())
    }

    fn rank(&self, part: &SymObject) -> usize {
        part.rank()
    }

    fn sym_class(&self, m: &SymObject, n: usize) -> Result<K0Elem> {
        m.sym_class(n)
    }

    fn sym_classes(&self, m: &SymObject, n: usize) -> Result<Vec<K0Elem>> {
        m.sym_classes(n)
    }

    fn ext_class(&self, m: &SymObject, n: usize) -> Result<K0Elem> {
        m.ext_class(n)
    }

    fn det_class(&self, m: &SymObject) -> Result<K0Elem> {
        let d = K0Elem::monomial(m.det_monomial());
        match d.as_unit_monomial() {
            Some(_) => Ok(d),
            None => Err(Error::C1ViolationCandidate(d.to_string())),
        }
    }

    fn dual(&self, m: &SymObject) -> Result<SymObject> {
        m.dual(&self.registry)
    }

    fn class_of(&self, m: &SymObject) -> Result<K0Elem> {
        m.class()
    }

    fn lefschetz_class(&self) -> K0Elem {
        K0Elem::atom(&self.registry.lefschetz())
    }
}
