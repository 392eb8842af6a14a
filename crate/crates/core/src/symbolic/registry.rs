//! Atom declarations and the registry that validates them.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use serde_json::{json, Value};

use super::elem::{Atom, AtomClass, K0Elem, Monomial};
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Name of the built-in Lefschetz atom.
pub const LEFSCHETZ: &str = "L";

/// λ-data of a generator of rank `dim`: `table[j]` is the class of the `j`-th
/// power that stays finite for the generator's parity (`Sʲ` for a negative
/// generator, `Λʲ` for a positive one).
#[derive(Clone, PartialEq, Debug)]
pub struct GenTable {
    pub dim: usize,
    pub table: Vec<K0Elem>,
    /// The dual as a monomial: one generator to the first power times a unit.
    pub dual_expr: Monomial,
    /// `table[dim]`, the top power.
    pub det_expr: Monomial,
}

#[derive(Clone, PartialEq, Debug)]
pub enum AtomKind {
    InvertibleEven {
        weight: i64,
    },
    ArtinOrder2,
    NegativeGen(GenTable),
    PositiveGen(GenTable),
    /// An opaque symbol without λ-data, such as a curve's `Sⁿ(h¹)` for
    /// `2 ≤ n ≤ g`.
    Free,
}

#[derive(Clone, PartialEq, Debug)]
pub struct AtomDecl {
    pub name: String,
    pub kind: AtomKind,
}

impl AtomDecl {
    pub fn class(&self) -> AtomClass {
        match self.kind {
            AtomKind::InvertibleEven { .. } => AtomClass::Invertible,
            AtomKind::ArtinOrder2 => AtomClass::Artin,
            _ => AtomClass::Table,
        }
    }

    pub fn atom(&self) -> Atom {
        Atom::new(&self.name, self.class())
    }

    /// The table of a generator, with its parity (`true` for odd).
    pub fn gen_table(&self) -> Option<(&GenTable, bool)> {
        match &self.kind {
            AtomKind::NegativeGen(t) => Some((t, true)),
            AtomKind::PositiveGen(t) => Some((t, false)),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let gen = |kind: &str, t: &GenTable| {
            json!({
                "name": self.name,
                "kind": kind,
                "dim": t.dim,
                "table": t.table.iter().map(K0Elem::to_json).collect::<Vec<_>>(),
                "dual": t.dual_expr.to_json(),
                "det": t.det_expr.to_json(),
            })
        };
        match &self.kind {
            AtomKind::InvertibleEven { weight } => json!({"name": self.name, "kind": "invertible", "weight": weight}),
            AtomKind::ArtinOrder2 => json!({"name": self.name, "kind": "artin"}),
            AtomKind::Free => json!({"name": self.name, "kind": "free"}),
            AtomKind::NegativeGen(t) => gen("negative", t),
            AtomKind::PositiveGen(t) => gen("positive", t),
        }
    }
}

/// Immutable-by-convention set of declarations; cloning is cheap.
#[derive(Clone, Debug)]
pub struct Registry {
    decls: BTreeMap<String, Arc<AtomDecl>>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::new()
    }
}

pub(crate) fn monomial_from_json(v: &Value, lookup: &dyn Fn(&str) -> Result<Atom>) -> Result<Monomial> {
    let obj = v.as_object().ok_or_else(|| Error::Malformed(format!("monomial: {v}")))?;
    let mut m = Monomial::one();
    for (name, e) in obj {
        let e = e.as_i64().ok_or_else(|| Error::Malformed(format!("exponent: {e}")))?;
        m = m.times(&lookup(name)?, e)?;
    }
    Ok(m)
}

impl Registry {
    /// A registry holding only the Lefschetz atom `L` of weight 2.
    pub fn new() -> Self {
        let l = AtomDecl { name: LEFSCHETZ.into(), kind: AtomKind::InvertibleEven { weight: 2 } };
        Registry { decls: BTreeMap::from([(l.name.clone(), Arc::new(l))]) }
    }

    pub fn lefschetz(&self) -> Atom {
        Atom::new(LEFSCHETZ, AtomClass::Invertible)
    }

    pub fn get(&self, name: &str) -> Result<&Arc<AtomDecl>> {
        self.decls.get(name).ok_or_else(|| Error::UnknownAtom(name.into()))
    }

    pub fn atom(&self, name: &str) -> Result<Atom> {
        Ok(self.get(name)?.atom())
    }

    pub fn decls(&self) -> impl Iterator<Item = &Arc<AtomDecl>> {
        self.decls.values()
    }

    /// Adds a declaration. Redeclaring an atom identically is a no-op.
    pub fn declare(&mut self, decl: AtomDecl) -> Result<()> {
        if let Some(old) = self.decls.get(&decl.name) {
            return if **old == decl {
                Ok(())
            } else {
                Err(Error::BadDeclaration(format!("{} is already declared differently", decl.name)))
            };
        }
        if let Some((t, odd)) = decl.gen_table() {
            self.check_gen(&decl.name, t, odd)?;
        }
        if let AtomKind::InvertibleEven { weight } = decl.kind {
            if weight % 2 != 0 {
                return Err(Error::BadDeclaration(format!("{} has odd weight {weight}", decl.name)));
            }
        }
        self.decls.insert(decl.name.clone(), Arc::new(decl));
        Ok(())
    }

    fn check_atom(&self, own: &str, a: &Atom) -> Result<()> {
        if a.name() == own {
            return Ok(());
        }
        let declared = self.atom(a.name())?;
        if declared != *a {
            return Err(Error::BadDeclaration(format!("{} used with the wrong kind", a.name())));
        }
        Ok(())
    }

    fn check_gen(&self, name: &str, t: &GenTable, odd: bool) -> Result<()> {
        let bad = |msg: String| Err(Error::BadDeclaration(format!("{name}: {msg}")));
        if t.dim == 0 || t.table.len() != t.dim + 1 {
            return bad(format!("table needs dim + 1 = {} entries", t.dim + 1));
        }
        if !t.table[0].is_one() {
            return bad("table entry 0 must be 1".into());
        }
        let own = Atom::new(name, AtomClass::Table);
        if t.table[1] != K0Elem::atom(&own) {
            return bad("table entry 1 must be the generator itself".into());
        }
        if !t.det_expr.is_unit() || t.table[t.dim] != K0Elem::monomial(t.det_expr.clone()) {
            return bad("the top table entry must equal the unit monomial det".into());
        }
        for e in &t.table {
            for (m, _) in e.terms() {
                for (a, _) in m.factors() {
                    self.check_atom(name, a)?;
                }
            }
        }
        let mut dual_gens = Vec::new();
        for (a, e) in t.dual_expr.factors() {
            self.check_atom(name, a)?;
            if a.class() == AtomClass::Table {
                dual_gens.push((a.name().to_string(), e));
            }
        }
        match dual_gens.as_slice() {
            [(g, 1)] if g == name => Ok(()),
            [(g, 1)] => match self.get(g)?.gen_table() {
                Some((u, o)) if u.dim == t.dim && o == odd => Ok(()),
                _ => bad(format!("dual generator {g} must have the same rank and parity")),
            },
            [] if t.dim == 1 => Ok(()),
            _ => bad("dual must be one generator times a unit".into()),
        }
    }

    /// Declarations needed to rebuild the given atoms, dependencies first.
    pub fn closure<'a>(&self, names: impl IntoIterator<Item = &'a str>) -> Result<Vec<Arc<AtomDecl>>> {
        fn visit(reg: &Registry, name: &str, seen: &mut BTreeSet<String>, out: &mut Vec<Arc<AtomDecl>>) -> Result<()> {
            if !seen.insert(name.to_string()) {
                return Ok(());
            }
            let d = reg.get(name)?;
            if let Some((t, _)) = d.gen_table() {
                let deps = t.table.iter().flat_map(|e| {
                    e.terms().flat_map(|(m, _)| m.factors().map(|(a, _)| a.name().to_string())).collect::<Vec<_>>()
                });
                let deps: Vec<String> = deps.chain(t.dual_expr.factors().map(|(a, _)| a.name().to_string())).collect();
                for dep in deps {
                    if dep != name {
                        visit(reg, &dep, seen, out)?;
                    }
                }
            }
            out.push(d.clone());
            Ok(())
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for n in names {
            visit(self, n, &mut seen, &mut out)?;
        }
        Ok(out)
    }

    /// Parses one declaration, resolving atoms against `self` (and the
    /// declaration's own name).
    pub fn decl_from_json(&self, v: &Value) -> Result<AtomDecl> {
        let bad = || Error::Malformed(format!("declaration: {v}"));
        let name = v["name"].as_str().ok_or_else(bad)?.to_string();
        let kind_s = v["kind"].as_str().ok_or_else(bad)?;
        let lookup = |n: &str| if n == name { Ok(Atom::new(n, AtomClass::Table)) } else { self.atom(n) };
        let gen = || -> Result<GenTable> {
            let table = v["table"]
                .as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|e| K0Elem::from_json(e, &lookup))
                .collect::<Result<_>>()?;
            Ok(GenTable {
                dim: v["dim"].as_u64().ok_or_else(bad)? as usize,
                table,
                dual_expr: monomial_from_json(&v["dual"], &lookup)?,
                det_expr: monomial_from_json(&v["det"], &lookup)?,
            })
        };
        let kind = match kind_s {
            "invertible" => AtomKind::InvertibleEven { weight: v["weight"].as_i64().ok_or_else(bad)? },
            "artin" => AtomKind::ArtinOrder2,
            "free" => AtomKind::Free,
            "negative" => AtomKind::NegativeGen(gen()?),
            "positive" => AtomKind::PositiveGen(gen()?),
            _ => return Err(bad()),
        };
        Ok(AtomDecl { name, kind })
    }

    /// Declares every entry of a JSON declaration list, in order.
    pub fn declare_json(&mut self, list: &Value) -> Result<()> {
        for v in list.as_array().ok_or_else(|| Error::Malformed("declaration list".into()))? {
            let d = self.decl_from_json(v)?;
            self.declare(d)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn line_gen(reg: &Registry) -> AtomDecl {
        let x = Atom::new("X", AtomClass::Table);
        let l = Monomial::atom(&reg.lefschetz());
        AtomDecl {
            name: "X".into(),
            kind: AtomKind::NegativeGen(GenTable {
                dim: 2,
                table: vec![K0Elem::one(), K0Elem::atom(&x), K0Elem::monomial(l.clone())],
                dual_expr: Monomial::atom(&x).mul(&l.inverse().unwrap()),
                det_expr: l,
            }),
        }
    }

    #[test]
    fn declarations_validate_and_round_trip() {
        let mut reg = Registry::new();
        let d = line_gen(&reg);
        reg.declare(d.clone()).unwrap();
        reg.declare(d.clone()).unwrap();
        let back = reg.decl_from_json(&d.to_json()).unwrap();
        assert_eq!(back, d);
        let names: Vec<String> = reg.closure(["X"]).unwrap().iter().map(|d| d.name.clone()).collect();
        assert_eq!(names, vec!["L", "X"]);
    }

    #[test]
    fn bad_tables_are_rejected() {
        let mut reg = Registry::new();
        let mut d = line_gen(&reg);
        if let AtomKind::NegativeGen(t) = &mut d.kind {
            t.table[2] = K0Elem::from_i64(2);
        }
        assert!(matches!(reg.declare(d), Err(Error::BadDeclaration(_))));
        let odd = AtomDecl { name: "M".into(), kind: AtomKind::InvertibleEven { weight: 3 } };
        assert!(reg.declare(odd).is_err());
        let clash = AtomDecl { name: "L".into(), kind: AtomKind::ArtinOrder2 };
        assert!(reg.declare(clash).is_err());
        assert_eq!(reg.atom("nope"), Err(Error::UnknownAtom("nope".into())));
        let _ = rat(0);
    }
}
