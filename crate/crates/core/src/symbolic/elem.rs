//! Elements of the presented Grothendieck ring: finite rational combinations
//! of monomials in typed atoms.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Signed;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::ring::{QAlgebra, Ring};

/// How an atom's exponents are normalized.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum AtomClass {
    /// A line: any integer exponent.
    Invertible,
    /// An order-two character: exponent 0 or 1.
    Artin,
    /// A generator with a λ-table, or a free symbol: nonnegative exponents.
    Table,
}

/// Atoms order by name first, which fixes the monomial order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom {
    name: Arc<str>,
    class: AtomClass,
}

impl Atom {
    pub fn new(name: &str, class: AtomClass) -> Self {
        Atom { name: name.into(), class }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn class(&self) -> AtomClass {
        self.class
    }
}

/// A product of atom powers in normal form: no zero exponents, Artin
/// exponents in `{0, 1}`, table exponents positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(BTreeMap<Atom, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn atom(a: &Atom) -> Self {
        Monomial::one().times(a, 1).expect("exponent 1 is always valid")
    }

    /// Multiplies by `a^e`; fails if a table exponent would become negative.
    pub fn times(mut self, a: &Atom, e: i64) -> Result<Self> {
        let slot = self.0.entry(a.clone()).or_insert(0);
        *slot += e;
        if a.class == AtomClass::Artin {
            *slot = slot.rem_euclid(2);
        }
        if a.class == AtomClass::Table && *slot < 0 {
            return Err(Error::Malformed(format!("negative exponent of {}", a.name)));
        }
        if *slot == 0 {
            self.0.remove(a);
        }
        Ok(self)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (a, &e) in &rhs.0 {
            out = out.times(a, e).expect("product of normal monomials");
        }
        out
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Whether every atom is a line or an Artin character.
    pub fn is_unit(&self) -> bool {
        self.0.keys().all(|a| a.class != AtomClass::Table)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_unit() {
            return None;
        }
        let mut out = Monomial::one();
        for (a, &e) in &self.0 {
            out = out.times(a, -e).ok()?;
        }
        Some(out)
    }

    /// `self^e`; negative `e` needs a unit.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut out = Monomial::one();
        for (a, &x) in &base.0 {
            out = out.times(a, x * e.abs()).ok()?;
        }
        Some(out)
    }

    pub fn exponent(&self, name: &str) -> i64 {
        self.0.iter().find(|(a, _)| a.name() == name).map_or(0, |(_, &e)| e)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Atom, i64)> {
        self.0.iter().map(|(a, &e)| (a, e))
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.0.iter().map(|(a, e)| (a.name().to_string(), json!(e))).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, (a, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" * ")?;
            }
            f.write_str(a.name())?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// An element of the presented ring in normal form: no zero coefficients,
/// terms in monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct K0Elem {
    terms: BTreeMap<Monomial, Rat>,
}

impl K0Elem {
    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut out = K0Elem::default();
        out.push(c, m);
        out
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Rat::one(), m)
    }

    pub fn atom(a: &Atom) -> Self {
        Self::monomial(Monomial::atom(a))
    }

    fn push(&mut self, c: Rat, m: Monomial) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The monomial when `self` is a single unit monomial with coefficient 1.
    pub fn as_unit_monomial(&self) -> Option<&Monomial> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() && m.is_unit() => Some(m),
            _ => None,
        }
    }

    /// The term list `[[coefficient, {atom: exponent}], …]`.
    pub fn to_json(&self) -> Value {
        Value::Array(self.terms.iter().map(|(m, c)| json!([fmt_rat(c), m.to_json()])).collect())
    }

    /// Inverse of [`K0Elem::to_json`]; `lookup` resolves atom names.
    pub fn from_json(v: &Value, lookup: &dyn Fn(&str) -> Result<Atom>) -> Result<Self> {
        let bad = || Error::Malformed(format!("ring element: {v}"));
        let mut raw = Vec::new();
        for t in v.as_array().ok_or_else(bad)? {
            let pair = t.as_array().filter(|p| p.len() == 2).ok_or_else(bad)?;
            let c = parse_rat(pair[0].as_str().ok_or_else(bad)?)?;
            let mut factors = Vec::new();
            for (name, e) in pair[1].as_object().ok_or_else(bad)? {
                factors.push((lookup(name)?, e.as_i64().ok_or_else(bad)?));
            }
            raw.push((c, factors));
        }
        k0_normalize(&raw)
    }
}

/// Normal form of a raw combination `Σ c·Π atomᵉ`: merges like monomials,
/// applies `A² = 1` to Artin atoms and drops zeros. Fails only on a negative
/// total exponent of a table atom.
pub fn k0_normalize(raw: &[(Rat, Vec<(Atom, i64)>)]) -> Result<K0Elem> {
    let mut out = K0Elem::default();
    for (c, factors) in raw {
        let mut exps: BTreeMap<&Atom, i64> = BTreeMap::new();
        for (a, e) in factors {
            *exps.entry(a).or_default() += e;
        }
        let mut m = Monomial::one();
        for (a, e) in exps {
            m = m.times(a, e)?;
        }
        out.push(c.clone(), m);
    }
    Ok(out)
}

impl Ring for K0Elem {
    fn zero() -> Self {
        K0Elem::default()
    }

    fn one() -> Self {
        K0Elem::monomial(Monomial::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.push(c.clone(), m.clone());
        }
        out
    }

    fn neg(&self) -> Self {
        K0Elem { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = K0Elem::default();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.push(x * y, a.mul(b));
            }
        }
        out
    }

    fn from_i64(n: i64) -> Self {
        K0Elem::term(Rat::from_integer(n.into()), Monomial::one())
    }

    fn unit_inverse(&self) -> Option<Self> {
        let (m, c) = self.terms.iter().next()?;
        if self.terms.len() != 1 {
            return None;
        }
        Some(K0Elem::term(c.recip(), m.inverse()?))
    }
}

impl QAlgebra for K0Elem {
    fn from_rat(r: &Rat) -> Self {
        K0Elem::term(r.clone(), Monomial::one())
    }

    fn scale(&self, r: &Rat) -> Self {
        let mut out = K0Elem::default();
        for (m, c) in &self.terms {
            out.push(c * r, m.clone());
        }
        out
    }
}

impl fmt::Display for K0Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            match (m.is_one(), mag.is_one()) {
                (true, _) => f.write_str(&fmt_rat(&mag))?,
                (false, true) => write!(f, "{m}")?,
                (false, false) => write!(f, "{} * {m}", fmt_rat(&mag))?,
            }
        }
        Ok(())
    }
}
