//! Canonical Grothendieck-ring classes of graded Frobenius objects.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{fmt_rat, rat, Rat};
use crate::ratfun::RatFun;
use crate::ring::Ring;
use crate::zpoly::ZPoly;

/// A virtual graded object up to isomorphism: in each degree, the ratio of the
/// reversed characteristic polynomials of its positive and negative parts.
///
/// Each stored part is reduced with numerator and denominator of constant term
/// 1, and trivial parts (`1/1`) are dropped, so equality is per-degree equality
/// of the reduced fractions.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct K0Class {
    parts: BTreeMap<i32, Frac>,
}

type Frac = (ZPoly, ZPoly);

/// `(a.0/a.1)·(b.0/b.1)` for reduced inputs, reduced.
fn frac_mul(a: &Frac, b: &Frac) -> Frac {
    let (an, bd) = ZPoly::cancel(a.0.clone(), b.1.clone());
    let (bn, ad) = ZPoly::cancel(b.0.clone(), a.1.clone());
    (ZPoly::product(&[&an, &bn]), ZPoly::product(&[&ad, &bd]))
}

/// Reversed characteristic polynomial of the tensor product: its roots are
/// all products `αᵢβⱼ`.
pub fn root_product(f: &Poly<Rat>, g: &Poly<Rat>) -> Poly<Rat> {
    ZPoly::root_product(&ZPoly::from_rat(f), &ZPoly::from_rat(g)).to_rat()
}

fn one_frac() -> Frac {
    (ZPoly::one(), ZPoly::one())
}

impl K0Class {
    /// Reduces each degree's fraction with a single cancellation.
    fn from_unreduced(parts: BTreeMap<i32, Frac>) -> Self {
        let mut out = K0Class::zero();
        for (d, (n, m)) in parts {
            out.insert(d, ZPoly::cancel(n, m));
        }
        out
    }

    pub fn zero() -> Self {
        K0Class::default()
    }

    /// Class of the object with reversed characteristic polynomial `p` in
    /// degree `degree`. `p` must have constant term 1.
    pub fn effective(degree: i32, p: Poly<Rat>) -> Self {
        Self::from_fraction(degree, p, Poly::one())
    }

    /// [`K0Class::effective`] for a polynomial already in scaled form.
    pub fn effective_scaled(degree: i32, p: ZPoly) -> Self {
        let mut c = K0Class::zero();
        c.insert(degree, (p, ZPoly::one()));
        c
    }

    /// Class `num/den` in a single degree; both must have constant term 1.
    pub fn from_fraction(degree: i32, num: Poly<Rat>, den: Poly<Rat>) -> Self {
        assert!(num.coeff(0) == rat(1) && den.coeff(0) == rat(1), "constant terms must be 1");
        let mut c = K0Class::zero();
        c.insert(degree, ZPoly::cancel(ZPoly::from_rat(&num), ZPoly::from_rat(&den)));
        c
    }

    /// Invertible class of an eigenvalue `delta` in `degree`.
    pub fn line(degree: i32, delta: Rat) -> Self {
        Self::effective(degree, Poly::linear_factor(delta))
    }

    fn insert(&mut self, degree: i32, f: Frac) {
        if f.0.is_one() && f.1.is_one() {
            self.parts.remove(&degree);
        } else {
            self.parts.insert(degree, f);
        }
    }

    fn frac(&self, degree: i32) -> Frac {
        self.parts.get(&degree).cloned().unwrap_or_else(one_frac)
    }

    /// The reduced fraction of each degree with a nontrivial part.
    pub fn parts(&self) -> BTreeMap<i32, RatFun<Rat>> {
        self.parts.iter().map(|(&d, (n, m))| (d, RatFun { num: n.to_rat(), den: m.to_rat() })).collect()
    }

    /// Degrees with a nontrivial part.
    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.parts.keys().copied()
    }

    /// Virtual dimension per degree (`deg num - deg den`).
    pub fn virtual_dims(&self) -> BTreeMap<i32, i64> {
        self.parts.iter().map(|(&d, (n, m))| (d, n.degree() as i64 - m.degree() as i64)).collect()
    }

    /// `Some((degree, δ))` when the class is that of a single line `1 - δT`.
    pub fn as_line(&self) -> Option<(i32, Rat)> {
        if self.parts.len() != 1 {
            return None;
        }
        let (&d, (n, m)) = self.parts.iter().next()?;
        if !m.is_one() {
            return None;
        }
        Some((d, n.linear_root()?))
    }

    /// Applies `δ ↦ c·δ` to every root of the given degree shift, i.e.
    /// tensors with the line `(shift, c)`.
    pub fn twist(&self, shift: i32, c: &Rat) -> Self {
        let parts = self
            .parts
            .iter()
            .map(|(&d, (n, m))| (d + shift, (n.substitute_scaled(c), m.substitute_scaled(c))))
            .collect();
        K0Class { parts }
    }

    pub fn to_json(&self) -> Value {
        let parts: serde_json::Map<String, Value> = self
            .parts()
            .iter()
            .map(|(d, r)| {
                let enc = |p: &Poly<Rat>| Value::Array(p.coeffs().iter().map(|c| Value::String(fmt_rat(c))).collect());
                (d.to_string(), json!({"num": enc(&r.num), "den": enc(&r.den)}))
            })
            .collect();
        Value::Object(parts)
    }
}

/// Weight of an invertible class (its degree), with a flag set when the
/// weight is odd. Odd weights are legal in the matrix model, e.g. a line in
/// degree 1, but no motive is expected to produce one.
pub fn weight_of_invertible(c: &K0Class) -> Result<(i32, bool)> {
    if c.unit_inverse().is_none() {
        return Err(Error::NotInvertibleClass(c.to_string()));
    }
    let d = c.parts.keys().next().copied().expect("invertible classes are nonzero");
    Ok((d, d % 2 != 0))
}

impl Ring for K0Class {
    fn zero() -> Self {
        K0Class::default()
    }

    fn one() -> Self {
        K0Class::line(0, rat(1))
    }

    fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for &d in rhs.parts.keys() {
            let f = frac_mul(&self.frac(d), &rhs.frac(d));
            out.insert(d, f);
        }
        out
    }

    fn neg(&self) -> Self {
        K0Class { parts: self.parts.iter().map(|(&d, (n, m))| (d, (m.clone(), n.clone()))).collect() }
    }

    fn sum(terms: &[Self]) -> Self {
        let mut acc: BTreeMap<i32, (Vec<&ZPoly>, Vec<&ZPoly>)> = BTreeMap::new();
        for t in terms {
            for (&d, (n, m)) in &t.parts {
                let entry = acc.entry(d).or_default();
                entry.0.push(n);
                entry.1.push(m);
            }
        }
        K0Class::from_unreduced(
            acc.into_iter().map(|(d, (n, m))| (d, (ZPoly::product(&n), ZPoly::product(&m)))).collect(),
        )
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut acc: BTreeMap<i32, (Vec<ZPoly>, Vec<ZPoly>)> = BTreeMap::new();
        for (&i, (an, ad)) in &self.parts {
            for (&j, (bn, bd)) in &rhs.parts {
                let entry = acc.entry(i + j).or_default();
                entry.0.push(ZPoly::root_product(an, bn));
                entry.0.push(ZPoly::root_product(ad, bd));
                entry.1.push(ZPoly::root_product(an, bd));
                entry.1.push(ZPoly::root_product(ad, bn));
            }
        }
        let prod = |v: &[ZPoly]| ZPoly::product(&v.iter().collect::<Vec<_>>());
        K0Class::from_unreduced(acc.into_iter().map(|(d, (n, m))| (d, (prod(&n), prod(&m)))).collect())
    }

    fn from_i64(n: i64) -> Self {
        let p = ZPoly::from_rat(&Poly::linear_factor(rat(1)).pow_poly(n.unsigned_abs() as usize));
        let mut out = K0Class::zero();
        out.insert(0, if n >= 0 { (p, ZPoly::one()) } else { (ZPoly::one(), p) });
        out
    }

    fn unit_inverse(&self) -> Option<Self> {
        if self.parts.len() != 1 {
            return None;
        }
        let (&d, (n, m)) = self.parts.iter().next()?;
        if m.is_one() {
            Some(K0Class::line(-d, n.linear_root()?.recip()))
        } else if n.is_one() {
            Some(K0Class::line(-d, m.linear_root()?.recip()).neg())
        } else {
            None
        }
    }
}

impl Poly<Rat> {
    fn pow_poly(&self, e: usize) -> Self {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (d, r)) in self.parts().iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{d}: ")?;
            if r.den.is_one() {
                write!(f, "{}", r.num)?;
            } else if r.num.is_one() {
                write!(f, "1/({})", r.den)?;
            } else {
                write!(f, "({})/({})", r.num, r.den)?;
            }
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    #[test]
    fn ring_axioms_on_small_classes() {
        let a = K0Class::effective(0, p(&[1, -3, 2]));
        let b = K0Class::effective(1, p(&[1, 0, 2]));
        let one = K0Class::one();
        assert_eq!(a.mul(&one), a);
        assert_eq!(a.add(&a.neg()), K0Class::zero());
        assert_eq!(a.add(&b).sub(&b), a);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(K0Class::from_i64(2), one.add(&one));
        assert_eq!(K0Class::from_i64(-1), one.neg());
    }

    #[test]
    fn root_products() {
        // {1,2} × {3} = {3,6}
        assert_eq!(root_product(&p(&[1, -3, 2]), &p(&[1, -3])), p(&[1, -9, 18]));
        // {1,2} × {1,2} = {1,2,2,4}
        let sq = root_product(&p(&[1, -3, 2]), &p(&[1, -3, 2]));
        assert_eq!(sq, p(&[1, -1]).mul(&p(&[1, -2])).mul(&p(&[1, -2])).mul(&p(&[1, -4])));
    }

    #[test]
    fn lines_are_units() {
        let l = K0Class::line(2, rat(2));
        let inv = l.unit_inverse().unwrap();
        assert_eq!(inv, K0Class::line(-2, crate::rat::frac(1, 2)));
        assert_eq!(l.mul(&inv), K0Class::one());
        let neg = l.neg();
        assert_eq!(neg.mul(&neg.unit_inverse().unwrap()), K0Class::one());
        assert!(K0Class::effective(0, p(&[1, -3, 2])).unit_inverse().is_none());
        // (1 + A)(1 - A) = 0 where A has eigenvalue -1
        let a = K0Class::line(0, rat(-1));
        assert_eq!(K0Class::one().add(&a).mul(&K0Class::one().sub(&a)), K0Class::zero());
    }

    #[test]
    fn weights() {
        assert_eq!(weight_of_invertible(&K0Class::line(2, rat(2))), Ok((2, false)));
        assert_eq!(weight_of_invertible(&K0Class::line(1, rat(1)).neg()), Ok((1, true)));
        assert!(weight_of_invertible(&K0Class::effective(0, p(&[1, -3, 2]))).is_err());
    }

    #[test]
    fn display() {
        let c = K0Class::effective(0, p(&[1, -1])).add(&K0Class::effective(1, p(&[1, 0, 2])));
        assert_eq!(c.to_string(), "{0: 1 - T, 1: 1 + 2T^2}");
        assert_eq!(K0Class::one().neg().to_string(), "{0: 1/(1 - T)}");
    }
}
