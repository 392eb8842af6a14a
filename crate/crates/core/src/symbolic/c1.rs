//! Normal form `L^r · (Artin classes)` of a unit monomial.

use std::fmt;

use serde_json::{json, Value};

use super::elem::{AtomClass, K0Elem, Monomial};
use super::registry::{AtomKind, Registry, LEFSCHETZ};
use crate::error::{Error, Result};
use crate::rat::rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct C1Form {
    pub r: i64,
    /// Product of order-two atoms; `1` when there are none.
    pub artin: Monomial,
    pub weight: i64,
    /// An invertible class of odd weight; never produced by declared atoms,
    /// whose weights are even.
    pub odd_weight: bool,
}

impl C1Form {
    pub fn to_json(&self) -> Value {
        json!({"r": self.r, "artin": self.artin.to_string(), "weight": self.weight, "odd_weight": self.odd_weight})
    }
}

impl fmt::Display for C1Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r = {}, artin = {}, weight = {})", self.r, self.artin, self.weight)
    }
}

/// Splits a unit monomial as `L^r · A₁^{ε₁} ⋯`.
pub fn c1_normal_form(reg: &Registry, u: &K0Elem) -> Result<C1Form> {
    let m = match u.terms().next() {
        Some((m, c)) if u.len() == 1 && *c == rat(1) => m,
        _ => return Err(Error::NotUnitMonomial(u.to_string())),
    };
    let mut r = 0;
    let mut weight = 0;
    let mut artin = Monomial::one();
    for (a, e) in m.factors() {
        match (a.class(), a.name()) {
            (AtomClass::Invertible, LEFSCHETZ) => r = e,
            (AtomClass::Artin, _) => artin = artin.times(a, e)?,
            _ => return Err(Error::NotInC1Form(u.to_string())),
        }
    }
    if let AtomKind::InvertibleEven { weight: w } = reg.get(LEFSCHETZ)?.kind {
        weight = w * r;
    }
    Ok(C1Form { r, artin, weight, odd_weight: weight % 2 != 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::symbolic::packs::{blowup_h2, curve_pack};

    #[test]
    fn normal_forms() {
        let mut reg = Registry::new();
        let l = K0Elem::atom(&reg.lefschetz());
        let f = c1_normal_form(&reg, &l.pow(3)).unwrap();
        assert_eq!((f.r, f.artin.is_one(), f.weight), (3, true, 6));
        let h2 = blowup_h2(&mut reg).unwrap();
        let f = c1_normal_form(&reg, &K0Elem::monomial(h2.det_monomial())).unwrap();
        assert_eq!((f.r, f.artin.to_string()), (3, "A".to_string()));
        let h = curve_pack(&mut reg, 1).unwrap();
        let h1 = K0Elem::atom(&reg.atom("h1_1").unwrap());
        assert!(matches!(c1_normal_form(&reg, &h1), Err(Error::NotInC1Form(_))));
        assert!(matches!(c1_normal_form(&reg, &h.class().unwrap()), Err(Error::NotUnitMonomial(_))));
    }
}
