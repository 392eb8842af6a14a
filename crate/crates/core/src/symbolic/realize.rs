//! Realization of the presented ring in the matrix model: each atom is sent
//! to a [`K0Class`] and the map is extended multiplicatively.

use std::collections::BTreeMap;

use super::elem::K0Elem;
use super::packs::{h1_name, s_name, ARTIN};
use super::registry::LEFSCHETZ;
use crate::error::{Error, Result};
use crate::frobenius::{FrobObj, K0Class};
use crate::rat::{is_integer, rat, Rat};
use crate::ring::Ring;

#[derive(Clone, Debug, Default)]
pub struct Realization {
    images: BTreeMap<String, K0Class>,
}

impl Realization {
    /// `L ↦ [q]` in degree 2 and `A ↦ [-1]` in degree 0.
    pub fn new(q: &Rat) -> Self {
        let mut r = Realization::default();
        r.set(LEFSCHETZ, K0Class::line(2, q.clone()));
        r.set(ARTIN, K0Class::line(0, rat(-1)));
        r
    }

    pub fn set(&mut self, atom: &str, class: K0Class) {
        self.images.insert(atom.to_string(), class);
    }

    /// Sends the genus-`g` curve generators to the classes of `h¹(C)` and its
    /// symmetric powers, where `h1` is the odd part of a curve object.
    pub fn with_curve(mut self, g: usize, h1: &FrobObj) -> Result<Self> {
        self.set(&h1_name(g), h1.class_of());
        for n in 2..=g {
            self.set(&s_name(n, g), h1.sym_class(n)?);
        }
        Ok(self)
    }

    pub fn realize(&self, e: &K0Elem) -> Result<K0Class> {
        let mut terms = Vec::with_capacity(e.len());
        for (m, c) in e.terms() {
            if !is_integer(c) {
                return Err(Error::NotIntegral(e.to_string()));
            }
            let mut t = K0Class::one();
            for (a, x) in m.factors() {
                let img = self.images.get(a.name()).ok_or_else(|| Error::UnknownAtom(a.name().into()))?;
                let p = img.pow_signed(x).ok_or_else(|| Error::NotInvertibleClass(a.name().into()))?;
                t = t.mul(&p);
            }
            let n: i64 = c.to_integer().try_into().map_err(|_| Error::NotIntegral(c.to_string()))?;
            terms.push(t.mul(&K0Class::from_i64(n)));
        }
        Ok(K0Class::sum(&terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::symbolic::packs::curve_pack;
    use crate::symbolic::Registry;

    #[test]
    fn elliptic_curve_agrees_with_matrices() {
        let q = rat(2);
        let frob = FrobObj::curve(&Poly::from_i64s(&[1, 0, 2]), &q).unwrap();
        let mut reg = Registry::new();
        let sym = curve_pack(&mut reg, 1).unwrap();
        let r = Realization::new(&q).with_curve(1, &frob.odd_part()).unwrap();
        for n in 0..5 {
            assert_eq!(r.realize(&sym.sym_class(n).unwrap()).unwrap(), frob.sym_class(n).unwrap(), "n = {n}");
            assert_eq!(r.realize(&sym.ext_class(n).unwrap()).unwrap(), frob.ext_class(n).unwrap(), "n = {n}");
        }
        assert_eq!(r.realize(&K0Elem::monomial(sym.det_monomial())).unwrap(), frob.det_object());
    }
}
