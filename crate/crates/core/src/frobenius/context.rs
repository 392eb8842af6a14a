use super::class::K0Class;
use super::object::FrobObj;
use crate::engine::{LambdaContext, SignedObject};
use crate::error::Result;
use crate::rat::Rat;

/// The matrix backend; `q` realizes the Lefschetz class as `[q]` in degree 2.
#[derive(Clone, Debug)]
pub struct FrobContext {
    pub q: Rat,
}

impl FrobContext {
    pub fn new(q: Rat) -> Self {
        FrobContext { q }
    }
}

impl LambdaContext for FrobContext {
    type Coeff = K0Class;
    type Object = FrobObj;

    fn split(&self, m: &FrobObj) -> SignedObject<FrobObj> {
        SignedObject::new(m.even_part(), m.odd_part())
    }

    fn rank(&self, part: &FrobObj) -> usize {
        part.chi_stats().betti.values().sum()
    }

    fn sym_class(&self, m: &FrobObj, n: usize) -> Result<K0Class> {
        m.sym_class(n)
    }

    fn sym_classes(&self, m: &FrobObj, n: usize) -> Result<Vec<K0Class>> {
        m.sym_classes(n)
    }

    fn ext_class(&self, m: &FrobObj, n: usize) -> Result<K0Class> {
        m.ext_class(n)
    }

    fn det_class(&self, m: &FrobObj) -> Result<K0Class> {
        Ok(m.det_object())
    }

    fn dual(&self, m: &FrobObj) -> Result<FrobObj> {
        Ok(m.dual())
    }

    fn class_of(&self, m: &FrobObj) -> Result<K0Class> {
        Ok(m.class_of())
    }

    fn lefschetz_class(&self) -> K0Class {
        K0Class::line(2, self.q.clone())
    }
}
