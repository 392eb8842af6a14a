//! Rational functions `num(T) / den(T)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::Rat;
use crate::ring::Ring;
use crate::series::{series_inverse, Series};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RatFun<R> {
    pub num: Poly<R>,
    pub den: Poly<R>,
}

impl<R: Ring> RatFun<R> {
    /// Unreduced pair; the denominator must be nonzero.
    pub fn from_parts(num: Poly<R>, den: Poly<R>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFun { num, den })
    }

    pub fn from_poly(num: Poly<R>) -> Self {
        RatFun { num, den: Poly::one() }
    }

    /// Expansion at `T = 0`; `den(0)` must be a unit.
    pub fn to_series(&self, order: usize) -> Result<Series<R>> {
        let inv = series_inverse(&Series::from_poly(&self.den, order), order)?;
        Ok(Series::from_poly(&self.num, order).mul(&inv))
    }
}

/// Cancels the common factor and normalizes the denominator: constant term 1
/// when `den(0) ≠ 0`, monic otherwise.
pub fn ratfun_normalize(num: &Poly<Rat>, den: &Poly<Rat>) -> Result<RatFun<Rat>> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (mut n, mut d) = match num.exact_div(den)? {
        Some(q) => (q, Poly::one()),
        None => {
            let g = num.gcd(den);
            (num.div_rem(&g)?.0, den.div_rem(&g)?.0)
        }
    };
    let c = d.coeff(0);
    let unit = if !Ring::is_zero(&c) { c } else { d.leading().cloned().expect("nonzero") };
    if !unit.is_one() {
        let inv = unit.recip();
        n = n.scale(&inv);
        d = d.scale(&inv);
    }
    Ok(RatFun { num: n, den: d })
}

impl RatFun<Rat> {
    pub fn normalized(&self) -> Result<Self> {
        ratfun_normalize(&self.num, &self.den)
    }

    /// Evaluation at a point that is not a pole.
    pub fn eval(&self, x: &Rat) -> Result<Rat> {
        let d = self.den.eval(x);
        if Ring::is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }
}

impl fmt::Display for RatFun<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let num = if self.num.coeffs().len() > 1 { format!("({})", self.num) } else { self.num.to_string() };
            write!(f, "{num}/({})", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    #[test]
    fn normalization_examples() {
        let r = ratfun_normalize(&p(&[1, 0, -1]), &p(&[1, -1])).unwrap();
        assert_eq!((r.num, r.den), (p(&[1, 1]), p(&[1])));
        let r = ratfun_normalize(&p(&[2, -2]), &p(&[2])).unwrap();
        assert_eq!((r.num, r.den), (p(&[1, -1]), p(&[1])));
        let r = ratfun_normalize(&p(&[1, -3, 2]), &p(&[1, -1])).unwrap();
        assert_eq!((r.num, r.den), (p(&[1, -2]), p(&[1])));
        assert_eq!(ratfun_normalize(&p(&[1]), &p(&[])), Err(Error::DivisionByZero));
    }

    #[test]
    fn proper_fraction_keeps_denominator() {
        let r = ratfun_normalize(&p(&[3, 3]), &p(&[3, -6])).unwrap();
        assert_eq!((r.num.clone(), r.den.clone()), (p(&[1, 1]), p(&[1, -2])));
        assert_eq!(r.to_string(), "(1 + T)/(1 - 2T)");
        let r = ratfun_normalize(&p(&[1]), &p(&[0, 2])).unwrap();
        assert_eq!((r.num, r.den), (Poly::new(vec![crate::rat::frac(1, 2)]), p(&[0, 1])));
    }
}
