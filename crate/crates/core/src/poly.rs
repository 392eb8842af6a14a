//! Dense univariate polynomials in `T` over a commutative ring.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rat::{fmt_rat, Rat};
use crate::ring::Ring;

/// `coeffs[i]` is the coefficient of `T^i`; the highest stored coefficient is
/// nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Self::new(vec![c])
    }

    /// `c·T^k`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut v = vec![R::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `1 - a·T`.
    pub fn linear_factor(a: R) -> Self {
        Self::new(vec![R::one(), a.neg()])
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i).add(&rhs.coeff(i))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(Ring::neg).collect() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// `p(a·T)`.
    pub fn substitute_scaled(&self, a: &R) -> Self {
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul(&pow));
            pow = pow.mul(a);
        }
        Self::new(out)
    }

    /// `T^n · p(1/T)`; requires `n ≥ deg p`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut v = vec![R::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            assert!(i <= n, "reversal length below degree");
            v[n - i] = c.clone();
        }
        Self::new(v)
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs.iter().rev().fold(R::zero(), |acc, c| acc.mul(x).add(c))
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl Poly<Rat> {
    pub fn from_i64s(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| crate::rat::rat(c)).collect())
    }

    /// Euclidean division over the rationals.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = d.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![<Rat as Ring>::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !Ring::is_zero(&c) {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dj;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// `Some(self / d)` when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Result<Option<Self>> {
        let (q, r) = self.div_rem(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.make_monic();
        }
        a.make_monic()
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.recip();
                self.scale(&inv)
            }
        }
    }
}

/// Renders in ascending powers of `T`, e.g. `1 - 3T + 2T^2`.
pub fn fmt_poly(p: &Poly<Rat>, var: &str) -> String {
    use num_traits::Signed;
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if Ring::is_zero(c) {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mag = fmt_rat(&abs);
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if i == 0 {
            out.push_str(&mag);
        } else if abs == Ring::one() {
            out.push_str(&mono);
        } else if abs.denom() == &num_bigint::BigInt::from(1) {
            out.push_str(&format!("{mag}{mono}"));
        } else {
            out.push_str(&format!("({mag}){mono}"));
        }
    }
    out
}

impl fmt::Display for Poly<Rat> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_poly(self, "T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let a = Poly::from_i64s(&[1, -1]);
        let b = Poly::from_i64s(&[1, -2]);
        let p = a.mul(&b);
        assert_eq!(p, Poly::from_i64s(&[1, -3, 2]));
        assert_eq!(p.to_string(), "1 - 3T + 2T^2");
        assert_eq!(Poly::from_i64s(&[0, 0, 0]).degree(), None);
        assert_eq!(p.reversed(2), Poly::from_i64s(&[2, -3, 1]));
        assert_eq!(Poly::from_i64s(&[1, 0, 2]).substitute_scaled(&crate::rat::rat(3)), Poly::from_i64s(&[1, 0, 18]));
    }

    #[test]
    fn division_and_gcd() {
        let p = Poly::from_i64s(&[1, -3, 2]);
        let d = Poly::from_i64s(&[1, -1]);
        assert_eq!(p.exact_div(&d).unwrap(), Some(Poly::from_i64s(&[1, -2])));
        assert_eq!(p.exact_div(&Poly::from_i64s(&[1, 1])).unwrap(), None);
        assert_eq!(p.gcd(&Poly::from_i64s(&[1, 0, -1])), Poly::from_i64s(&[-1, 1]));
        assert_eq!(p.div_rem(&Poly::zero()), Err(Error::DivisionByZero));
    }
}
