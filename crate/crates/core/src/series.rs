//! Truncated power series and truncated Laurent series.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ring::Ring;

/// Power series known up to and including `T^order`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Series<R> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients
    /// are stored.
    pub fn new(mut coeffs: Vec<R>, order: usize) -> Self {
        coeffs.resize(order + 1, R::zero());
        Series { coeffs }
    }

    pub fn from_poly(p: &Poly<R>, order: usize) -> Self {
        Self::new(p.coeffs().to_vec(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![R::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &R {
        &self.coeffs[n]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order());
        Self::new(self.coeffs[..=order].to_vec(), order)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        Self::new((0..=order).map(|i| self.coeffs[i].add(&rhs.coeffs[i])).collect(), order)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let out = (0..=order)
            .map(|n| {
                let terms: Vec<R> = (0..=n)
                    .filter(|&i| !self.coeffs[i].is_zero() && !rhs.coeffs[n - i].is_zero())
                    .map(|i| self.coeffs[i].mul(&rhs.coeffs[n - i]))
                    .collect();
                R::sum(&terms)
            })
            .collect();
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &R) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    /// `T ↦ c·T`: the `n`-th coefficient is multiplied by `cⁿ`.
    pub fn substitute_scaled(&self, c: &R) -> Self {
        let mut pow = R::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.mul(&pow));
            pow = pow.mul(c);
        }
        Series { coeffs: out }
    }
}

/// Multiplicative inverse up to `order`; the constant term must be a unit.
pub fn series_inverse<R: Ring>(s: &Series<R>, order: usize) -> Result<Series<R>> {
    let inv0 = s.coeffs[0].unit_inverse().ok_or(Error::NotInvertible)?;
    let mut out: Vec<R> = Vec::with_capacity(order + 1);
    out.push(inv0.clone());
    for n in 1..=order {
        let terms: Vec<R> = (1..=n.min(s.order()))
            .filter(|&k| !s.coeffs[k].is_zero())
            .map(|k| s.coeffs[k].mul(&out[n - k]).neg())
            .collect();
        out.push(R::sum(&terms).mul(&inv0));
    }
    Ok(Series { coeffs: out })
}

/// Laurent series with coefficients known on `[offset, order]`; exponents
/// below `offset` are zero, exponents above `order` are unknown.
#[derive(Clone, PartialEq, Debug)]
pub struct LaurentSeries<R> {
    offset: i64,
    coeffs: Vec<R>,
    order: i64,
}

impl<R: Ring> LaurentSeries<R> {
    /// `T^shift · s`.
    pub fn from_series(s: &Series<R>, shift: i64) -> Self {
        Self::normalized(shift, s.coeffs().to_vec(), shift + s.order() as i64)
    }

    fn normalized(mut offset: i64, coeffs: Vec<R>, order: i64) -> Self {
        let lead = coeffs.iter().position(|c| !c.is_zero());
        let coeffs = match lead {
            Some(p) => {
                offset += p as i64;
                coeffs[p..].to_vec()
            }
            None => {
                offset = order;
                Vec::new()
            }
        };
        let mut s = LaurentSeries { offset, coeffs, order };
        s.coeffs.truncate((s.order - s.offset + 1).max(0) as usize);
        s
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` above the known window.
    pub fn coeff(&self, e: i64) -> Option<R> {
        if e > self.order {
            None
        } else if e < self.offset {
            Some(R::zero())
        } else {
            Some(self.coeffs.get((e - self.offset) as usize).cloned().unwrap_or_else(R::zero))
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::normalized(self.offset, self.coeffs.iter().map(|a| a.mul(c)).collect(), self.order)
    }

    /// The coefficients on `[lo, hi]`, which must lie inside the known window.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<R> {
        (lo..=hi).map(|e| self.coeff(e).expect("exponent beyond truncation order")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, Rat};

    fn s(cs: &[i64], order: usize) -> Series<Rat> {
        Series::new(cs.iter().map(|&c| rat(c)).collect(), order)
    }

    #[test]
    fn geometric_series() {
        assert_eq!(series_inverse(&s(&[1, -1], 3), 3).unwrap(), s(&[1, 1, 1, 1], 3));
        assert_eq!(series_inverse(&s(&[1], 5), 5).unwrap(), s(&[1], 5));
    }

    #[test]
    fn inverse_of_two_root_product() {
        // (1 - T)(1 - 2T): coefficient k is h_k(1, 2) = 2^(k+1) - 1
        let inv = series_inverse(&s(&[1, -3, 2], 3), 3).unwrap();
        let brute: Vec<i64> = (0..4).map(|k| (0..=k).map(|i| 1i64 << i).sum()).collect();
        assert_eq!(inv, s(&brute, 3));
        assert_eq!(inv, s(&[1, 3, 7, 15], 3));
    }

    #[test]
    fn non_unit_constant_term() {
        assert_eq!(series_inverse(&s(&[0, 1], 3), 3), Err(Error::NotInvertible));
    }

    #[test]
    fn laurent_window() {
        let l = LaurentSeries::from_series(&s(&[0, 0, 5, 1], 3), -2);
        assert_eq!(l.offset(), 0);
        assert_eq!(l.order(), 1);
        assert_eq!(l.coeff(-5), Some(rat(0)));
        assert_eq!(l.coeff(0), Some(rat(5)));
        assert_eq!(l.coeff(2), None);
        assert_eq!(l.window(-1, 1), vec![rat(0), rat(5), rat(1)]);
    }
}
