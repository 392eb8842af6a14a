//! Newton's identities between the coefficients of a reversed characteristic
//! polynomial `Π(1 - αᵢT)` and the power sums `Σ αᵢᵏ` of its roots.
//!
//! Roots are never materialized; everything runs over a Q-algebra so the
//! divisions by `k` are exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rat::{rat, Rat};
use crate::ring::QAlgebra;

/// `result[k] = Σ αᵢ^(k+1)` for `k < count`, where `p = Π(1 - αᵢT)`.
pub fn power_sums_from_poly<R: QAlgebra>(p: &Poly<R>, count: usize) -> Result<Vec<R>> {
    if !p.coeff(0).is_one() {
        return Err(Error::NotReversedMonic);
    }
    let c = p.coeffs();
    let deg = c.len() - 1;
    let mut out: Vec<R> = Vec::with_capacity(count);
    for k in 1..=count {
        // p_k = -k c_k - Σ_{i=1}^{k-1} c_i p_{k-i}
        let mut acc = if k <= deg { c[k].scale(&rat(k as i64)) } else { R::zero() };
        for i in 1..k.min(deg + 1) {
            if !c[i].is_zero() {
                acc = acc.add(&c[i].mul(&out[k - i - 1]));
            }
        }
        out.push(acc.neg());
    }
    Ok(out)
}

/// Rebuilds `Π(1 - αᵢT)` of the given degree from its first `degree` power
/// sums.
pub fn poly_from_power_sums<R: QAlgebra>(psums: &[R], degree: usize) -> Result<Poly<R>> {
    if psums.len() < degree {
        return Err(Error::InsufficientData { needed: degree, available: psums.len() });
    }
    let mut c: Vec<R> = Vec::with_capacity(degree + 1);
    c.push(R::one());
    for k in 1..=degree {
        // k c_k = -(p_k + Σ_{i=1}^{k-1} c_i p_{k-i})
        let mut acc = psums[k - 1].clone();
        for i in 1..k {
            if !c[i].is_zero() {
                acc = acc.add(&c[i].mul(&psums[k - i - 1]));
            }
        }
        c.push(acc.neg().scale(&crate::rat::frac(1, k as i64)));
    }
    Ok(Poly::new(c))
}

/// Power sums of the scaled roots `D·αᵢ` of `p = Π(1 - αᵢT)` over `Q`, where
/// `D` is the least common denominator of the coefficients. The scaled roots
/// are algebraic integers, so every sum is an integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledPowerSums {
    pub scale: BigInt,
    pub sums: Vec<BigInt>,
}

pub fn scaled_power_sums(p: &Poly<Rat>, count: usize) -> Result<ScaledPowerSums> {
    if !p.coeff(0).is_one() {
        return Err(Error::NotReversedMonic);
    }
    let scale = p.coeffs().iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
    let mut c: Vec<BigInt> = Vec::with_capacity(p.coeffs().len());
    let mut pow = BigInt::one();
    for x in p.coeffs() {
        c.push(x.numer() * (&pow / x.denom()));
        pow *= &scale;
    }
    Ok(ScaledPowerSums { scale, sums: int_power_sums(&c, count) })
}

/// Newton's identities over `Z` for `c = Π(1 - βᵢT)` with `c[0] = 1`.
pub fn int_power_sums(c: &[BigInt], count: usize) -> Vec<BigInt> {
    let deg = c.len() - 1;
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for k in 1..=count {
        let mut acc = if k <= deg { &c[k] * k } else { BigInt::zero() };
        for i in 1..k.min(deg + 1) {
            if !c[i].is_zero() {
                acc += &c[i] * &out[k - i - 1];
            }
        }
        out.push(-acc);
    }
    out
}

/// Inverse of [`int_power_sums`]; the divisions by `k` are exact whenever the
/// sums come from algebraic integers.
pub fn int_poly_from_power_sums(psums: &[BigInt], degree: usize) -> Result<Vec<BigInt>> {
    if psums.len() < degree {
        return Err(Error::InsufficientData { needed: degree, available: psums.len() });
    }
    let mut c: Vec<BigInt> = Vec::with_capacity(degree + 1);
    c.push(BigInt::one());
    for k in 1..=degree {
        let mut acc = psums[k - 1].clone();
        for i in 1..k {
            if !c[i].is_zero() {
                acc += &c[i] * &psums[k - i - 1];
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::NotIntegral(format!("power sums are not those of algebraic integers (step {k})")));
        }
        c.push(-q);
    }
    Ok(c)
}

/// `Π(1 - αᵢT)` of the given degree from power sums of `scale·αᵢ`.
pub fn poly_from_scaled_power_sums(psums: &[BigInt], scale: &BigInt, degree: usize) -> Result<Poly<Rat>> {
    let c = int_poly_from_power_sums(psums, degree)?;
    let mut pow = BigInt::one();
    let mut out = Vec::with_capacity(c.len());
    for x in c {
        out.push(Rat::new(x, pow.clone()));
        pow *= scale;
    }
    Ok(Poly::new(out))
}

/// Elementary symmetric value `e_n` from power sums `p_1..p_n`.
pub fn elementary_from_power_sums<R: QAlgebra>(psums: &[R], n: usize) -> Result<R> {
    let p = poly_from_power_sums(psums, n)?;
    let c = p.coeff(n);
    Ok(if n % 2 == 1 { c.neg() } else { c })
}

/// Complete homogeneous value `h_n` from power sums `p_1..p_n`, via
/// `k h_k = Σ_{i=1}^k p_i h_{k-i}`.
pub fn complete_from_power_sums<R: QAlgebra>(psums: &[R], n: usize) -> Result<R> {
    if psums.len() < n {
        return Err(Error::InsufficientData { needed: n, available: psums.len() });
    }
    let mut h: Vec<R> = vec![R::one()];
    for k in 1..=n {
        let mut acc = R::zero();
        for i in 1..=k {
            if !psums[i - 1].is_zero() {
                acc = acc.add(&psums[i - 1].mul(&h[k - i]));
            }
        }
        h.push(acc.scale(&crate::rat::frac(1, k as i64)));
    }
    Ok(h.pop().expect("nonempty"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaled_round_trip() {
        let p = Poly::new(vec![rat(1), frac(-5, 2), frac(3, 2)]);
        let s = scaled_power_sums(&p, 4).unwrap();
        assert_eq!(s.scale, BigInt::from(2));
        // roots 1 and 3/2, scaled to 2 and 3
        assert_eq!(s.sums, vec![5, 13, 35, 97].into_iter().map(BigInt::from).collect::<Vec<_>>());
        assert_eq!(poly_from_scaled_power_sums(&s.sums, &s.scale, 2).unwrap(), p);
        assert_eq!(power_sums_from_poly(&p, 2).unwrap(), vec![frac(5, 2), frac(13, 4)]);
    }
    use crate::rat::{frac, Rat};

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn rs(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn power_sums_examples() {
        // roots {1, 2}
        assert_eq!(power_sums_from_poly(&p(&[1, -3, 2]), 3).unwrap(), rs(&[3, 5, 9]));
        assert_eq!(power_sums_from_poly(&p(&[1]), 3).unwrap(), rs(&[0, 0, 0]));
        let q = frac(7, 3);
        let lin = Poly::linear_factor(q.clone());
        assert_eq!(power_sums_from_poly(&lin, 2).unwrap(), vec![q.clone(), &q * &q]);
        assert_eq!(power_sums_from_poly(&p(&[2, 1]), 2), Err(Error::NotReversedMonic));
    }

    #[test]
    fn inverse_newton_examples() {
        assert_eq!(poly_from_power_sums(&rs(&[3, 5]), 2).unwrap(), p(&[1, -3, 2]));
        assert_eq!(poly_from_power_sums::<Rat>(&[], 0).unwrap(), p(&[1]));
        let q = frac(-5, 2);
        assert_eq!(poly_from_power_sums(&[q.clone()], 1).unwrap(), Poly::linear_factor(q));
        assert_eq!(poly_from_power_sums(&rs(&[3]), 2), Err(Error::InsufficientData { needed: 2, available: 1 }));
    }

    #[test]
    fn elementary_and_complete() {
        // roots {1, 2, 3}: e_2 = 11, h_2 = 25
        let ps = rs(&[6, 14, 36]);
        assert_eq!(elementary_from_power_sums(&ps, 2).unwrap(), rat(11));
        assert_eq!(elementary_from_power_sums(&ps, 3).unwrap(), rat(6));
        assert_eq!(complete_from_power_sums(&ps, 2).unwrap(), rat(25));
    }
}
