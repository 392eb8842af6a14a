//! Integer kernels for polynomials with constant term 1 over `Q`.
//!
//! Such a polynomial `p(T) = Σ cₖTᵏ` becomes integral after `T ↦ T/D` for a
//! suitable scale `D` (`cₖDᵏ ∈ Z`). Products and exact quotients commute with
//! this substitution, so they can run over `Z` without any gcd work.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rug::integer::Order;
use rug::Integer as Gmp;
use std::cmp::Ordering;

use crate::newton::{int_poly_from_power_sums, int_power_sums};
use crate::poly::Poly;
use crate::rat::Rat;

const TRIAL_LIMIT: u32 = 1 << 12;

/// Small-prime factorization of `n`, or `None` if a large cofactor remains.
fn small_factors(n: &BigInt) -> Option<Vec<(u32, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u32;
    while !n.is_one() {
        if p > TRIAL_LIMIT {
            return None;
        }
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&BigInt::from(p));
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Some(out)
}

/// Least `D` with `cₖDᵏ` integral for all `k`, when every denominator splits
/// over small primes.
pub fn minimal_scale(p: &Poly<Rat>) -> Option<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    if lcm.is_one() {
        return Some(lcm);
    }
    let mut scale = BigInt::one();
    for (prime, _) in small_factors(&lcm)? {
        let q = BigInt::from(prime);
        let mut need = 0u32;
        for (k, c) in p.coeffs().iter().enumerate().skip(1) {
            let mut d = c.denom().clone();
            let mut v = 0u32;
            while d.is_multiple_of(&q) {
                d /= &q;
                v += 1;
            }
            need = need.max(v.div_ceil(k as u32));
        }
        scale *= q.pow(need);
    }
    Some(scale)
}

pub fn to_scaled(p: &Poly<Rat>, scale: &BigInt) -> Vec<BigInt> {
    let mut pow = BigInt::one();
    p.coeffs()
        .iter()
        .map(|c| {
            let v = c.numer() * (&pow / c.denom());
            pow *= scale;
            v
        })
        .collect()
}

pub fn from_scaled(v: &[BigInt], scale: &BigInt) -> Poly<Rat> {
    let mut pow = BigInt::one();
    Poly::new(
        v.iter()
            .map(|c| {
                let r = Rat::new(c.clone(), pow.clone());
                pow *= scale;
                r
            })
            .collect(),
    )
}

/// Product in `Z[T]` by Kronecker substitution: both factors are packed into
/// single integers with 32-bit-aligned slots wide enough for every product
/// coefficient, multiplied once with GMP, and unpacked with balanced digits.
pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) <= 2 {
        return mul_schoolbook(a, b);
    }
    let bits = |v: &[BigInt]| v.iter().map(|x| x.bits()).max().unwrap_or(0);
    let len = a.len().min(b.len()) as u64;
    let need = bits(a) + bits(b) + (64 - len.leading_zeros()) as u64 + 2;
    let slot = need.div_ceil(32) as usize;
    let pa = pack(a, slot);
    let pb = pack(b, slot);
    unpack(&Gmp::from(&pa * &pb), slot, a.len() + b.len() - 1)
}

fn mul_schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn pack(v: &[BigInt], slot: usize) -> Gmp {
    let mut pos = vec![0u32; v.len() * slot];
    let mut neg = vec![0u32; v.len() * slot];
    for (k, c) in v.iter().enumerate() {
        let (sign, digits) = c.to_u32_digits();
        let target = if sign == Sign::Minus { &mut neg } else { &mut pos };
        target[k * slot..k * slot + digits.len()].copy_from_slice(&digits);
    }
    Gmp::from_digits(&pos, Order::Lsf) - Gmp::from_digits(&neg, Order::Lsf)
}

fn unpack(x: &Gmp, slot: usize, len: usize) -> Vec<BigInt> {
    let sign = if x.cmp0() == Ordering::Less { Sign::Minus } else { Sign::Plus };
    let mut digits: Vec<u32> = x.to_digits(Order::Lsf);
    digits.resize(len * slot + 1, 0);
    let mut out = Vec::with_capacity(len);
    let mut carry = false;
    for k in 0..len {
        let mut chunk = digits[k * slot..(k + 1) * slot].to_vec();
        if carry {
            // add 1 to the chunk, propagating inside the slot
            let mut i = 0;
            while i < slot {
                let (v, o) = chunk[i].overflowing_add(1);
                chunk[i] = v;
                if !o {
                    break;
                }
                i += 1;
            }
            carry = i == slot;
        }
        let high = chunk[slot - 1] >> 31 == 1;
        let mut value = BigInt::from_biguint(Sign::Plus, BigUint::new(chunk));
        if high {
            value -= BigInt::one() << (32 * slot);
            carry = true;
        }
        out.push(if sign == Sign::Minus { -value } else { value });
    }
    out
}

/// `d⁻¹ mod T^n` for `d[0] = 1`, by Newton iteration.
fn series_inverse_int(d: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut g = vec![BigInt::one()];
    let mut prec = 1;
    while prec < n {
        prec = (2 * prec).min(n);
        let dg = mul_int(&d[..d.len().min(prec)], &g);
        // e = 1 - d·g mod T^prec, then g += g·e
        let mut e: Vec<BigInt> = dg.into_iter().take(prec).map(|x| -x).collect();
        e.resize(prec, BigInt::zero());
        e[0] += 1;
        let ge = mul_int(&g, &e);
        g.resize(prec, BigInt::zero());
        for (slot, x) in g.iter_mut().zip(ge) {
            *slot += x;
        }
    }
    g.truncate(n);
    g
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.len() > 1 && v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

/// `n / d` for `d[0] = 1`; `None` unless the division is exact.
pub fn exact_div_int(n: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    debug_assert!(d[0].is_one());
    let qlen = (n.len() + 1).checked_sub(d.len())?;
    if d.len() == 1 {
        return Some(n.to_vec());
    }
    if qlen * d.len() <= 4096 {
        return exact_div_schoolbook(n, d, qlen);
    }
    let g = series_inverse_int(d, qlen);
    let mut q = mul_int(&n[..qlen], &g);
    q.truncate(qlen);
    let q = trim(q);
    (trim(mul_int(&q, d)) == trim(n.to_vec())).then_some(q)
}

fn exact_div_schoolbook(n: &[BigInt], d: &[BigInt], qlen: usize) -> Option<Vec<BigInt>> {
    let dd = d.len() - 1;
    let mut q: Vec<BigInt> = Vec::with_capacity(n.len());
    for k in 0..n.len() {
        let mut acc = n[k].clone();
        for i in 1..=dd.min(k) {
            if !d[i].is_zero() && !q[k - i].is_zero() {
                acc -= &d[i] * &q[k - i];
            }
        }
        if k >= qlen && !acc.is_zero() {
            return None;
        }
        q.push(acc);
    }
    q.truncate(qlen);
    Some(q)
}

/// A polynomial `p` with constant term 1 stored as the integer coefficients of
/// `p(scale·T)`. Any `scale` making them integral is allowed, so equality is
/// semantic rather than structural.
#[derive(Clone, Debug)]
pub struct ZPoly {
    scale: BigInt,
    c: Vec<BigInt>,
}

impl PartialEq for ZPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.c.len() != other.c.len() {
            return false;
        }
        if self.scale == other.scale {
            return self.c == other.c;
        }
        let (mut pa, mut pb) = (BigInt::one(), BigInt::one());
        for (a, b) in self.c.iter().zip(&other.c) {
            if a * &pb != b * &pa {
                return false;
            }
            pa *= &self.scale;
            pb *= &other.scale;
        }
        true
    }
}

impl Eq for ZPoly {}

impl ZPoly {
    pub fn one() -> Self {
        ZPoly { scale: BigInt::one(), c: vec![BigInt::one()] }
    }

    /// `c` are the coefficients of `p(scale·T)`; `c[0]` must be 1.
    pub fn from_scaled(c: Vec<BigInt>, scale: BigInt) -> Self {
        assert!(c.first().is_some_and(One::is_one), "constant term must be 1");
        ZPoly { scale, c: trim(c) }
    }

    pub fn from_rat(p: &Poly<Rat>) -> Self {
        assert!(p.coeff(0).is_one(), "constant term must be 1");
        let scale = minimal_scale(p).unwrap_or_else(|| p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom())));
        ZPoly { c: to_scaled(p, &scale), scale }
    }

    pub fn to_rat(&self) -> Poly<Rat> {
        from_scaled(&self.c, &self.scale)
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1
    }

    pub fn degree(&self) -> usize {
        self.c.len() - 1
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn scaled_coeffs(&self) -> &[BigInt] {
        &self.c
    }

    /// The root of a linear polynomial.
    pub fn linear_root(&self) -> Option<Rat> {
        (self.degree() == 1).then(|| Rat::new(-&self.c[1], self.scale.clone()))
    }

    /// Coefficients of `p(to·T)`, where `scale` divides `to`.
    fn rescaled(&self, to: &BigInt) -> Vec<BigInt> {
        if *to == self.scale {
            return self.c.clone();
        }
        let f = to / &self.scale;
        let mut pow = BigInt::one();
        self.c
            .iter()
            .map(|x| {
                let v = x * &pow;
                pow *= &f;
                v
            })
            .collect()
    }

    /// Shrinks `scale` by every small prime `p` with `pᵏ | c[k]` for all `k`.
    fn normalized(mut self) -> Self {
        if self.scale.is_one() {
            return self;
        }
        let n = self.degree();
        if n == 0 {
            self.scale = BigInt::one();
            return self;
        }
        let Some(factors) = small_factors(&self.scale) else {
            return self;
        };
        for (p, e) in factors {
            let p = BigInt::from(p);
            // the top coefficient bounds the exponent
            let mut g = self.c[n].gcd(&p.pow(n as u32 * e));
            let mut v = 0;
            while g.is_multiple_of(&p) && !g.is_one() {
                g /= &p;
                v += 1;
            }
            let mut j = v / n as u32;
            while j > 0 && !(1..n).all(|k| self.c[k].is_multiple_of(&p.pow(k as u32 * j))) {
                j -= 1;
            }
            if j > 0 {
                let f = p.pow(j);
                let mut pow = BigInt::one();
                for x in self.c.iter_mut() {
                    *x /= &pow;
                    pow *= &f;
                }
                self.scale /= &f;
            }
        }
        self
    }

    /// Multiplies every root by `a`.
    pub fn substitute_scaled(&self, a: &Rat) -> Self {
        let mut pow = BigInt::one();
        let c = self
            .c
            .iter()
            .map(|x| {
                let v = x * &pow;
                pow *= a.numer();
                v
            })
            .collect();
        ZPoly { scale: &self.scale * a.denom(), c: trim(c) }
    }

    pub fn product(polys: &[&ZPoly]) -> ZPoly {
        let polys: Vec<&ZPoly> = polys.iter().copied().filter(|p| !p.is_one()).collect();
        match polys.as_slice() {
            [] => return ZPoly::one(),
            [p] => return (*p).clone(),
            _ => {}
        }
        let scale = polys.iter().fold(BigInt::one(), |s, p| s.lcm(&p.scale));
        let mut acc = vec![BigInt::one()];
        for p in polys {
            acc = mul_int(&acc, &p.rescaled(&scale));
        }
        ZPoly { scale, c: acc }
    }

    /// `n / d` when the division is exact.
    pub fn exact_quotient(n: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
        if n.degree() < d.degree() {
            return None;
        }
        let scale = n.scale.lcm(&d.scale);
        let q = exact_div_int(&n.rescaled(&scale), &d.rescaled(&scale))?;
        Some(ZPoly { scale, c: q }.normalized())
    }

    /// Divides out the greatest common factor of `x` and `y`.
    pub fn cancel(x: ZPoly, y: ZPoly) -> (ZPoly, ZPoly) {
        if x.is_one() || y.is_one() {
            return (x, y);
        }
        if let Some(q) = ZPoly::exact_quotient(&x, &y) {
            return (q, ZPoly::one());
        }
        if let Some(q) = ZPoly::exact_quotient(&y, &x) {
            return (ZPoly::one(), q);
        }
        let (xr, yr) = (x.to_rat(), y.to_rat());
        let g = xr.gcd(&yr);
        if g.degree() == Some(0) {
            return (x, y);
        }
        let g = g.scale(&g.coeff(0).recip());
        // divisors of x and y keep their scales valid
        let div = |p: &ZPoly, r: &Poly<Rat>| ZPoly {
            c: to_scaled(&r.div_rem(&g).expect("nonzero").0, &p.scale),
            scale: p.scale.clone(),
        };
        (div(&x, &xr), div(&y, &yr))
    }

    /// `Π_{i,j}(1 - αᵢβⱼT)`: the polynomial whose roots are all products of
    /// a root of `f` with a root of `g`.
    pub fn root_product(f: &ZPoly, g: &ZPoly) -> ZPoly {
        let (m, n) = (f.degree(), g.degree());
        if m == 0 || n == 0 {
            return ZPoly::one();
        }
        let (small, large) = if m <= n { (f, g) } else { (g, f) };
        if small.degree() == 1 {
            return large.substitute_scaled(&small.linear_root().expect("linear")).normalized();
        }
        let scale = &small.scale * &large.scale;
        if small.degree() <= 4 {
            return ZPoly { c: trim(root_product_norm(&small.c, &large.c)), scale }.normalized();
        }
        let count = m * n;
        let pf = int_power_sums(&f.c, count);
        let pg = int_power_sums(&g.c, count);
        let prod: Vec<BigInt> = pf.iter().zip(&pg).map(|(a, b)| a * b).collect();
        let c = int_poly_from_power_sums(&prod, count).expect("products of algebraic integers");
        ZPoly { c: trim(c), scale }.normalized()
    }
}

/// `Π_{i,j}(1 - αᵢβⱼT)` for `f = Π(1 - αᵢT)` of small degree and integral
/// `f, g` with constant term 1: the norm `det g(C·T)` where `C` is the
/// companion matrix of `f`.
pub fn root_product_norm(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let m = f.len() - 1;
    assert!((1..=4).contains(&m), "norm path is for degrees 1..=4");
    let mut c = vec![vec![BigInt::zero(); m]; m];
    for i in 1..m {
        c[i][i - 1] = BigInt::one();
    }
    for i in 0..m {
        c[i][m - 1] = -&f[m - i];
    }
    let mut entries = vec![vec![vec![BigInt::zero(); g.len()]; m]; m];
    let mut pow: Vec<Vec<BigInt>> = (0..m).map(|i| (0..m).map(|j| BigInt::from((i == j) as u8)).collect()).collect();
    for (k, gk) in g.iter().enumerate() {
        if k > 0 {
            pow = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| (0..m).filter(|&l| !c[l][j].is_zero()).map(|l| &pow[i][l] * &c[l][j]).sum())
                        .collect()
                })
                .collect();
        }
        if gk.is_zero() {
            continue;
        }
        for i in 0..m {
            for j in 0..m {
                entries[i][j][k] = gk * &pow[i][j];
            }
        }
    }
    let entries: Vec<Vec<Vec<BigInt>>> = entries.into_iter().map(|row| row.into_iter().map(trim).collect()).collect();
    // one Kronecker packing for the whole matrix: each determinant term is a
    // product of m entries, so its coefficients stay below m!·len^(m-1)·2^(m·bits)
    let bits = entries.iter().flatten().flatten().map(|x| x.bits()).max().unwrap_or(0);
    let len = g.len() as u64;
    let need = m as u64 * bits + (m as u64 - 1) * (64 - len.leading_zeros()) as u64 + 7;
    let slot = need.div_ceil(32) as usize;
    let packed: Vec<Vec<Gmp>> = entries.iter().map(|row| row.iter().map(|p| pack(p, slot)).collect()).collect();
    trim(unpack(&det_int(&packed), slot, m * (g.len() - 1) + 1))
}

/// Determinant of a small integer matrix by Laplace expansion along the
/// first row.
fn det_int(m: &[Vec<Gmp>]) -> Gmp {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = Gmp::new();
    for j in 0..n {
        if m[0][j].cmp0() == Ordering::Equal {
            continue;
        }
        let minor: Vec<Vec<Gmp>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = Gmp::from(&m[0][j] * &det_int(&minor));
        if j % 2 == 1 {
            out -= term;
        } else {
            out += term;
        }
    }
    out
}

/// Whether `scale` is small enough to be worth using (diagnostics only).
pub fn scale_bits(p: &Poly<Rat>) -> Option<u64> {
    minimal_scale(p).and_then(|s| s.bits().to_u64())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, rat};

    #[test]
    fn minimal_scales() {
        // roots 1/2 and 1/3: 1 - (5/6)T + (1/6)T^2
        let p = Poly::new(vec![rat(1), frac(-5, 6), frac(1, 6)]);
        assert_eq!(minimal_scale(&p), Some(BigInt::from(6)));
        // root 1/4 twice: 1 - (1/2)T + (1/16)T^2 needs D = 4
        let p = Poly::new(vec![rat(1), frac(-1, 2), frac(1, 16)]);
        assert_eq!(minimal_scale(&p), Some(BigInt::from(4)));
        assert_eq!(minimal_scale(&Poly::from_i64s(&[1, -3, 2])), Some(BigInt::one()));
    }

    #[test]
    fn product_and_quotient_agree_with_rational_arithmetic() {
        let a = Poly::new(vec![rat(1), frac(-5, 6), frac(1, 6)]);
        let b = Poly::new(vec![rat(1), frac(3, 2)]);
        let (za, zb) = (ZPoly::from_rat(&a), ZPoly::from_rat(&b));
        let ab = ZPoly::product(&[&za, &zb]);
        assert_eq!(ab.to_rat(), a.mul(&b));
        assert_eq!(ZPoly::exact_quotient(&ab, &zb), Some(za.clone()));
        assert_eq!(ZPoly::exact_quotient(&ab, &za), Some(zb.clone()));
        assert_eq!(ZPoly::exact_quotient(&za, &zb), None);
        assert_eq!(ZPoly::exact_quotient(&zb, &za), None);
    }

    #[test]
    fn equality_ignores_the_scale() {
        let p = Poly::new(vec![rat(1), frac(-1, 2), frac(1, 16)]);
        let z = ZPoly::from_rat(&p);
        let w = ZPoly::from_scaled(z.rescaled(&BigInt::from(12)), BigInt::from(12));
        assert_eq!(z, w);
        assert_eq!(w.to_rat(), p);
        assert_ne!(z, ZPoly::from_rat(&Poly::new(vec![rat(1), frac(-1, 2), frac(1, 8)])));
    }

    #[test]
    fn cancel_by_gcd() {
        // (1-T)(1-2T) / (1-T)(1-3T)
        let x = ZPoly::from_rat(&Poly::from_i64s(&[1, -3, 2]));
        let y = ZPoly::from_rat(&Poly::from_i64s(&[1, -4, 3]));
        let (a, b) = ZPoly::cancel(x, y);
        assert_eq!(a.to_rat(), Poly::from_i64s(&[1, -2]));
        assert_eq!(b.to_rat(), Poly::from_i64s(&[1, -3]));
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn kronecker_matches_schoolbook() {
        let a: Vec<BigInt> = (0..40).map(|i| BigInt::from(3).pow(i) * if i % 3 == 0 { -1 } else { 1 }).collect();
        let b: Vec<BigInt> = (0..25).map(|i| BigInt::from(-7i64 + i as i64) << (i * 5)).collect();
        assert_eq!(mul_int(&a, &b), mul_schoolbook(&a, &b));
        assert_eq!(
            mul_int(&ints(&[1, -1, -1]), &ints(&[-1, 1, 1])),
            mul_schoolbook(&ints(&[1, -1, -1]), &ints(&[-1, 1, 1]))
        );
        let big = vec![-(BigInt::one() << 64u32); 3];
        assert_eq!(mul_int(&big, &big), mul_schoolbook(&big, &big));
    }

    #[test]
    fn norm_root_product_matches_newton() {
        use crate::newton::{int_poly_from_power_sums, int_power_sums};
        let f = ints(&[1, -3, 5, -2]);
        let g = ints(&[1, 2, -7, 0, 4, 1]);
        let n = (f.len() - 1) * (g.len() - 1);
        let pf = int_power_sums(&f, n);
        let pg = int_power_sums(&g, n);
        let prod: Vec<BigInt> = pf.iter().zip(&pg).map(|(a, b)| a * b).collect();
        assert_eq!(root_product_norm(&f, &g), int_poly_from_power_sums(&prod, n).unwrap());
        assert_eq!(root_product_norm(&ints(&[1, -2]), &g), ints(&[1, 4, -28, 0, 64, 32]));
    }

    #[test]
    fn newton_division() {
        let d: Vec<BigInt> = (0..60).map(|i| if i == 0 { BigInt::one() } else { BigInt::from(i * i) - 40 }).collect();
        let q: Vec<BigInt> = (0..90).map(|i| BigInt::from(2).pow(i) - 1000).collect();
        let n = mul_int(&d, &q);
        assert_eq!(exact_div_int(&n, &d), Some(q.clone()));
        let mut bad = n.clone();
        bad[10] += 1;
        assert_eq!(exact_div_int(&bad, &d), None);
    }
}
