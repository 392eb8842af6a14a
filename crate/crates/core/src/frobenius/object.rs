//! Graded objects with an invertible rational "Frobenius" matrix per degree.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::class::K0Class;
use num_bigint::BigInt;
use num_traits::One;

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::newton::{int_poly_from_power_sums, scaled_power_sums};
use crate::poly::Poly;
use crate::rat::{binomial_usize, fmt_rat, parse_rat, rat, rat_pow, Rat};
use crate::ratfun::{ratfun_normalize, RatFun};
use crate::ring::Ring;
use crate::symfunc::{int_exterior, int_symmetric};
use crate::zpoly::ZPoly;

/// Even degrees form the positive part, odd degrees the negative part.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FrobObj {
    pieces: BTreeMap<i32, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiStats {
    pub chi: i64,
    pub chi_plus: i64,
    pub chi_minus: i64,
    pub betti: BTreeMap<i32, usize>,
}

impl ChiStats {
    pub fn chi_minus_even(&self) -> bool {
        self.chi_minus % 2 == 0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Power {
    Exterior,
    Symmetric,
}

fn is_odd(d: i32) -> bool {
    d.rem_euclid(2) == 1
}

impl FrobObj {
    /// Validates that every piece is square and invertible; empty pieces are
    /// dropped.
    pub fn new(pieces: BTreeMap<i32, Matrix>) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (d, m) in pieces {
            if !m.is_square() {
                return Err(Error::ShapeMismatch(format!("piece in degree {d} is not square")));
            }
            if m.rows() == 0 {
                continue;
            }
            if Ring::is_zero(&m.det()) {
                return Err(Error::SingularPiece(d));
            }
            out.insert(d, m);
        }
        Ok(FrobObj { pieces: out })
    }

    pub fn zero() -> Self {
        FrobObj::default()
    }

    pub fn unit() -> Self {
        Self::single(0, Matrix::identity(1))
    }

    /// A single piece in one degree.
    pub fn in_degree(degree: i32, m: Matrix) -> Result<Self> {
        Self::new(BTreeMap::from([(degree, m)]))
    }

    fn single(degree: i32, m: Matrix) -> Self {
        FrobObj { pieces: BTreeMap::from([(degree, m)]) }
    }

    pub fn lefschetz(q: &Rat) -> Result<Self> {
        Self::tate(1, q)
    }

    /// `L^n`: the line `[qⁿ]` in degree `2n`.
    pub fn tate(n: i32, q: &Rat) -> Result<Self> {
        if Ring::is_zero(q) {
            return Err(Error::SingularPiece(2 * n));
        }
        Ok(Self::single(2 * n, Matrix::scalar(1, rat_pow(q, n as i64))))
    }

    /// Artin object: a finite-order matrix in degree 0.
    pub fn artin(m: Matrix) -> Result<Self> {
        Self::new(BTreeMap::from([(0, m)]))
    }

    /// `h(C)` of a curve from its Weil polynomial `P(T) = det(1 - F T | h¹)`.
    pub fn curve(weil: &Poly<Rat>, q: &Rat) -> Result<Self> {
        check_weil(weil, q)?;
        let mut pieces = BTreeMap::from([(0, Matrix::identity(1)), (2, Matrix::scalar(1, q.clone()))]);
        if weil.degree().unwrap_or(0) > 0 {
            pieces.insert(1, Matrix::companion_of_reversed(weil)?);
        }
        Self::new(pieces)
    }

    /// `h(A) = ⊕ᵢ Sⁱ(h¹)` for an odd `h¹` given by a `2g×2g` matrix: degree
    /// `i` carries `Λⁱ` of the underlying matrix.
    pub fn abelian(h1: &Matrix) -> Result<Self> {
        if !h1.is_square() || h1.rows() % 2 != 0 || h1.rows() == 0 {
            return Err(Error::ShapeMismatch("h1 must be 2g x 2g with g >= 1".into()));
        }
        if Ring::is_zero(&h1.det()) {
            return Err(Error::SingularPiece(1));
        }
        Self::new((0..=h1.rows()).map(|i| (i as i32, h1.compound(i))).collect())
    }

    /// `h(Pⁿ) = 𝟙 ⊕ L ⊕ … ⊕ Lⁿ`.
    pub fn projective_space(n: u32, q: &Rat) -> Result<Self> {
        let mut out = Self::zero();
        for j in 0..=n as i32 {
            out = out.dsum(&Self::tate(j, q)?);
        }
        Ok(out)
    }

    /// Blow-up of `P²` at a pair of conjugate points: `h²` is `L` tensored
    /// with the permutation representation `1 ⊕ (swap of the two points)`.
    pub fn blowup_p2_conjugate(q: &Rat) -> Result<Self> {
        let h2 = Matrix::scalar(1, q.clone()).block_diag(&Matrix::swap2().scale(q));
        Self::new(BTreeMap::from([(0, Matrix::identity(1)), (2, h2), (4, Matrix::scalar(1, q * q))]))
    }

    pub fn pieces(&self) -> &BTreeMap<i32, Matrix> {
        &self.pieces
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn dsum(&self, rhs: &Self) -> Self {
        let mut pieces = self.pieces.clone();
        for (&d, m) in &rhs.pieces {
            let merged = match pieces.remove(&d) {
                Some(a) => a.block_diag(m),
                None => m.clone(),
            };
            pieces.insert(d, merged);
        }
        FrobObj { pieces }
    }

    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Self::zero();
        for (&i, a) in &self.pieces {
            for (&j, b) in &rhs.pieces {
                out = out.dsum(&Self::single(i + j, a.kron(b)));
            }
        }
        out
    }

    /// Degree negation with inverse-transpose matrices.
    pub fn dual(&self) -> Self {
        FrobObj {
            pieces: self
                .pieces
                .iter()
                .map(|(&d, m)| (-d, m.inverse().expect("pieces are invertible").transpose()))
                .collect(),
        }
    }

    pub fn even_part(&self) -> Self {
        FrobObj { pieces: self.pieces.iter().filter(|(&d, _)| !is_odd(d)).map(|(&d, m)| (d, m.clone())).collect() }
    }

    pub fn odd_part(&self) -> Self {
        FrobObj { pieces: self.pieces.iter().filter(|(&d, _)| is_odd(d)).map(|(&d, m)| (d, m.clone())).collect() }
    }

    pub fn class_of(&self) -> K0Class {
        self.pieces.iter().fold(K0Class::zero(), |acc, (&d, m)| acc.add(&K0Class::effective(d, m.reversed_charpoly())))
    }

    pub fn chi_stats(&self) -> ChiStats {
        let betti: BTreeMap<i32, usize> = self.pieces.iter().map(|(&d, m)| (d, m.rows())).collect();
        let chi_plus: i64 = betti.iter().filter(|(&d, _)| !is_odd(d)).map(|(_, &b)| b as i64).sum();
        let chi_minus: i64 = -betti.iter().filter(|(&d, _)| is_odd(d)).map(|(_, &b)| b as i64).sum::<i64>();
        ChiStats { chi: chi_plus + chi_minus, chi_plus, chi_minus, betti }
    }

    /// Classes of `Λᵖ` (or `Sᵖ`) of the underlying space of one piece for
    /// `p = 0..=n`, placed in degrees `p·d`. Runs over the integers after
    /// scaling the eigenvalues to algebraic integers.
    fn piece_powers(d: i32, m: &Matrix, n: usize, kind: Power) -> Result<Vec<K0Class>> {
        let b = m.rows();
        let count = |p: usize| match kind {
            Power::Exterior => binomial_usize(b, p),
            Power::Symmetric => binomial_usize(b + p - 1, p),
        };
        let needed = (1..=n).map(|p| p * count(p)).max().unwrap_or(0);
        let eig = scaled_power_sums(&m.reversed_charpoly(), needed)?;
        let mut out = vec![K0Class::one()];
        let mut scale = BigInt::one();
        for p in 1..=n {
            scale *= &eig.scale;
            let c = count(p);
            if c == 0 {
                out.push(K0Class::zero());
                continue;
            }
            let sums = match kind {
                Power::Exterior => int_exterior(&eig.sums, p, c)?,
                Power::Symmetric => int_symmetric(&eig.sums, p, c)?,
            };
            out.push(K0Class::effective_scaled(
                d * p as i32,
                ZPoly::from_scaled(int_poly_from_power_sums(&sums, c)?, scale.clone()),
            ));
        }
        Ok(out)
    }

    /// Super powers `0..=n`: `Λⁿ(M) = ⊕ Λᵖ(M_even) ⊗ S^q(M_odd)` and
    /// `Sⁿ(M) = ⊕ Sᵖ(M_even) ⊗ Λ^q(M_odd)`, with powers of the underlying
    /// spaces on the right-hand sides.
    fn super_powers(&self, n: usize, kind: Power) -> Result<Vec<K0Class>> {
        let mut acc: Vec<K0Class> = vec![K0Class::zero(); n + 1];
        acc[0] = K0Class::one();
        for (&d, m) in &self.pieces {
            let piece_kind = match (kind, is_odd(d)) {
                (k, false) => k,
                (Power::Exterior, true) => Power::Symmetric,
                (Power::Symmetric, true) => Power::Exterior,
            };
            let powers = Self::piece_powers(d, m, n, piece_kind)?;
            let mut next = vec![K0Class::zero(); n + 1];
            for (t, slot) in next.iter_mut().enumerate() {
                for p in 0..=t {
                    if acc[t - p].is_zero() || powers[p].is_zero() {
                        continue;
                    }
                    *slot = slot.add(&acc[t - p].mul(&powers[p]));
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    fn super_power(&self, n: usize, kind: Power) -> Result<K0Class> {
        Ok(self.super_powers(n, kind)?.swap_remove(n))
    }

    /// `[S⁰(M)], …, [Sⁿ(M)]`.
    pub fn sym_classes(&self, n: usize) -> Result<Vec<K0Class>> {
        self.super_powers(n, Power::Symmetric)
    }

    /// `[Λ⁰(M)], …, [Λⁿ(M)]`.
    pub fn ext_classes(&self, n: usize) -> Result<Vec<K0Class>> {
        self.super_powers(n, Power::Exterior)
    }

    pub fn sym_class(&self, n: usize) -> Result<K0Class> {
        self.super_power(n, Power::Symmetric)
    }

    pub fn ext_class(&self, n: usize) -> Result<K0Class> {
        self.super_power(n, Power::Exterior)
    }

    /// `(weight, δ)` of `det(M) = Λ^{χ⁺}(M⁺) ⊗ S^{-χ⁻}(M⁻)⁻¹`:
    /// `δ = Π_even det Fᵢ / Π_odd det Fᵢ`, `w = Σ (-1)ⁱ i bᵢ`.
    pub fn det_data(&self) -> (i32, Rat) {
        let mut delta = rat(1);
        let mut w = 0i32;
        for (&d, m) in &self.pieces {
            let b = m.rows() as i32;
            if is_odd(d) {
                delta /= m.det();
                w -= d * b;
            } else {
                delta *= m.det();
                w += d * b;
            }
        }
        (w, delta)
    }

    pub fn det_object(&self) -> K0Class {
        let (w, delta) = self.det_data();
        K0Class::line(w, delta)
    }

    /// The determinant as a one-dimensional object.
    pub fn det_as_object(&self) -> Self {
        let (w, delta) = self.det_data();
        Self::single(w, Matrix::scalar(1, delta))
    }

    /// Explicit super symmetric or exterior power as a graded object
    /// (compound and symmetric-power matrices).
    fn explicit_power(&self, n: usize, kind: Power) -> Self {
        let mut acc: Vec<FrobObj> = vec![Self::zero(); n + 1];
        acc[0] = Self::unit();
        for (&d, m) in &self.pieces {
            let piece_kind = match (kind, is_odd(d)) {
                (k, false) => k,
                (Power::Exterior, true) => Power::Symmetric,
                (Power::Symmetric, true) => Power::Exterior,
            };
            let powers: Vec<FrobObj> = (0..=n)
                .map(|p| {
                    let mat = match piece_kind {
                        Power::Exterior => m.compound(p),
                        Power::Symmetric => m.sym_power(p),
                    };
                    let deg = d * p as i32;
                    FrobObj { pieces: if mat.rows() == 0 { BTreeMap::new() } else { BTreeMap::from([(deg, mat)]) } }
                })
                .collect();
            let mut next = vec![Self::zero(); n + 1];
            for (t, slot) in next.iter_mut().enumerate() {
                for p in 0..=t {
                    *slot = slot.dsum(&acc[t - p].tensor(&powers[p]));
                }
            }
            acc = next;
        }
        acc.swap_remove(n)
    }

    pub fn sym_power_object(&self, n: usize) -> Self {
        self.explicit_power(n, Power::Symmetric)
    }

    pub fn ext_power_object(&self, n: usize) -> Self {
        self.explicit_power(n, Power::Exterior)
    }

    /// Lefschetz trace `Σ (-1)ⁱ tr(Fᵢᵐ)`.
    pub fn counting(&self, m: usize) -> Rat {
        self.pieces
            .iter()
            .map(|(&d, f)| {
                let t = f.pow(m).trace();
                if is_odd(d) {
                    -t
                } else {
                    t
                }
            })
            .sum()
    }

    /// Numerator and denominator factors of `Π det(1 - Fᵢ T)^{(-1)^{i+1}}`,
    /// one per degree in increasing order.
    pub fn classical_zeta_factors(&self) -> (Vec<Poly<Rat>>, Vec<Poly<Rat>>) {
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (&d, m) in &self.pieces {
            let p = m.reversed_charpoly();
            if is_odd(d) {
                num.push(p);
            } else {
                den.push(p);
            }
        }
        (num, den)
    }

    pub fn classical_zeta(&self) -> RatFun<Rat> {
        let (num, den) = self.classical_zeta_factors();
        let prod = |v: &[Poly<Rat>]| v.iter().fold(Poly::one(), |a, p| a.mul(p));
        ratfun_normalize(&prod(&num), &prod(&den)).expect("nonzero denominator")
    }

    pub fn to_json(&self) -> Value {
        let degrees: serde_json::Map<String, Value> = self
            .pieces
            .iter()
            .map(|(d, m)| {
                let rows: Vec<Value> = m
                    .to_rows()
                    .iter()
                    .map(|r| Value::Array(r.iter().map(|x| Value::String(fmt_rat(x))).collect()))
                    .collect();
                (d.to_string(), Value::Array(rows))
            })
            .collect();
        json!({ "degrees": degrees })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Malformed(m.to_string());
        let degrees = v.get("degrees").and_then(Value::as_object).ok_or_else(|| bad("missing \"degrees\" object"))?;
        let mut pieces = BTreeMap::new();
        for (k, rows) in degrees {
            let d: i32 = k.parse().map_err(|_| bad("degree keys must be integers"))?;
            let rows = rows.as_array().ok_or_else(|| bad("matrix must be an array of rows"))?;
            let rows: Vec<Vec<Rat>> = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| bad("row must be an array"))?
                        .iter()
                        .map(|x| match x {
                            Value::String(s) => parse_rat(s),
                            Value::Number(n) => parse_rat(&n.to_string()),
                            _ => Err(bad("entries must be strings")),
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            pieces.insert(d, Matrix::from_rows(rows)?);
        }
        Self::new(pieces)
    }
}

/// `weil(0) = 1`, even degree `2g`, and `a_{2g-i} = q^{g-i} a_i`.
pub fn check_weil(weil: &Poly<Rat>, q: &Rat) -> Result<()> {
    use num_traits::Signed;
    if !q.is_positive() {
        return Err(Error::BadWeilPoly(format!("q = {} must be positive", fmt_rat(q))));
    }
    if weil.coeff(0) != rat(1) {
        return Err(Error::BadWeilPoly("constant term must be 1".into()));
    }
    let n = weil.degree().unwrap_or(0);
    if n % 2 != 0 {
        return Err(Error::BadWeilPoly(format!("degree {n} is odd")));
    }
    let g = (n / 2) as i64;
    for i in 0..=n {
        let expect = weil.coeff(i) * rat_pow(q, g - i as i64);
        if weil.coeff(n - i) != expect {
            return Err(Error::BadWeilPoly(format!("coefficient {} breaks q-palindromy", n - i)));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    fn p(cs: &[i64]) -> Poly<Rat> {
        Poly::from_i64s(cs)
    }

    fn e() -> FrobObj {
        FrobObj::curve(&p(&[1, 0, 2]), &rat(2)).unwrap()
    }

    #[test]
    fn curve_class_and_counts() {
        let c = e().class_of();
        let expect = K0Class::effective(0, p(&[1, -1]))
            .add(&K0Class::effective(1, p(&[1, 0, 2])))
            .add(&K0Class::effective(2, p(&[1, -2])));
        assert_eq!(c, expect);
        assert_eq!(e().counting(1), rat(3));
        assert_eq!(e().counting(2), rat(9));
        let z = e().classical_zeta();
        assert_eq!((z.num, z.den), (p(&[1, 0, 2]), p(&[1, -3, 2])));
    }

    #[test]
    fn bad_weil_polynomials() {
        assert!(matches!(FrobObj::curve(&p(&[2]), &rat(2)), Err(Error::BadWeilPoly(_))));
        assert!(matches!(FrobObj::curve(&p(&[1, 1, 3]), &rat(2)), Err(Error::BadWeilPoly(_))));
        assert!(matches!(FrobObj::curve(&p(&[1, 1]), &rat(2)), Err(Error::BadWeilPoly(_))));
        assert!(FrobObj::curve(&p(&[1, -1, 2]), &rat(2)).is_ok());
    }

    #[test]
    fn singular_piece_rejected() {
        let m = Matrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(FrobObj::new(BTreeMap::from([(3, m)])), Err(Error::SingularPiece(3)));
    }

    #[test]
    fn tensor_dual_basics() {
        let q = rat(2);
        let l = FrobObj::lefschetz(&q).unwrap();
        assert_eq!(l.tensor(&l), FrobObj::tate(2, &q).unwrap());
        assert_eq!(l.dual(), FrobObj::single(-2, Matrix::scalar(1, frac(1, 2))));
        let dual_class = e().dual().class_of();
        let l_inv = K0Class::line(-2, frac(1, 2));
        assert_eq!(dual_class, e().class_of().mul(&l_inv));
    }

    #[test]
    fn powers_of_projective_plane() {
        let q = rat(3);
        let p2 = FrobObj::projective_space(2, &q).unwrap();
        assert_eq!(p2.ext_class(3).unwrap(), K0Class::line(6, rat(27)));
        assert_eq!(p2.ext_class(4).unwrap(), K0Class::zero());
        assert_eq!(p2.det_object(), K0Class::line(6, rat(27)));
        let st = p2.chi_stats();
        assert_eq!((st.chi, st.chi_plus, st.chi_minus), (3, 3, 0));
    }

    #[test]
    fn curve_symmetric_square_of_h1() {
        let h1 = e().odd_part();
        assert_eq!(h1.sym_class(2).unwrap(), K0Class::line(2, rat(2)));
        assert_eq!(h1.sym_class(3).unwrap(), K0Class::zero());
        let st = e().chi_stats();
        assert_eq!((st.chi, st.chi_plus, st.chi_minus), (0, 2, -2));
        assert_eq!(e().det_object(), K0Class::one());
    }

    #[test]
    fn blowup_determinant() {
        let q = rat(2);
        let s = FrobObj::blowup_p2_conjugate(&q).unwrap();
        assert_eq!(s.det_data(), (10, rat(-32)));
        let artin = FrobObj::artin(Matrix::swap2()).unwrap();
        assert_eq!(artin.det_data(), (0, rat(-1)));
    }

    #[test]
    fn explicit_powers_match_class_level_powers() {
        let m = FrobObj::new(BTreeMap::from([
            (0, Matrix::from_i64_rows(&[&[1, 2], &[0, -1]])),
            (1, Matrix::from_i64_rows(&[&[2, 1], &[1, 1]])),
        ]))
        .unwrap();
        for n in 0..=3 {
            assert_eq!(m.sym_power_object(n).class_of(), m.sym_class(n).unwrap(), "S^{n}");
            assert_eq!(m.ext_power_object(n).class_of(), m.ext_class(n).unwrap(), "Λ^{n}");
        }
    }

    #[test]
    fn json_round_trip() {
        let v = e().to_json();
        assert_eq!(v.to_string(), r#"{"degrees":{"0":[["1"]],"1":[["0","-2"],["1","0"]],"2":[["2"]]}}"#);
        assert_eq!(FrobObj::from_json(&v).unwrap(), e());
    }
}
