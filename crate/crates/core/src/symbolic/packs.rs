//! Ready-made declarations and objects: curves, abelian varieties, projective
//! spaces, the conjugate-point blow-up of `P²` and order-two Artin objects.

use super::elem::{Atom, AtomClass, K0Elem, Monomial};
use super::object::SymObject;
use super::registry::{AtomDecl, AtomKind, GenTable, Registry};
use crate::error::{Error, Result};
use crate::frobenius::matrix::Matrix;
use crate::rat::rat;
use crate::ring::Ring;

/// Name of the Artin atom used by [`blowup_pack`].
pub const ARTIN: &str = "A";

pub fn h1_name(g: usize) -> String {
    format!("h1_{g}")
}

/// Name of the free symbol standing for `Sⁿ(h¹)`, `2 ≤ n ≤ g`.
pub fn s_name(n: usize, g: usize) -> String {
    format!("s{n}_{g}")
}

fn lefschetz_power(reg: &Registry, e: i64) -> Monomial {
    Monomial::atom(&reg.lefschetz()).pow(e).expect("L is invertible")
}

/// Declares the negative generator `h1_g` of rank `2g` with
/// `S^{2g-n} = Sⁿ·L^{g-n}`, dual `h1_g·L⁻¹` and determinant `L^g`.
/// Returns the atom name.
pub fn declare_h1(reg: &mut Registry, g: usize) -> Result<String> {
    if g == 0 {
        return Err(Error::Unsupported("h1 of genus 0 is zero".into()));
    }
    let name = h1_name(g);
    let own = Atom::new(&name, AtomClass::Table);
    let mut table = vec![K0Elem::one(), K0Elem::atom(&own)];
    for n in 2..=g {
        let s = s_name(n, g);
        reg.declare(AtomDecl { name: s.clone(), kind: AtomKind::Free })?;
        table.push(K0Elem::atom(&reg.atom(&s)?));
    }
    for j in g + 1..=2 * g {
        let low = table[2 * g - j].clone();
        table.push(low.mul(&K0Elem::monomial(lefschetz_power(reg, (j - g) as i64))));
    }
    let det = lefschetz_power(reg, g as i64);
    let decl = AtomDecl {
        name: name.clone(),
        kind: AtomKind::NegativeGen(GenTable {
            dim: 2 * g,
            table,
            dual_expr: Monomial::atom(&own).mul(&lefschetz_power(reg, -1)),
            det_expr: det,
        }),
    };
    reg.declare(decl)?;
    Ok(name)
}

/// `h(C) = 𝟙 ⊕ h¹ ⊕ L` for a curve of genus `g`.
pub fn curve_pack(reg: &mut Registry, g: usize) -> Result<SymObject> {
    let h1 = if g == 0 {
        SymObject::zero()
    } else {
        let name = declare_h1(reg, g)?;
        SymObject::from_atom(reg, &name)?
    };
    Ok(SymObject::unit().dsum(&h1).dsum(&SymObject::line(lefschetz_power(reg, 1))))
}

/// `h(A) = ⊕_{i ≤ 2g} Sⁱ(h¹)` for an abelian variety of dimension `g`.
pub fn abelian_pack(reg: &mut Registry, g: usize) -> Result<SymObject> {
    let name = declare_h1(reg, g)?;
    let h1 = SymObject::from_atom(reg, &name)?;
    Ok((0..=2 * g).fold(SymObject::zero(), |acc, i| acc.dsum(&h1.sym_power(i))))
}

/// `𝟙 ⊕ L ⊕ … ⊕ Lⁿ`.
pub fn psp(reg: &Registry, n: usize) -> SymObject {
    (0..=n as i64).fold(SymObject::zero(), |acc, i| acc.dsum(&SymObject::line(lefschetz_power(reg, i))))
}

pub fn declare_artin(reg: &mut Registry) -> Result<Atom> {
    reg.declare(AtomDecl { name: ARTIN.into(), kind: AtomKind::ArtinOrder2 })?;
    reg.atom(ARTIN)
}

/// `h(S) = 𝟙 ⊕ (L ⊕ L ⊕ L·A) ⊕ L²`: the blow-up of `P²` at two conjugate
/// points, with `A` the sign character of the swap.
pub fn blowup_pack(reg: &mut Registry) -> Result<SymObject> {
    let h2 = blowup_h2(reg)?;
    Ok(SymObject::unit().dsum(&h2).dsum(&SymObject::line(lefschetz_power(reg, 2))))
}

/// `h²` of [`blowup_pack`].
pub fn blowup_h2(reg: &mut Registry) -> Result<SymObject> {
    let a = Monomial::atom(&declare_artin(reg)?);
    let l = lefschetz_power(reg, 1);
    Ok(SymObject::line(l.clone()).dsum(&SymObject::line(l.clone())).dsum(&SymObject::line(l.mul(&a))))
}

/// `a·𝟙 ⊕ b·A` for an involution with `a` eigenvalues `+1` and `b`
/// eigenvalues `-1`. Higher finite orders are not modeled.
pub fn artin_pack(reg: &mut Registry, m: &Matrix) -> Result<SymObject> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::ShapeMismatch("artin matrix must be square".into()));
    }
    let n = m.rows();
    if m.mul(m)? != Matrix::identity(n) {
        return Err(Error::Unsupported("only Artin classes of order 2 are modeled".into()));
    }
    // trace = a - b, a + b = n
    let tr = m.trace();
    let a = (rat(n as i64) + &tr) / rat(2);
    let a = a.to_integer().try_into().map_err(|_| Error::Malformed("trace".into()))?;
    let b = n - a;
    let sign = Monomial::atom(&declare_artin(reg)?);
    let mut out = SymObject::zero();
    for _ in 0..a {
        out = out.dsum(&SymObject::unit());
    }
    for _ in 0..b {
        out = out.dsum(&SymObject::line(sign.clone()));
    }
    Ok(out)
}
