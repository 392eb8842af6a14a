use mzeta::engine::{
    det_from_parts, det_signed, funceq_check, funceq_check_selfdual, zeta_rational, zeta_series, LambdaContext,
};
use mzeta::frobenius::random::random_invertible;
use mzeta::frobenius::{FrobObj, Matrix};
use mzeta::poly::Poly;
use mzeta::rat::{rat, Rat};
use mzeta::symbolic::packs::{abelian_pack, artin_pack, blowup_pack, curve_pack, psp};
use mzeta::symbolic::{
    c1_normal_form, k0_normalize, Atom, AtomClass, K0Elem, Monomial, Realization, Registry, RootExpr, SymObject,
    SymbolicContext,
};
use mzeta::Ring;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn l_pow(reg: &Registry, e: i64) -> Monomial {
    Monomial::atom(&reg.lefschetz()).pow(e).unwrap()
}

/// Generalized binomial `C(x, k)` for any integer `x`.
fn gbinom(x: i64, k: usize) -> Rat {
    (0..k as i64).fold(rat(1), |acc, i| acc * rat(x - i) / rat(i + 1))
}

/// Small pack objects sharing one registry.
fn pack_objects() -> (Registry, Vec<(&'static str, SymObject)>) {
    let mut reg = Registry::new();
    let c1 = curve_pack(&mut reg, 1).unwrap();
    let c2 = curve_pack(&mut reg, 2).unwrap();
    let s = blowup_pack(&mut reg).unwrap();
    let art = artin_pack(&mut reg, &Matrix::swap2()).unwrap();
    let odd_line = SymObject::summand(RootExpr::Line(Monomial::one()), true);
    let objs = vec![
        ("unit", SymObject::unit()),
        ("P2", psp(&reg, 2)),
        ("L^-1", SymObject::line(l_pow(&reg, -1))),
        ("curve1", c1.clone()),
        ("h1 curve2", c2.odd_part()),
        ("curve2", c2),
        ("blowup", s),
        ("artin", art),
        ("odd line", odd_line.clone()),
        ("mixed", c1.odd_part().dsum(&odd_line)),
    ];
    (reg, objs)
}

#[test]
fn det_from_lambda_operations_matches_declared_det() {
    let (reg, objs) = pack_objects();
    let c = SymbolicContext::new(reg);
    for (name, m) in &objs {
        let s = c.split(m);
        assert_eq!(det_from_parts(&c, &s).unwrap(), det_signed(&c, &s).unwrap(), "{name}");
    }
}

#[test]
fn schur_functor_determinant_identities() {
    let (_, objs) = pack_objects();
    for (na, a) in &objs {
        let (da, ra) = (a.det_monomial(), a.chi().0 + a.chi().1);
        for (nb, b) in &objs {
            let (db, rb) = (b.det_monomial(), b.chi().0 + b.chi().1);
            assert_eq!(a.dsum(b).det_monomial(), da.mul(&db), "{na} + {nb}");
            let expect = da.pow(rb).unwrap().mul(&db.pow(ra).unwrap());
            assert_eq!(a.tensor(b).det_monomial(), expect, "{na} * {nb}");
        }
        if ra == 0 {
            continue;
        }
        for n in 1..=3usize {
            let r = gbinom(ra, n) * rat(n as i64) / rat(ra);
            let s = gbinom(ra + n as i64 - 1, n) * rat(n as i64) / rat(ra);
            assert!(r.is_integer() && s.is_integer(), "{na}, n = {n}");
            let (r, s) = (r.to_integer().try_into().unwrap(), s.to_integer().try_into().unwrap());
            assert_eq!(a.ext_power(n).det_monomial(), da.pow(r).unwrap(), "ext {na}, n = {n}");
            assert_eq!(a.sym_power(n).det_monomial(), da.pow(s).unwrap(), "sym {na}, n = {n}");
        }
    }
}

#[test]
fn c1_closure_under_sum_and_product() {
    let (reg, objs) = pack_objects();
    for (na, a) in &objs {
        for (nb, b) in &objs {
            for m in [a.dsum(b), a.tensor(b)] {
                let d = K0Elem::monomial(m.det_monomial());
                assert!(c1_normal_form(&reg, &d).is_ok(), "{na}, {nb}");
            }
        }
    }
}

#[test]
fn curves_have_kapranov_shape_and_functional_equation() {
    for g in 1..=2usize {
        let mut reg = Registry::new();
        let h = curve_pack(&mut reg, g).unwrap();
        let l = K0Elem::monomial(l_pow(&reg, 1));
        let c = SymbolicContext::new(reg.clone());
        let s = c.split(&h);
        let z = zeta_rational(&c, &s).unwrap();
        let one = K0Elem::one();
        let den = Poly::new(vec![one.clone(), one.add(&l).neg(), l.clone()]);
        assert_eq!(z.den, den, "g = {g}");
        assert_eq!(z.num.degree(), Some(2 * g));
        assert_eq!(z.num.coeff(2 * g), l.pow(g as u64));
        assert_eq!(det_signed(&c, &s).unwrap(), K0Elem::monomial(l_pow(&reg, 1 - g as i64)));
        let r = funceq_check(&c, &s, 2 * (2 + 2 * g) + 8).unwrap();
        assert!(r.holds, "g = {g}: {:?}", r.first_mismatch);
        let r = funceq_check_selfdual(&c, &s, 1, 12).unwrap();
        assert!(r.holds, "g = {g}: {:?}", r.first_mismatch);
    }
}

#[test]
fn abelian_packs() {
    let mut rng = ChaCha8Rng::seed_from_u64(mzeta::frobenius::seed_from_env(7));
    for g in 1..=3usize {
        let mut reg = Registry::new();
        let a = abelian_pack(&mut reg, g).unwrap();
        assert!(a.det_monomial().is_one(), "g = {g}");
        let ranks: Vec<usize> = a.summands.iter().map(|s| s.expr.rank()).collect();
        let expect: Vec<usize> =
            (0..=2 * g).map(|i| gbinom(2 * g as i64, i).to_integer().try_into().unwrap()).collect();
        assert_eq!(ranks, expect);
        let frob = FrobObj::abelian(&random_invertible(&mut rng, 2 * g)).unwrap();
        let betti: Vec<usize> = frob.chi_stats().betti.values().copied().collect();
        assert_eq!(betti, expect);
        let real = Realization::new(&rat(2)).realize(&K0Elem::monomial(a.det_monomial())).unwrap();
        assert_eq!(real, frob.det_object());
    }
}

#[test]
fn realizations_commute_with_zeta_and_det() {
    let q = rat(2);
    let mut reg = Registry::new();
    let weil = Poly::from_i64s(&[1, 1, 2, 2, 4]);
    let frob_c = FrobObj::curve(&weil, &q).unwrap();
    let sym_c = curve_pack(&mut reg, 2).unwrap();
    let frob_s = FrobObj::blowup_p2_conjugate(&q).unwrap();
    let sym_s = blowup_pack(&mut reg).unwrap();
    let frob_p = FrobObj::projective_space(2, &q).unwrap();
    let sym_p = psp(&reg, 2);
    let real = Realization::new(&q).with_curve(2, &frob_c.odd_part()).unwrap();
    let sc = SymbolicContext::new(reg);
    let fc = mzeta::frobenius::FrobContext::new(q.clone());
    for (name, s, f) in [("curve", &sym_c, &frob_c), ("blowup", &sym_s, &frob_s), ("P2", &sym_p, &frob_p)] {
        let zs = zeta_series(&sc, &sc.split(s), 6).unwrap();
        let zf = zeta_series(&fc, &fc.split(f), 6).unwrap();
        for n in 0..=6 {
            assert_eq!(real.realize(zs.coeff(n)).unwrap(), *zf.coeff(n), "{name}, n = {n}");
        }
        for n in 0..=3 {
            assert_eq!(real.realize(&s.ext_class(n).unwrap()).unwrap(), f.ext_class(n).unwrap(), "{name}, n = {n}");
        }
        let d = real.realize(&det_signed(&sc, &sc.split(s)).unwrap()).unwrap();
        assert_eq!(d, f.det_object(), "{name}");
    }
}

fn atoms() -> Vec<Atom> {
    vec![Atom::new("A", AtomClass::Artin), Atom::new("L", AtomClass::Invertible), Atom::new("X", AtomClass::Table)]
}

type Raw = Vec<(Rat, Vec<(Atom, i64)>)>;

fn raw_strategy() -> impl Strategy<Value = Raw> {
    let factor = (0..3usize, -3i64..4).prop_map(|(i, e)| {
        let a = atoms()[i].clone();
        let e = if a.class() == AtomClass::Table { e.abs() } else { e };
        (a, e)
    });
    let term = (-4i64..5, 1i64..4, prop::collection::vec(factor, 0..4)).prop_map(|(n, d, f)| (rat(n) / rat(d), f));
    prop::collection::vec(term, 0..8)
}

fn to_raw(e: &K0Elem) -> Raw {
    e.terms().map(|(m, c)| (c.clone(), m.factors().map(|(a, x)| (a.clone(), x)).collect())).collect()
}

proptest! {
    #[test]
    fn normalization_is_confluent(raw in raw_strategy(), seed in any::<u64>()) {
        let once = k0_normalize(&raw).unwrap();
        prop_assert_eq!(k0_normalize(&to_raw(&once)).unwrap(), once.clone());
        let mut shuffled = raw.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rand::seq::SliceRandom::shuffle(shuffled.as_mut_slice(), &mut rng);
        for t in shuffled.iter_mut() {
            rand::seq::SliceRandom::shuffle(t.1.as_mut_slice(), &mut rng);
        }
        prop_assert_eq!(k0_normalize(&shuffled).unwrap(), once);
    }

    #[test]
    fn normalization_is_linear(a in raw_strategy(), b in raw_strategy(), c in -3i64..4) {
        let joined: Raw = a.iter().cloned().chain(b.iter().cloned()).collect();
        let (na, nb) = (k0_normalize(&a).unwrap(), k0_normalize(&b).unwrap());
        prop_assert_eq!(k0_normalize(&joined).unwrap(), na.add(&nb));
        let scaled: Raw = a.iter().map(|(x, f)| (x * rat(c), f.clone())).collect();
        prop_assert_eq!(k0_normalize(&scaled).unwrap(), mzeta::QAlgebra::scale(&na, &rat(c)));
    }
}
