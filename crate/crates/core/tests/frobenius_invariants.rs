use mzeta::engine::{zeta_series, LambdaContext};
use mzeta::frobenius::random::{random_object, random_poincare_object};
use mzeta::frobenius::{weight_of_invertible, FrobContext, FrobObj, K0Class, Matrix, RandomParams};
use mzeta::poly::Poly;
use mzeta::rat::{rat, Rat};
use mzeta::Ring;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(default: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(mzeta::frobenius::seed_from_env(default))
}

fn small() -> RandomParams {
    RandomParams { max_total_dim: 4, max_even_dim: 3, ..RandomParams::default() }
}

fn lef(e: i64) -> K0Class {
    K0Class::line(2, rat(2)).pow_signed(e).unwrap()
}

fn gbinom(x: i64, k: usize) -> Rat {
    (0..k as i64).fold(rat(1), |acc, i| acc * rat(x - i) / rat(i + 1))
}

fn chi(m: &FrobObj) -> i64 {
    m.chi_stats().chi
}

#[test]
fn top_powers_are_invertible_and_the_next_vanish() {
    let mut r = rng(11);
    for k in 0..50 {
        let odd = k % 2 == 1;
        let m = random_object(&mut r, &small(), Some(odd));
        let n = m.chi_stats().betti.values().sum::<usize>();
        let (top, next) = if odd {
            (m.sym_class(n).unwrap(), m.sym_class(n + 1).unwrap())
        } else {
            (m.ext_class(n).unwrap(), m.ext_class(n + 1).unwrap())
        };
        assert!(next.is_zero(), "{m:?}");
        assert!(top.unit_inverse().is_some(), "{m:?}");
    }
}

#[test]
fn duality_pairs_complementary_powers() {
    let mut r = rng(12);
    for k in 0..50 {
        let odd = k % 2 == 1;
        let m = random_object(&mut r, &small(), Some(odd));
        let n = m.chi_stats().betti.values().sum::<usize>();
        let dual = m.dual();
        let power = |x: &FrobObj, j: usize| if odd { x.sym_class(j).unwrap() } else { x.ext_class(j).unwrap() };
        let top_inv = power(&m, n).unit_inverse().unwrap();
        for j in 0..=n {
            assert_eq!(power(&dual, j), power(&m, n - j).mul(&top_inv), "{m:?}, j = {j}");
        }
    }
}

#[test]
fn schur_functor_determinant_identities() {
    let mut r = rng(13);
    let p = RandomParams { max_total_dim: 3, max_block: 2, ..small() };
    for _ in 0..50 {
        let a = random_object(&mut r, &p, None);
        let b = random_object(&mut r, &p, None);
        let (da, db) = (a.det_object(), b.det_object());
        let (ca, cb) = (chi(&a), chi(&b));
        assert_eq!(a.dsum(&b).det_object(), da.mul(&db));
        let expect = da.pow_signed(cb).unwrap().mul(&db.pow_signed(ca).unwrap());
        assert_eq!(a.tensor(&b).det_object(), expect, "{a:?} * {b:?}");
        if ca == 0 {
            continue;
        }
        for n in 1..=2usize {
            let rr = gbinom(ca, n) * rat(n as i64) / rat(ca);
            let ss = gbinom(ca + n as i64 - 1, n) * rat(n as i64) / rat(ca);
            assert!(rr.is_integer() && ss.is_integer());
            let (rr, ss): (i64, i64) = (rr.to_integer().try_into().unwrap(), ss.to_integer().try_into().unwrap());
            assert_eq!(a.ext_power_object(n).det_object(), da.pow_signed(rr).unwrap(), "ext {a:?}, n = {n}");
            assert_eq!(a.sym_power_object(n).det_object(), da.pow_signed(ss).unwrap(), "sym {a:?}, n = {n}");
        }
    }
}

#[test]
fn weakly_polarisable_determinants() {
    let mut r = rng(14);
    let q = rat(2);
    for _ in 0..20 {
        let m = random_object(&mut r, &small(), None);
        for n in 0..=2 {
            let x = m.dsum(&m.dual().tensor(&FrobObj::tate(n, &q).unwrap()));
            let d = x.det_object();
            assert_eq!(d.mul(&d), lef(n as i64 * chi(&x)), "{m:?}, n = {n}");
            assert_eq!(d, lef(n as i64 * chi(&m)));
        }
    }
}

/// `Π_{i even} det(Fᵢ) / Π_{i odd} det(Fᵢ)` and weight `Σ(-1)ⁱ i bᵢ`, read
/// off the matrices directly.
fn det_oracle(m: &FrobObj) -> K0Class {
    let mut delta = rat(1);
    let mut w = 0i64;
    for (&i, f) in m.pieces() {
        let b = f.rows() as i64;
        if i.rem_euclid(2) == 0 {
            delta *= f.det();
            w += i as i64 * b;
        } else {
            delta /= f.det();
            w -= i as i64 * b;
        }
    }
    if m.is_zero() {
        return K0Class::one();
    }
    K0Class::line(w as i32, delta)
}

#[test]
fn poincare_dual_determinants() {
    let mut r = rng(15);
    let q = rat(2);
    for d in 1..=3u32 {
        for _ in 0..10 {
            let x = random_poincare_object(&mut r, d, &q);
            assert_eq!(x.det_object(), det_oracle(&x));
            for (&i, f) in x.pieces() {
                let piece = FrobObj::in_degree(i, f.clone()).unwrap();
                let di = piece.det_object();
                let e = if i % 2 == 0 { 1 } else { -1 } * i as i64 * f.rows() as i64;
                assert_eq!(di.mul(&di), lef(e), "degree {i}");
            }
            let st = x.chi_stats();
            let bd = st.betti[&(d as i32)] as i64;
            let sign = if d % 2 == 0 { 1 } else { -1 };
            let twice = d as i64 * (st.chi - sign * bd);
            assert_eq!(twice % 2, 0);
            let hd = FrobObj::in_degree(d as i32, x.pieces()[&(d as i32)].clone()).unwrap();
            assert_eq!(x.det_object(), lef(twice / 2).mul(&hd.det_object()), "d = {d}");
        }
    }
}

#[test]
fn middle_degree_variant_differs_on_surfaces() {
    let q = rat(2);
    let h1 = Matrix::companion_of_reversed(&Poly::from_i64s(&[1, 1, 2, 2, 4])).unwrap();
    for x in [FrobObj::blowup_p2_conjugate(&q).unwrap(), FrobObj::abelian(&h1).unwrap()] {
        let st = x.chi_stats();
        let (d, half) = (2i64, 1i32);
        let b_half = st.betti.get(&half).copied().unwrap_or(0) as i64;
        let hh =
            x.pieces().get(&half).map_or(K0Class::one(), |f| FrobObj::in_degree(half, f.clone()).unwrap().det_object());
        let middle = lef((d / 2) * (st.chi - (-1i64).pow(half as u32) * d * b_half)).mul(&hh);
        assert_ne!(middle, x.det_object());
    }
}

/// `exp(Σ c_m T^m / m)` to order `n`, via `k E_k = Σ_{m ≤ k} c_m E_{k-m}`.
fn exp_log_counts(c: &[Rat], n: usize) -> Vec<Rat> {
    let mut e = vec![rat(1)];
    for k in 1..=n {
        let s = (1..=k).fold(rat(0), |acc, m| acc + &c[m - 1] * &e[k - m]);
        e.push(s / rat(k as i64));
    }
    e
}

#[test]
fn classical_zeta_matches_point_counts() {
    let mut r = rng(16);
    for _ in 0..20 {
        let m = random_object(&mut r, &small(), None);
        let counts: Vec<Rat> = (1..=12).map(|k| m.counting(k)).collect();
        let z = m.classical_zeta().to_series(12).unwrap();
        assert_eq!(exp_log_counts(&counts, 12), z.coeffs().to_vec(), "{m:?}");
    }
}

#[test]
fn zeta_is_multiplicative() {
    let mut r = rng(17);
    let c = FrobContext::new(rat(2));
    for _ in 0..10 {
        let a = random_object(&mut r, &small(), None);
        let b = random_object(&mut r, &small(), None);
        let z = |m: &FrobObj| zeta_series(&c, &c.split(m), 6).unwrap();
        assert_eq!(z(&a.dsum(&b)), z(&a).mul(&z(&b)));
    }
}

#[test]
fn weights_of_invertible_classes() {
    let q = rat(2);
    let e = FrobObj::curve(&Poly::from_i64s(&[1, 0, 2]), &q).unwrap();
    assert_eq!(weight_of_invertible(&e.odd_part().sym_class(2).unwrap()), Ok((2, false)));
    assert_eq!(weight_of_invertible(&e.odd_part().det_object()), Ok((-2, false)));
    let odd = FrobObj::in_degree(1, Matrix::identity(1)).unwrap();
    assert_eq!(weight_of_invertible(&odd.class_of()), Ok((1, true)));
}

#[test]
fn power_dimensions_are_binomial() {
    let mut r = rng(18);
    for k in 0..20 {
        let odd = k % 2 == 1;
        let m = random_object(&mut r, &small(), Some(odd));
        let b = m.chi_stats().betti.values().sum::<usize>() as i64;
        for n in 0..=4usize {
            let dim = |c: K0Class| c.virtual_dims().values().sum::<i64>().abs();
            let (finite, infinite) =
                if odd { (m.sym_class(n), m.ext_class(n)) } else { (m.ext_class(n), m.sym_class(n)) };
            assert_eq!(rat(dim(finite.unwrap())), gbinom(b, n));
            assert_eq!(rat(dim(infinite.unwrap())), gbinom(b + n as i64 - 1, n));
        }
    }
}
