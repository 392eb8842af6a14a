use mzeta::newton::{poly_from_power_sums, power_sums_from_poly};
use mzeta::poly::Poly;
use mzeta::rat::{rat, Rat};
use mzeta::ratfun::ratfun_normalize;
use mzeta::series::{series_inverse, Series};
use mzeta::symfunc::{ps_exterior, ps_product, ps_symmetric, PowerSumSeq};
use mzeta::Ring;
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..7, 1i64..5).prop_map(|(n, d)| rat(n) / rat(d))
}

fn unit_poly(max_deg: usize) -> impl Strategy<Value = Poly<Rat>> {
    prop::collection::vec(small_rat(), 0..=max_deg).prop_map(|mut c| {
        c.insert(0, rat(1));
        Poly::new(c)
    })
}

fn psums(roots: &[Rat], count: usize) -> PowerSumSeq<Rat> {
    PowerSumSeq((1..=count as i32).map(|k| roots.iter().fold(rat(0), |acc, r| acc + r.pow(k))).collect())
}

/// Products over all `n`-subsets (`multi = false`) or `n`-multisets of
/// index positions.
fn enumerate(roots: &[Rat], n: usize, multi: bool) -> Vec<Rat> {
    fn go(roots: &[Rat], n: usize, start: usize, multi: bool, acc: Rat, out: &mut Vec<Rat>) {
        if n == 0 {
            out.push(acc);
            return;
        }
        for i in start..roots.len() {
            let next = if multi { i } else { i + 1 };
            go(roots, n - 1, next, multi, &acc * &roots[i], out);
        }
    }
    let mut out = Vec::new();
    go(roots, n, 0, multi, rat(1), &mut out);
    out
}

proptest! {
    #[test]
    fn newton_round_trip(p in unit_poly(8)) {
        let d = p.degree().unwrap_or(0);
        let back = poly_from_power_sums(&power_sums_from_poly(&p, d).unwrap(), d).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn series_inverse_is_two_sided(c in prop::collection::vec(small_rat(), 0..10), order in 0usize..10) {
        let mut c = c;
        c.insert(0, rat(1) + rat(c.len() as i64));
        let s = Series::new(c, order);
        let inv = series_inverse(&s, order).unwrap();
        prop_assert_eq!(s.mul(&inv), Series::one(order));
        prop_assert_eq!(inv.mul(&s), Series::one(order));
    }

    #[test]
    fn ratfun_normalize_idempotent(a in unit_poly(4), b in unit_poly(4), common in unit_poly(2), xs in prop::collection::vec(small_rat(), 20)) {
        let (num, den) = (a.mul(&common), b.mul(&common));
        let f = ratfun_normalize(&num, &den).unwrap();
        prop_assert_eq!(ratfun_normalize(&f.num, &f.den).unwrap(), f.clone());
        for x in xs.iter().filter(|x| !Ring::is_zero(&den.eval(x))) {
            prop_assert_eq!(f.eval(x).unwrap(), num.eval(x) / den.eval(x));
        }
    }

    #[test]
    fn plethysm_matches_enumeration(roots in prop::collection::vec(small_rat(), 1..=4), n in 0usize..=4) {
        let p = psums(&roots, 4 * n.max(1));
        let ext = ps_exterior(&p, n, 4).unwrap();
        prop_assert_eq!(ext, psums(&enumerate(&roots, n, false), 4));
        let sym = ps_symmetric(&p, n, 4).unwrap();
        prop_assert_eq!(sym, psums(&enumerate(&roots, n, true), 4));
    }

    #[test]
    fn plethysm_dimensions(roots in prop::collection::vec(1i64..5, 1..=4), n in 1usize..=3) {
        let roots: Vec<Rat> = roots.into_iter().map(rat).collect();
        let d = roots.len();
        let p = psums(&roots, 64);
        let binom = |a: usize, b: usize| enumerate(&vec![rat(1); a], b, false).len();
        let ce = binom(d, n);
        let cs = binom(d + n - 1, n);
        let e = poly_from_power_sums(&ps_exterior(&p, n, ce.max(1)).unwrap().0, ce).unwrap();
        prop_assert_eq!(e.degree(), Some(ce));
        let s = poly_from_power_sums(&ps_symmetric(&p, n, cs).unwrap().0, cs).unwrap();
        prop_assert_eq!(s.degree(), Some(cs));
    }

    #[test]
    fn tensor_multiplies_power_sums(a in prop::collection::vec(small_rat(), 1..=3), b in prop::collection::vec(small_rat(), 1..=3)) {
        let prod: Vec<Rat> = a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect();
        prop_assert_eq!(ps_product(&psums(&a, 4), &psums(&b, 4), 4).unwrap(), psums(&prod, 4));
    }
}
