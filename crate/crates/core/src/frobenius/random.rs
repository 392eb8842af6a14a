//! Seeded generator of random graded objects for property tests.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::matrix::Matrix;
use super::object::FrobObj;
use crate::rat::{frac, rat, Rat};
use crate::ring::Ring;

/// Seed taken from `MZW_SEED` when set and parseable, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var("MZW_SEED").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(default)
}

#[derive(Clone, Debug)]
pub struct RandomParams {
    pub min_degree: i32,
    pub max_degree: i32,
    pub max_block: usize,
    pub max_pieces: usize,
    /// Cap on `Σ bᵢ`.
    pub max_total_dim: usize,
    /// Cap on `Σ_{i even} bᵢ = χ⁺`.
    pub max_even_dim: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { min_degree: -2, max_degree: 4, max_block: 3, max_pieces: 3, max_total_dim: 5, max_even_dim: 3 }
    }
}

fn entry<R: Rng>(rng: &mut R) -> Rat {
    let pool = [rat(1), rat(-1), rat(2), rat(-2), frac(1, 2), frac(-1, 2), rat(3)];
    pool.choose(rng).unwrap().clone()
}

/// Random invertible `n×n` matrix with entries in `{±1, ±2, ±1/2, 3}`.
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let rows: Vec<Vec<Rat>> = (0..n).map(|_| (0..n).map(|_| entry(rng)).collect()).collect();
        let m = Matrix::from_rows(rows).expect("square");
        if !Ring::is_zero(&m.det()) {
            return m;
        }
    }
}

/// Random object whose degrees all have the requested parity (`None` for
/// any parity).
pub fn random_object<R: Rng>(rng: &mut R, params: &RandomParams, parity: Option<bool>) -> FrobObj {
    let degrees: Vec<i32> = (params.min_degree..=params.max_degree)
        .filter(|d| parity.map_or(true, |odd| (d.rem_euclid(2) == 1) == odd))
        .collect();
    let pieces = rng.gen_range(1..=params.max_pieces.min(degrees.len()).max(1));
    let mut chosen: Vec<i32> = degrees.choose_multiple(rng, pieces).copied().collect();
    chosen.sort_unstable();
    let mut budget = params.max_total_dim;
    let mut even_budget = params.max_even_dim;
    let mut out = BTreeMap::new();
    for d in chosen {
        let odd = d.rem_euclid(2) == 1;
        let cap = params.max_block.min(budget).min(if odd { usize::MAX } else { even_budget });
        if cap == 0 {
            continue;
        }
        let b = rng.gen_range(1..=cap);
        budget -= b;
        if !odd {
            even_budget -= b;
        }
        out.insert(d, random_invertible(rng, b));
    }
    if out.is_empty() {
        out.insert(0, random_invertible(rng, 1));
    }
    FrobObj::new(out).expect("pieces are invertible")
}

/// Matrix of size `size` whose eigenvalues are closed under `α ↦ qʷ/α`:
/// companion blocks of `1 - aT + qʷT²` and, for even `w`, lines `±q^{w/2}`.
/// Odd `w` needs an even size.
pub fn random_pure_weight<R: Rng>(rng: &mut R, w: u32, size: usize, q: &Rat) -> Matrix {
    assert!(w % 2 == 0 || size % 2 == 0, "odd weight needs an even size");
    let qw = q.pow(w as i32);
    let mut m: Option<Matrix> = None;
    let mut left = size;
    while left > 0 {
        let block = if left >= 2 && (w % 2 == 1 || rng.gen_bool(0.5)) {
            left -= 2;
            let a = rat(rng.gen_range(-2..=2));
            let p = crate::poly::Poly::new(vec![rat(1), -a, qw.clone()]);
            Matrix::companion_of_reversed(&p).expect("constant term 1")
        } else {
            left -= 1;
            let sign = if rng.gen_bool(0.5) { rat(1) } else { rat(-1) };
            Matrix::scalar(1, sign * q.pow(w as i32 / 2))
        };
        m = Some(match m {
            None => block,
            Some(acc) => acc.block_diag(&block),
        });
    }
    m.expect("size is positive")
}

/// Synthetic `h(X)` of a `d`-dimensional variety: pure pieces `hⁱ` for
/// `i ≤ d` and `h^{2d-i} = hⁱ ⊗ L^{d-i}`, so Poincaré duality holds with
/// `h(X)* = h(X) ⊗ L^{-d}`. Betti numbers are at most 2 (odd degrees: 2).
pub fn random_poincare_object<R: Rng>(rng: &mut R, d: u32, q: &Rat) -> FrobObj {
    let mut pieces = BTreeMap::new();
    for i in 0..=d {
        let b = if i == 0 {
            1
        } else if i % 2 == 1 {
            2
        } else {
            rng.gen_range(1..=2)
        };
        let f = if i == 0 { Matrix::identity(1) } else { random_pure_weight(rng, i, b, q) };
        if i < d {
            pieces.insert((2 * d - i) as i32, f.scale(&q.pow((d - i) as i32)));
        }
        pieces.insert(i as i32, f);
    }
    FrobObj::new(pieces).expect("pieces are invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reproducible_and_within_bounds() {
        let p = RandomParams::default();
        let a: Vec<FrobObj> = {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            (0..20).map(|_| random_object(&mut rng, &p, None)).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in &a {
            assert_eq!(m, &random_object(&mut rng, &p, None));
            let st = m.chi_stats();
            assert!(st.betti.values().sum::<usize>() <= p.max_total_dim);
            assert!(st.chi_plus as usize <= p.max_even_dim);
            assert!(st.betti.iter().all(|(&d, &b)| (-2..=4).contains(&d) && (1..=3).contains(&b)));
        }
    }

    #[test]
    fn poincare_objects_are_self_dual() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = rat(2);
        for d in 1..=3 {
            let m = random_poincare_object(&mut rng, d, &q);
            let twist = FrobObj::tate(d as i32, &q).unwrap();
            assert_eq!(m.dual().tensor(&twist).class_of(), m.class_of());
        }
    }

    #[test]
    fn parity_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let m = random_object(&mut rng, &RandomParams::default(), Some(true));
            assert!(m.pieces().keys().all(|d| d.rem_euclid(2) == 1));
        }
    }
}
