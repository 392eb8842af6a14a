//! Symmetric-function calculus on the power-sum basis.
//!
//! A [`PowerSumSeq`] holds `p_1, p_2, …` of a (virtual) root multiset. Tensor
//! products multiply power sums termwise; exterior and symmetric powers are
//! the plethysms `p_k ∘ e_n` and `p_k ∘ h_n`, evaluated by expanding `e_n`
//! (resp. `h_n`) on the power-sum basis and substituting `p_j ↦ p_{jk}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::newton::{complete_from_power_sums, elementary_from_power_sums};
use crate::rat::{rat, Rat};
use crate::ring::QAlgebra;

/// `values[k]` is `p_{k+1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct PowerSumSeq<R>(pub Vec<R>);

impl<R: QAlgebra> PowerSumSeq<R> {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[R] {
        &self.0
    }

    fn require(&self, needed: usize) -> Result<()> {
        if self.0.len() < needed {
            Err(Error::InsufficientData { needed, available: self.0.len() })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Basis {
    Elementary,
    Complete,
}

/// `(partition, coefficient)` pairs of `e_n` or `h_n` in the `p_λ` basis.
type Expansion = Vec<(Vec<usize>, Rat)>;

/// Above this size the partition expansion gets large, so the plethysm is
/// evaluated with the Newton recursion instead.
const MEMO_LIMIT: usize = 12;

fn expansions() -> &'static RwLock<HashMap<(Basis, usize), Arc<Expansion>>> {
    static CACHE: OnceLock<RwLock<HashMap<(Basis, usize), Arc<Expansion>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `z_λ = Π_i i^{m_i} m_i!`.
fn z_lambda(lambda: &[usize]) -> Rat {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in lambda {
        *counts.entry(p).or_default() += 1;
    }
    let mut z = rat(1);
    for (i, m) in counts {
        for j in 1..=m {
            z = z * rat(i as i64) * rat(j as i64);
        }
    }
    z
}

fn expansion(basis: Basis, n: usize) -> Arc<Expansion> {
    if let Some(e) = expansions().read().expect("cache poisoned").get(&(basis, n)) {
        return e.clone();
    }
    let exp: Expansion = partitions(n)
        .into_iter()
        .map(|lambda| {
            let mut c = z_lambda(&lambda).recip();
            if basis == Basis::Elementary && (n - lambda.len()) % 2 == 1 {
                c = -c;
            }
            (lambda, c)
        })
        .collect();
    let exp = Arc::new(exp);
    // concurrent fills compute identical values, so overwriting is harmless
    expansions().write().expect("cache poisoned").insert((basis, n), exp.clone());
    exp
}

fn plethysm<R: QAlgebra>(p: &PowerSumSeq<R>, n: usize, count: usize, basis: Basis) -> Result<PowerSumSeq<R>> {
    p.require(n * count)?;
    if n == 0 {
        return Ok(PowerSumSeq(vec![R::one(); count]));
    }
    let mut out = Vec::with_capacity(count);
    if n <= MEMO_LIMIT {
        let exp = expansion(basis, n);
        for k in 1..=count {
            let mut acc = R::zero();
            for (lambda, c) in exp.iter() {
                let mut term = R::from_rat(c);
                for &part in lambda {
                    term = term.mul(&p.0[part * k - 1]);
                    if term.is_zero() {
                        break;
                    }
                }
                acc = acc.add(&term);
            }
            out.push(acc);
        }
    } else {
        for k in 1..=count {
            let sub: Vec<R> = (1..=n).map(|j| p.0[j * k - 1].clone()).collect();
            out.push(match basis {
                Basis::Elementary => elementary_from_power_sums(&sub, n)?,
                Basis::Complete => complete_from_power_sums(&sub, n)?,
            });
        }
    }
    Ok(PowerSumSeq(out))
}

/// Power sums of the root-product multiset (tensor product).
pub fn ps_product<R: QAlgebra>(a: &PowerSumSeq<R>, b: &PowerSumSeq<R>, count: usize) -> Result<PowerSumSeq<R>> {
    a.require(count)?;
    b.require(count)?;
    Ok(PowerSumSeq((0..count).map(|k| a.0[k].mul(&b.0[k])).collect()))
}

/// Power sums of the products over `n`-element sub-multisets of the roots.
/// Needs `n·count` input power sums.
pub fn ps_exterior<R: QAlgebra>(p: &PowerSumSeq<R>, n: usize, count: usize) -> Result<PowerSumSeq<R>> {
    plethysm(p, n, count, Basis::Elementary)
}

/// Power sums of the products over `n`-element multisets (with repetition)
/// of the roots. Needs `n·count` input power sums.
pub fn ps_symmetric<R: QAlgebra>(p: &PowerSumSeq<R>, n: usize, count: usize) -> Result<PowerSumSeq<R>> {
    plethysm(p, n, count, Basis::Complete)
}

fn int_plethysm(p: &[BigInt], n: usize, count: usize, basis: Basis) -> Result<Vec<BigInt>> {
    if p.len() < n * count {
        return Err(Error::InsufficientData { needed: n * count, available: p.len() });
    }
    let mut out = Vec::with_capacity(count);
    let mut v: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 1..=count {
        // m v_m = Σ_{i=1}^m (±1) p_{ik} v_{m-i}, with signs (-1)^{i-1} for e
        v.clear();
        v.push(BigInt::one());
        for m in 1..=n {
            let mut acc = BigInt::zero();
            for i in 1..=m {
                let t = &p[i * k - 1] * &v[m - i];
                if basis == Basis::Elementary && i % 2 == 0 {
                    acc -= t;
                } else {
                    acc += t;
                }
            }
            let (q, r) = acc.div_rem(&BigInt::from(m));
            if !r.is_zero() {
                return Err(Error::NotIntegral("power sums are not those of algebraic integers".into()));
            }
            v.push(q);
        }
        out.push(v[n].clone());
    }
    Ok(out)
}

/// [`ps_exterior`] for integral power sums of algebraic integers, with exact
/// integer division throughout.
pub fn int_exterior(p: &[BigInt], n: usize, count: usize) -> Result<Vec<BigInt>> {
    int_plethysm(p, n, count, Basis::Elementary)
}

/// [`ps_symmetric`] for integral power sums of algebraic integers.
pub fn int_symmetric(p: &[BigInt], n: usize, count: usize) -> Result<Vec<BigInt>> {
    int_plethysm(p, n, count, Basis::Complete)
}
