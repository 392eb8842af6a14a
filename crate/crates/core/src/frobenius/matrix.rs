//! Small dense matrices over the rationals.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::newton::{poly_from_power_sums, power_sums_from_poly};
use crate::poly::Poly;
use crate::rat::{rat, Rat};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![<Rat as Ring>::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, rat(1))
    }

    pub fn scalar(n: usize, c: Rat) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn diagonal(entries: &[Rat]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, c) in entries.iter().enumerate() {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .expect("rectangular literal")
    }

    /// The 2×2 coordinate swap.
    pub fn swap2() -> Self {
        Self::from_i64_rows(&[&[0, 1], &[1, 0]])
    }

    pub fn to_rows(&self) -> Vec<Vec<Rat>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(<[Rat]>::to_vec).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeMismatch(format!("{}x{} times {}x{}", self.rows, self.cols, rhs.rows, rhs.cols)));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if Ring::is_zero(a) {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..e {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    /// Determinant by Gaussian elimination; non-square matrices give 0.
    pub fn det(&self) -> Rat {
        if !self.is_square() {
            return <Rat as Ring>::zero();
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = rat(1);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !Ring::is_zero(a.get(r, col))) else {
                return <Rat as Ring>::zero();
            };
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                let f = a.get(r, col) / &pivot;
                if Ring::is_zero(&f) {
                    continue;
                }
                for j in col..n {
                    let v = a.get(r, j) - &f * a.get(col, j);
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !Ring::is_zero(a.get(r, col)))?;
            for j in 0..n {
                a.data.swap(p * n + j, col * n + j);
                inv.data.swap(p * n + j, col * n + j);
            }
            let pinv = a.get(col, col).recip();
            for j in 0..n {
                let v = a.get(col, j) * &pinv;
                a.set(col, j, v);
                let v = inv.get(col, j) * &pinv;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if Ring::is_zero(&f) {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - &f * a.get(col, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &f * inv.get(col, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                for k in 0..rhs.rows {
                    for l in 0..rhs.cols {
                        out.set(i * rhs.rows + k, j * rhs.cols + l, a * rhs.get(k, l));
                    }
                }
            }
        }
        out
    }

    pub fn block_diag(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out.set(self.rows + i, self.cols + j, rhs.get(i, j).clone());
            }
        }
        out
    }

    /// Companion matrix `C` with `det(1 - C·T) = p(T)` for `p(0) = 1`.
    pub fn companion_of_reversed(p: &Poly<Rat>) -> Result<Self> {
        if p.coeff(0) != rat(1) {
            return Err(Error::NotReversedMonic);
        }
        let n = p.degree().unwrap_or(0);
        // characteristic polynomial x^n + c1 x^{n-1} + ... + cn
        let mut m = Self::zeros(n, n);
        for i in 1..n {
            m.set(i, i - 1, rat(1));
        }
        for i in 0..n {
            m.set(i, n - 1, -p.coeff(n - i));
        }
        Ok(m)
    }

    /// `det(1 - F·T)`, from the traces of `F^k` and Newton's identities.
    pub fn reversed_charpoly(&self) -> Poly<Rat> {
        let n = self.rows;
        let mut traces = Vec::with_capacity(n);
        let mut pow = Self::identity(n);
        for _ in 0..n {
            pow = pow.mul(self).expect("square");
            traces.push(pow.trace());
        }
        poly_from_power_sums(&traces, n).expect("enough traces")
    }

    /// Exterior power `Λᵖ(F)`: the matrix of `p×p` minors, rows and columns
    /// indexed by increasing index sets in lexicographic order.
    pub fn compound(&self, p: usize) -> Self {
        let sets = subsets(self.rows, p);
        let mut out = Self::zeros(sets.len(), sets.len());
        for (a, rows) in sets.iter().enumerate() {
            for (b, cols) in sets.iter().enumerate() {
                let sub = Matrix::from_rows(
                    rows.iter().map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect()).collect(),
                )
                .expect("square minor");
                out.set(a, b, if p == 0 { rat(1) } else { sub.det() });
            }
        }
        out
    }

    /// Symmetric power `S^q(F)` acting on degree-`q` monomials.
    pub fn sym_power(&self, q: usize) -> Self {
        let basis = multisets(self.rows, q);
        let index: BTreeMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut out = Self::zeros(basis.len(), basis.len());
        for (col, mono) in basis.iter().enumerate() {
            let mut image: BTreeMap<Vec<usize>, Rat> = BTreeMap::from([(Vec::new(), rat(1))]);
            for &j in mono {
                let mut next: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
                for (m, c) in &image {
                    for i in 0..self.rows {
                        let f = self.get(i, j);
                        if Ring::is_zero(f) {
                            continue;
                        }
                        let mut key = m.clone();
                        let pos = key.partition_point(|&x| x <= i);
                        key.insert(pos, i);
                        *next.entry(key).or_insert_with(|| rat(0)) += c * f;
                    }
                }
                image = next;
            }
            for (m, c) in image {
                out.set(index[&m], col, c);
            }
        }
        out
    }
}

/// Traces of `F, F², …, F^count`, the power sums of the eigenvalues.
pub fn eigen_power_sums(m: &Matrix, count: usize) -> Vec<Rat> {
    power_sums_from_poly(&m.reversed_charpoly(), count).expect("charpoly has constant term 1")
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
