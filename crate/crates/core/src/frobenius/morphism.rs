use std::collections::BTreeMap;

use super::matrix::Matrix;
use super::object::FrobObj;
use crate::error::{Error, Result};
use crate::rat::{rat, Rat};

/// A morphism of graded objects: one block per degree, intertwining the
/// Frobenius actions (`g_i · A_i = B_i · g_i`).
#[derive(Clone, Debug, PartialEq)]
pub struct FrobMor {
    source: FrobObj,
    target: FrobObj,
    blocks: BTreeMap<i32, Matrix>,
}

impl FrobMor {
    pub fn new(source: FrobObj, target: FrobObj, blocks: BTreeMap<i32, Matrix>) -> Result<Self> {
        let mut degrees: Vec<i32> = source.pieces().keys().chain(target.pieces().keys()).copied().collect();
        degrees.sort_unstable();
        degrees.dedup();
        for d in degrees {
            let a = source.pieces().get(&d);
            let b = target.pieces().get(&d);
            let (ra, rb) = (a.map_or(0, Matrix::rows), b.map_or(0, Matrix::rows));
            let g = blocks.get(&d);
            let shape = g.map_or((0, 0), |g| (g.rows(), g.cols()));
            if ra * rb == 0 {
                if g.is_some() && shape != (rb, ra) {
                    return Err(Error::ShapeMismatch(format!("block in degree {d}")));
                }
                continue;
            }
            let g = g.ok_or_else(|| Error::ShapeMismatch(format!("missing block in degree {d}")))?;
            if shape != (rb, ra) {
                return Err(Error::ShapeMismatch(format!(
                    "block in degree {d} is {}x{}, expected {rb}x{ra}",
                    shape.0, shape.1
                )));
            }
            if g.mul(a.unwrap())? != b.unwrap().mul(g)? {
                return Err(Error::ShapeMismatch(format!("block in degree {d} does not intertwine")));
            }
        }
        Ok(FrobMor { source, target, blocks })
    }

    pub fn identity(m: &FrobObj) -> Self {
        let blocks = m.pieces().iter().map(|(&d, a)| (d, Matrix::identity(a.rows()))).collect();
        FrobMor { source: m.clone(), target: m.clone(), blocks }
    }

    /// `c · id`.
    pub fn scalar(m: &FrobObj, c: &Rat) -> Self {
        let blocks = m.pieces().iter().map(|(&d, a)| (d, Matrix::scalar(a.rows(), c.clone()))).collect();
        FrobMor { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn source(&self) -> &FrobObj {
        &self.source
    }

    pub fn target(&self) -> &FrobObj {
        &self.target
    }

    pub fn blocks(&self) -> &BTreeMap<i32, Matrix> {
        &self.blocks
    }
}

/// Products of the block determinants over even and over odd degrees.
pub fn det_morphism(f: &FrobMor) -> Result<(Rat, Rat)> {
    let (s, t) = (f.source.chi_stats(), f.target.chi_stats());
    if (s.chi_plus, s.chi_minus) != (t.chi_plus, t.chi_minus) {
        return Err(Error::ChiMismatch(format!(
            "source has (χ⁺, χ⁻) = ({}, {}), target ({}, {})",
            s.chi_plus, s.chi_minus, t.chi_plus, t.chi_minus
        )));
    }
    let mut even = rat(1);
    let mut odd = rat(1);
    let mut degrees: Vec<i32> = s.betti.keys().chain(t.betti.keys()).copied().collect();
    degrees.sort_unstable();
    degrees.dedup();
    for d in degrees {
        let det = match f.blocks.get(&d) {
            Some(g) => g.det(),
            None => rat(0),
        };
        if d.rem_euclid(2) == 1 {
            odd *= det;
        } else {
            even *= det;
        }
    }
    Ok((even, odd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_scalar() {
        let m = FrobObj::projective_space(1, &rat(2)).unwrap();
        assert_eq!(det_morphism(&FrobMor::identity(&m)).unwrap(), (rat(1), rat(1)));
        assert_eq!(det_morphism(&FrobMor::scalar(&m, &rat(2))).unwrap(), (rat(4), rat(1)));
    }

    #[test]
    fn zero_block_gives_zero_det() {
        let m = FrobObj::projective_space(1, &rat(2)).unwrap();
        let blocks = BTreeMap::from([(0, Matrix::identity(1)), (2, Matrix::zeros(1, 1))]);
        let f = FrobMor::new(m.clone(), m, blocks).unwrap();
        assert_eq!(det_morphism(&f).unwrap(), (rat(0), rat(1)));
    }

    #[test]
    fn chi_mismatch() {
        let a = FrobObj::unit();
        let b = FrobObj::projective_space(1, &rat(2)).unwrap();
        let f = FrobMor::new(a, b, BTreeMap::from([(0, Matrix::identity(1))])).unwrap();
        assert!(matches!(det_morphism(&f), Err(Error::ChiMismatch(_))));
    }

    #[test]
    fn non_intertwining_block_rejected() {
        let m = FrobObj::in_degree(0, Matrix::diagonal(&[rat(1), rat(2)])).unwrap();
        let g = Matrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert!(FrobMor::new(m.clone(), m, BTreeMap::from([(0, g)])).is_err());
    }
}
