//! Exact linear algebra over ℚ.

mod matrix;
mod rational;
mod subspace;

pub use matrix::MatrixQ;
pub use rational::{ParseRationalError, Rational};
pub use subspace::{intersect, quotient_map, QuotientMap, SubspaceQ};

use crate::error::{Error, Result};

/// Reduced row echelon form and the (strictly increasing) pivot columns.
pub fn rref(m: &MatrixQ) -> (MatrixQ, Vec<usize>) {
    let mut r = m.clone();
    let pivots = r.eliminate(true);
    (r, pivots)
}

pub fn rank(m: &MatrixQ) -> usize {
    m.rank()
}

/// Kernel of `m` acting on column vectors.
pub fn kernel(m: &MatrixQ) -> SubspaceQ {
    let n = m.cols();
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut vectors = Vec::with_capacity(n - pivots.len());
    for free in (0..n).filter(|&j| !is_pivot[j]) {
        let mut v = vec![Rational::zero(); n];
        v[free] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            let x = r.get(i, free);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        vectors.push(v);
    }
    SubspaceQ::span(n, &vectors).expect("kernel vectors have the ambient length")
}

/// All solutions of `A·x = b`: a particular solution and the kernel of `A`,
/// or `None` when the system is inconsistent.
pub fn solve_space(a: &MatrixQ, b: &[Rational]) -> Result<Option<(Vec<Rational>, SubspaceQ)>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for a {}x{} system",
            b.len(),
            a.rows(),
            a.cols()
        )));
    }
    let rhs = MatrixQ::from_vec(b.len(), 1, b.to_vec());
    Ok(solve_many(a, &rhs).map(|x| (x.column(0), kernel(a))))
}

/// A particular solution `X` of `A·X = B` (free variables set to zero), or
/// `None` when some column is inconsistent. Panics on a row-count mismatch.
pub fn solve_many(a: &MatrixQ, b: &MatrixQ) -> Option<MatrixQ> {
    assert_eq!(a.rows(), b.rows(), "solve_many row count");
    let n = a.cols();
    let mut aug = a.hstack(b);
    let pivots = aug.eliminate(true);
    if pivots.iter().any(|&p| p >= n) {
        return None;
    }
    let mut x = MatrixQ::zeros(n, b.cols());
    for (i, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x.set(p, j, aug.get(i, n + j).clone());
        }
    }
    Some(x)
}

/// Inverse of a square matrix, if it exists.
pub fn inverse(m: &MatrixQ) -> Option<MatrixQ> {
    if m.rows() != m.cols() {
        return None;
    }
    let x = solve_many(m, &MatrixQ::identity(m.rows()))?;
    (m.rank() == m.rows()).then_some(x)
}

/// A row-echelon basis grown one vector at a time.
///
/// Each stored row has a leading one at its pivot and zeros at the pivots
/// of all earlier rows, so reduction by the rows in insertion order is exact.
#[derive(Clone, Debug)]
pub struct Echelon {
    n: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon {
            n,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [Rational]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (k, x) in row.iter().enumerate().skip(p) {
                if !x.is_zero() {
                    v[k].sub_mul(&f, x);
                }
            }
        }
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.n, "vector length");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].recip();
        for x in w.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rows.push(w);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(Rational::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&MatrixQ::from_i64(2, 2, &[1, 2, 2, 4]));
        assert_eq!(r, MatrixQ::from_i64(2, 2, &[1, 2, 0, 0]));
        assert_eq!(p, vec![0]);
        let (r, p) = rref(&MatrixQ::identity(3));
        assert_eq!(r, MatrixQ::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
        let (r, _) = rref(&MatrixQ::from_i64(2, 2, &[0, 1, 1, 0]));
        assert_eq!(r, MatrixQ::identity(2));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&MatrixQ::from_i64(1, 2, &[1, -1]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[q(1), q(1)]));
        assert_eq!(kernel(&MatrixQ::zeros(2, 3)).dim(), 3);
        assert_eq!(kernel(&MatrixQ::identity(4)).dim(), 0);
    }

    #[test]
    fn solve_space_examples() {
        let (x, k) = solve_space(&MatrixQ::identity(2), &[q(1), q(2)]).unwrap().unwrap();
        assert_eq!(x, vec![q(1), q(2)]);
        assert_eq!(k.dim(), 0);

        let (x, k) = solve_space(&MatrixQ::from_i64(1, 2, &[1, 1]), &[q(0)]).unwrap().unwrap();
        assert_eq!(x, vec![q(0), q(0)]);
        assert!(k.contains(&[q(1), q(-1)]) && k.dim() == 1);

        assert!(solve_space(&MatrixQ::from_i64(2, 1, &[1, 1]), &[q(1), q(2)]).unwrap().is_none());
        assert!(solve_space(&MatrixQ::identity(2), &[q(1)]).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = SubspaceQ::span(2, &[vec![q(1), q(0)]]).unwrap();
        let b = SubspaceQ::span(2, &[vec![q(0), q(1)]]).unwrap();
        assert_eq!(intersect(&[a, b], 2).unwrap().dim(), 0);
        assert_eq!(intersect(&[], 3).unwrap(), SubspaceQ::full(3));
        let c = SubspaceQ::span(2, &[vec![q(1), q(1)]]).unwrap();
        let d = SubspaceQ::span(2, &[vec![q(1), q(1)], vec![q(1), q(0)]]).unwrap();
        assert_eq!(intersect(&[c.clone(), d], 2).unwrap(), c);
        let e = SubspaceQ::full(3);
        assert!(intersect(&[c, e], 2).is_err());
    }

    #[test]
    fn quotient_examples() {
        let total = SubspaceQ::full(2);
        let sub = SubspaceQ::span(2, &[vec![q(1), q(1)]]).unwrap();
        let qm = quotient_map(&total, &sub).unwrap();
        assert_eq!(qm.dim(), 1);
        assert!(qm.projection.mul_vec(&[q(1), q(1)]).iter().all(Rational::is_zero));
        assert!(qm.projection.mul(&qm.section.transpose()).is_identity());

        assert_eq!(quotient_map(&total, &total).unwrap().dim(), 0);

        let qm = quotient_map(&SubspaceQ::full(3), &SubspaceQ::zero(3)).unwrap();
        assert!(qm.projection.is_identity());

        let line = SubspaceQ::span(2, &[vec![q(1), q(0)]]).unwrap();
        assert!(matches!(quotient_map(&sub, &line), Err(Error::NotASubspace(_))));
    }

    #[test]
    fn inverse_round_trip() {
        let m = MatrixQ::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&m).unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inverse(&MatrixQ::from_i64(2, 2, &[1, 2, 2, 4])).is_none());
    }
}
