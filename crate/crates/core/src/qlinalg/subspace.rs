use serde::Serialize;

use super::{kernel, rref, solve_many, Echelon, MatrixQ, Rational};
use crate::error::{Error, Result};

/// A linear subspace of ℚⁿ, stored by a basis in reduced row echelon form.
///
/// Because the basis is in RREF, a vector of the subspace has coordinates
/// `v[pivots]` with respect to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceQ {
    ambient_dim: usize,
    basis: MatrixQ,
    #[serde(skip)]
    pivots: Vec<usize>,
}

impl SubspaceQ {
    /// The span of `vectors`, each of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        let m = MatrixQ::from_rows(vectors.to_vec(), ambient_dim)?;
        Ok(SubspaceQ::row_space(&m))
    }

    /// The row space of `m`.
    pub fn row_space(m: &MatrixQ) -> Self {
        let (r, pivots) = rref(m);
        let basis = r.select_rows(&(0..pivots.len()).collect::<Vec<_>>());
        SubspaceQ {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    /// The column space of `m`.
    pub fn column_space(m: &MatrixQ) -> Self {
        SubspaceQ::row_space(&m.transpose())
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceQ {
            ambient_dim,
            basis: MatrixQ::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceQ {
            ambient_dim,
            basis: MatrixQ::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis vectors as the rows of a matrix (in RREF).
    pub fn basis(&self) -> &MatrixQ {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the
    /// subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        // v - Σ c_i b_i must vanish.
        let mut residual = v.to_vec();
        for (i, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, b) in self.basis.row(i).iter().enumerate() {
                residual[k].sub_mul(c, b);
            }
        }
        residual.iter().all(Rational::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &SubspaceQ) -> bool {
        other.ambient_dim == self.ambient_dim
            && (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    /// Vectors orthogonal (for the standard pairing) to the subspace.
    pub fn annihilator(&self) -> SubspaceQ {
        if self.dim() == 0 {
            return SubspaceQ::full(self.ambient_dim);
        }
        kernel(&self.basis)
    }

    pub fn sum(spaces: &[&SubspaceQ], ambient_dim: usize) -> Result<SubspaceQ> {
        let mut m = MatrixQ::zeros(0, ambient_dim);
        for s in spaces {
            check_ambient(s, ambient_dim)?;
            m = m.vstack(&s.basis);
        }
        Ok(SubspaceQ::row_space(&m))
    }

    /// Image of the subspace under `m` (acting on column vectors).
    pub fn image_under(&self, m: &MatrixQ) -> SubspaceQ {
        assert_eq!(m.cols(), self.ambient_dim, "map domain");
        SubspaceQ::row_space(&m.mul(&self.basis.transpose()).transpose())
    }
}

fn check_ambient(s: &SubspaceQ, ambient_dim: usize) -> Result<()> {
    if s.ambient_dim != ambient_dim {
        return Err(Error::DimensionMismatch(format!(
            "subspace of ℚ^{} where ℚ^{} was expected",
            s.ambient_dim, ambient_dim
        )));
    }
    Ok(())
}

/// Intersection of subspaces of ℚ^`ambient_dim`; the empty intersection is
/// the whole space.
pub fn intersect(subspaces: &[SubspaceQ], ambient_dim: usize) -> Result<SubspaceQ> {
    for s in subspaces {
        check_ambient(s, ambient_dim)?;
    }
    match subspaces {
        [] => Ok(SubspaceQ::full(ambient_dim)),
        [one] => Ok(one.clone()),
        _ => {
            let anns: Vec<SubspaceQ> = subspaces.iter().map(SubspaceQ::annihilator).collect();
            let refs: Vec<&SubspaceQ> = anns.iter().collect();
            Ok(SubspaceQ::sum(&refs, ambient_dim)?.annihilator())
        }
    }
}

/// A quotient `total / sub` presented concretely.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// `q × n` matrix: ambient vectors of `total` to quotient coordinates;
    /// its kernel on `total` is exactly `sub`.
    pub projection: MatrixQ,
    /// `q × n` matrix whose rows lift the quotient basis into `total`
    /// (`projection · sectionᵀ = I`).
    pub section: MatrixQ,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
}

pub fn quotient_map(total: &SubspaceQ, sub: &SubspaceQ) -> Result<QuotientMap> {
    let n = total.ambient_dim;
    check_ambient(sub, n)?;
    if !total.contains_subspace(sub) {
        return Err(Error::NotASubspace(format!(
            "a {}-dimensional subspace is not contained in the {}-dimensional total space",
            sub.dim(),
            total.dim()
        )));
    }
    // Extend the basis of `sub` greedily by basis vectors of `total`.
    let mut echelon = Echelon::new(n);
    for i in 0..sub.dim() {
        echelon.insert(sub.basis.row(i));
    }
    let mut complement = Vec::new();
    for i in 0..total.dim() {
        if echelon.insert(total.basis.row(i)) {
            complement.push(total.basis.row(i).to_vec());
        }
    }
    let rank = echelon.rank();
    let q = complement.len();
    let section = MatrixQ::from_rows(complement, n)?;
    let stacked = sub.basis.vstack(&section);
    // Solve stacked · Pᵀ = [0; I].
    let mut target = MatrixQ::zeros(rank, q);
    for j in 0..q {
        target.set(sub.dim() + j, j, Rational::one());
    }
    let pt = solve_many(&stacked, &target)
        .ok_or_else(|| Error::Internal("quotient projection is insoluble".into()))?;
    Ok(QuotientMap {
        projection: pt.transpose(),
        section,
    })
}
