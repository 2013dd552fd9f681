//! The real moment-angle complex Z(K;(D¹,S⁰)) triangulated as the order
//! complex of the Boolean lattice: vertices are subsets of the vertex set,
//! simplices are chains S₀ ⊂ … ⊂ S_d whose changing set S_d ∖ S₀ is a face
//! of K. Coordinate permutations act simplicially and order-preservingly.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::Perm;
use crate::qlinalg::{kernel, solve_many, Echelon, MatrixQ, Rational, SubspaceQ};
use crate::simplicial::{vertices_of, SimplicialComplex};

/// Default bound on the number of vertices of K for triangulation.
pub const DEFAULT_MAX_VERTICES: usize = 8;

/// Environment variable overriding [`DEFAULT_MAX_VERTICES`].
pub const MAX_VERTICES_ENV: &str = "ZK_MAX_VERTICES";

/// The vertex bound in effect: `ZK_MAX_VERTICES` if set, else the default.
pub fn max_vertices() -> usize {
    std::env::var(MAX_VERTICES_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_VERTICES)
}

/// A chain S₀ ⊂ S₁ ⊂ … ⊂ S_d of vertex subsets (as bitmasks).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(Vec<u64>);

impl Cell {
    pub fn new(chain: Vec<u64>) -> Self {
        debug_assert!(chain.windows(2).all(|w| w[0] & w[1] == w[0] && w[0] != w[1]));
        Cell(chain)
    }

    pub fn chain(&self) -> &[u64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// The changing set S_d ∖ S₀.
    pub fn changing_set(&self) -> u64 {
        self.0[self.0.len() - 1] & !self.0[0]
    }

    /// Faces with their boundary signs: omitting S_j contributes (−1)^j.
    pub fn faces(&self) -> impl Iterator<Item = (Cell, i64)> + '_ {
        let d = self.dim();
        (0..=d).filter(move |_| d > 0).map(move |j| {
            let mut chain = self.0.clone();
            chain.remove(j);
            (Cell(chain), if j % 2 == 0 { 1 } else { -1 })
        })
    }

    pub fn translate(&self, g: &Perm) -> Cell {
        Cell(self.0.iter().map(|&s| g.apply_mask(s)).collect())
    }

    pub fn is_fixed_by(&self, g: &Perm) -> bool {
        self.0.iter().all(|&s| g.apply_mask(s) == s)
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sets: Vec<Vec<usize>> = self.0.iter().map(|&s| vertices_of(s)).collect();
        write!(f, "{sets:?}")
    }
}

impl Serialize for Cell {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let sets: Vec<Vec<usize>> = self.0.iter().map(|&m| vertices_of(m)).collect();
        sets.serialize(s)
    }
}

/// A finite simplicial chain complex over ℚ.
#[derive(Clone, Debug)]
pub struct ChainComplexQ {
    num_vertices: usize,
    cells: Vec<Vec<Cell>>,
    index: Vec<HashMap<Cell, usize>>,
    /// `boundary[d]`: C_d → C_{d−1}, shape (#cells_{d−1}) × (#cells_d);
    /// `boundary[0]` is 0 × #cells₀.
    boundary: Vec<MatrixQ>,
}

impl ChainComplexQ {
    /// Builds the complex from a downward-closed set of cells.
    fn from_cells(num_vertices: usize, mut all: Vec<Cell>) -> Result<Self> {
        all.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        let top = all.last().map_or(0, |c| c.dim() + 1);
        let mut cells: Vec<Vec<Cell>> = vec![Vec::new(); top];
        for c in all {
            let d = c.dim();
            cells[d].push(c);
        }
        let index: Vec<HashMap<Cell, usize>> = cells
            .iter()
            .map(|cs| cs.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect())
            .collect();
        let mut boundary = Vec::with_capacity(top);
        for d in 0..top {
            if d == 0 {
                boundary.push(MatrixQ::zeros(0, cells[0].len()));
                continue;
            }
            let mut m = MatrixQ::zeros(cells[d - 1].len(), cells[d].len());
            for (j, c) in cells[d].iter().enumerate() {
                for (face, sign) in c.faces() {
                    let i = *index[d - 1].get(&face).ok_or_else(|| {
                        Error::Internal(format!("face {face:?} of {c:?} is not a cell"))
                    })?;
                    m.set(i, j, Rational::from(sign));
                }
            }
            boundary.push(m);
        }
        Ok(ChainComplexQ {
            num_vertices,
            cells,
            index,
            boundary,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Top dimension + 1 (0 for the empty complex).
    pub fn num_dims(&self) -> usize {
        self.cells.len()
    }

    pub fn cells(&self, d: usize) -> &[Cell] {
        self.cells.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn num_cells(&self, d: usize) -> usize {
        self.cells(d).len()
    }

    pub fn total_cells(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn cell_index(&self, cell: &Cell) -> Option<usize> {
        self.index.get(cell.dim())?.get(cell).copied()
    }

    /// ∂_d : C_d → C_{d−1} (zero-size outside the range of dimensions).
    pub fn boundary(&self, d: usize) -> MatrixQ {
        self.boundary.get(d).cloned().unwrap_or_else(|| {
            let rows = if d == 0 { 0 } else { self.num_cells(d - 1) };
            MatrixQ::zeros(rows, 0)
        })
    }

    fn boundary_ref(&self, d: usize) -> Option<&MatrixQ> {
        self.boundary.get(d)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .enumerate()
            .map(|(d, cs)| if d % 2 == 0 { cs.len() as i64 } else { -(cs.len() as i64) })
            .sum()
    }

    /// Checks ∂_{d}∘∂_{d+1} = 0 in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.num_dims()).all(|d| self.boundary[d - 1].mul(&self.boundary[d]).is_zero())
    }

    /// rank ∂_d.
    fn boundary_rank(&self, d: usize) -> usize {
        self.boundary_ref(d).map_or(0, MatrixQ::rank)
    }

    /// Rational Betti numbers b_0, …, b_top.
    pub fn betti_numbers(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.num_dims()).map(|d| self.boundary_rank(d)).collect();
        (0..self.num_dims())
            .map(|d| self.num_cells(d) - ranks[d] - ranks[d + 1])
            .collect()
    }

    /// A basis of H_n with a certificate for expressing cycles in it.
    pub fn homology(&self, n: usize) -> HomologyBasis {
        let cells = self.num_cells(n);
        if cells == 0 {
            return HomologyBasis {
                n,
                num_cells: 0,
                reps: MatrixQ::zeros(0, 0),
                certificate: MatrixQ::zeros(0, 0),
            };
        }
        let cycles = match self.boundary_ref(n) {
            Some(b) if n > 0 => kernel(b),
            _ => SubspaceQ::full(cells),
        };
        let boundaries = match self.boundary_ref(n + 1) {
            Some(b) => SubspaceQ::column_space(b),
            None => SubspaceQ::zero(cells),
        };
        // Extend the boundary basis by cycle-basis vectors.
        let mut echelon = Echelon::new(cells);
        for i in 0..boundaries.dim() {
            echelon.insert(boundaries.basis().row(i));
        }
        let mut reps = Vec::new();
        for i in 0..cycles.dim() {
            let z = cycles.basis().row(i);
            if echelon.insert(z) {
                reps.push(z.to_vec());
            }
        }
        let beta = reps.len();
        let reps = MatrixQ::from_rows(reps, cells).expect("cycle vectors have the cell count");
        // Functionals L with L·h_i = e_i and L·b = 0 on boundaries:
        // [reps; boundaries] · Lᵀ = [I; 0].
        let stacked = reps.vstack(boundaries.basis());
        let mut target = MatrixQ::zeros(stacked.rows(), beta);
        for i in 0..beta {
            target.set(i, i, Rational::one());
        }
        let certificate = solve_many(&stacked, &target)
            .expect("homology representatives are independent modulo boundaries")
            .transpose();
        HomologyBasis {
            n,
            num_cells: cells,
            reps,
            certificate,
        }
    }
}

/// Chosen homology classes in one degree.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub n: usize,
    pub num_cells: usize,
    /// β × #cells: representative cycles, one per row.
    pub reps: MatrixQ,
    /// β × #cells: functionals returning the coordinates of a cycle's class.
    pub certificate: MatrixQ,
}

impl HomologyBasis {
    pub fn betti(&self) -> usize {
        self.reps.rows()
    }

    /// Coordinates of the class of the cycle `z`.
    pub fn class_of(&self, z: &[Rational]) -> Vec<Rational> {
        if self.betti() == 0 {
            return Vec::new();
        }
        self.certificate.mul_vec(z)
    }
}

fn check_bound(k: &SimplicialComplex, bound: usize) -> Result<()> {
    if k.num_vertices() > bound {
        return Err(Error::TooManyVertices {
            what: "triangulation",
            value: k.num_vertices(),
            bound,
        });
    }
    Ok(())
}

/// Triangulates Z(K;(D¹,S⁰)) using the bound from [`max_vertices`].
pub fn triangulate(k: &SimplicialComplex) -> Result<ChainComplexQ> {
    triangulate_bounded(k, max_vertices())
}

pub fn triangulate_bounded(k: &SimplicialComplex, bound: usize) -> Result<ChainComplexQ> {
    check_bound(k, bound)?;
    build(k, &[])
}

/// The subcomplex of chains all of whose sets are invariant under every
/// element of `gens` (hence under the generated group).
pub fn fixed_subcomplex(k: &SimplicialComplex, gens: &[Perm]) -> Result<ChainComplexQ> {
    fixed_subcomplex_bounded(k, gens, max_vertices())
}

pub fn fixed_subcomplex_bounded(
    k: &SimplicialComplex,
    gens: &[Perm],
    bound: usize,
) -> Result<ChainComplexQ> {
    check_bound(k, bound)?;
    for g in gens {
        if g.degree() != k.num_vertices() {
            return Err(Error::DimensionMismatch(format!(
                "permutation {g} of degree {} on a complex with {} vertices",
                g.degree(),
                k.num_vertices()
            )));
        }
    }
    build(k, gens)
}

fn build(k: &SimplicialComplex, gens: &[Perm]) -> Result<ChainComplexQ> {
    let m = k.num_vertices();
    let full: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let invariant = |s: u64| gens.iter().all(|g| g.apply_mask(s) == s);
    let subsets: Vec<u64> = (0..=full).filter(|&s| invariant(s)).collect();
    let mut cells = Vec::new();
    let mut chain = Vec::new();
    for &s0 in &subsets {
        chain.clear();
        chain.push(s0);
        extend_chains(k, &subsets, &mut chain, &mut cells);
    }
    ChainComplexQ::from_cells(m, cells)
}

fn extend_chains(k: &SimplicialComplex, subsets: &[u64], chain: &mut Vec<u64>, out: &mut Vec<Cell>) {
    out.push(Cell(chain.clone()));
    let s0 = chain[0];
    let last = *chain.last().expect("chains are nonempty");
    for &next in subsets {
        if next & last == last && next != last && k.is_face_mask(next & !s0) {
            chain.push(next);
            extend_chains(k, subsets, chain, out);
            chain.pop();
        }
    }
}

/// The cell map x ↦ g·x.
pub fn translation_cell_map(g: &Perm) -> impl Fn(&Cell) -> Cell + '_ {
    move |c: &Cell| c.translate(g)
}

/// Matrix of H_n(source) → H_n(target) induced by a simplicial,
/// order-preserving cell map; column j is the image of source class j.
pub fn induced_map<F>(
    target: &ChainComplexQ,
    cell_map: F,
    source_cells: &[Cell],
    source_basis: &HomologyBasis,
    target_basis: &HomologyBasis,
) -> Result<MatrixQ>
where
    F: Fn(&Cell) -> Cell,
{
    let n = source_basis.n;
    let (bs, bt) = (source_basis.betti(), target_basis.betti());
    let mut out = MatrixQ::zeros(bt, bs);
    if bs == 0 || bt == 0 {
        // Still validate that the map lands in the target.
        for c in source_cells {
            let image = cell_map(c);
            if target.cell_index(&image).is_none() {
                return Err(Error::CellNotInTarget(format!("{image:?}")));
            }
        }
        return Ok(out);
    }
    let images: Vec<usize> = source_cells
        .iter()
        .map(|c| {
            let image = cell_map(c);
            target
                .cell_index(&image)
                .ok_or_else(|| Error::CellNotInTarget(format!("{image:?}")))
        })
        .collect::<Result<_>>()?;
    for j in 0..bs {
        let mut v = vec![Rational::zero(); target.num_cells(n)];
        for (i, x) in source_basis.reps.row(j).iter().enumerate() {
            if !x.is_zero() {
                v[images[i]] += x;
            }
        }
        if n > 0 {
            let dv = target.boundary_ref(n).map(|b| b.mul_vec(&v));
            if dv.is_some_and(|dv| dv.iter().any(|x| !x.is_zero())) {
                return Err(Error::Internal(format!(
                    "image of homology class {j} in degree {n} is not a cycle"
                )));
            }
        }
        for (i, c) in target_basis.class_of(&v).into_iter().enumerate() {
            out.set(i, j, c);
        }
    }
    Ok(out)
}

/// Convenience wrapper: the map on H_n induced by the translation `g` from
/// `source` into `target`.
pub fn induced_translation(
    source: &ChainComplexQ,
    target: &ChainComplexQ,
    g: &Perm,
    source_basis: &HomologyBasis,
    target_basis: &HomologyBasis,
) -> Result<MatrixQ> {
    induced_map(
        target,
        translation_cell_map(g),
        source.cells(source_basis.n),
        source_basis,
        target_basis,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{parse_generators, PermGroup};
    use crate::simplicial::{boundary, ngon, simplex, trilinder};

    #[test]
    fn cell_counts() {
        assert_eq!(triangulate(&boundary(3).unwrap()).unwrap().total_cells(), 224);
        assert_eq!(triangulate(&ngon(4).unwrap()).unwrap().total_cells(), 96);
    }

    #[test]
    fn sphere_and_cube() {
        let c = triangulate(&boundary(3).unwrap()).unwrap();
        assert!(c.boundary_squares_to_zero());
        assert_eq!(c.betti_numbers(), vec![1, 0, 0, 1]);
        assert_eq!(triangulate(&simplex(2)).unwrap().betti_numbers(), vec![1, 0, 0, 0]);
        let ghosts = SimplicialComplex::new(2, &[]).unwrap();
        assert_eq!(triangulate(&ghosts).unwrap().betti_numbers(), vec![4]);
        assert_eq!(triangulate(&boundary(2).unwrap()).unwrap().betti_numbers(), vec![1, 0, 1]);
    }

    #[test]
    fn torus() {
        let c = triangulate(&ngon(4).unwrap()).unwrap();
        assert_eq!(c.betti_numbers(), vec![1, 2, 1]);
        let h1 = c.homology(1);
        assert_eq!(h1.betti(), 2);
        // The certificate recovers the basis classes.
        for j in 0..2 {
            let coords = h1.class_of(h1.reps.row(j));
            for (i, x) in coords.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert!(x.is_zero() || i == j);
            }
        }
    }

    #[test]
    fn fixed_subcomplexes() {
        let b3 = boundary(3).unwrap();
        let sigma2 = parse_generators(4, "(0 2)(1 3)").unwrap();
        assert_eq!(fixed_subcomplex(&b3, &sigma2).unwrap().betti_numbers(), vec![1, 1]);
        let s4 = PermGroup::symmetric(4).unwrap();
        assert_eq!(fixed_subcomplex(&b3, s4.generators()).unwrap().betti_numbers(), vec![2]);
        let c3 = parse_generators(6, "(0 1 2)(3 4 5)").unwrap();
        // (X×A) ∪ (A×X) for (D¹,S⁰) is the boundary of a square.
        assert_eq!(fixed_subcomplex(&trilinder(), &c3).unwrap().betti_numbers(), vec![1, 1]);
    }

    #[test]
    fn induced_maps() {
        let b3 = boundary(3).unwrap();
        let x = triangulate(&b3).unwrap();
        let h3 = x.homology(3);
        let g = Perm::parse_cycles(4, "(0 1 2 3)").unwrap();
        let m = induced_translation(&x, &x, &g, &h3, &h3).unwrap();
        assert_eq!(m.shape(), (1, 1));
        // A 4-cycle is an odd coordinate permutation: it reverses S³.
        assert_eq!(*m.get(0, 0), Rational::from(-1));
        let g2 = g.compose(&g);
        let m2 = induced_translation(&x, &x, &g2, &h3, &h3).unwrap();
        assert_eq!(m.mul(&m), m2);
        let id = Perm::identity(4);
        assert!(induced_translation(&x, &x, &id, &h3, &h3).unwrap().is_identity());

        // S⁰ = X^{D8} into S¹ = X^{⟨σ²⟩} on H₀ has rank 1.
        let d8 = parse_generators(4, "(0 1 2 3),(0 1)(2 3)").unwrap();
        let s0 = fixed_subcomplex(&b3, &d8).unwrap();
        let s1 = fixed_subcomplex(&b3, &parse_generators(4, "(0 2)(1 3)").unwrap()).unwrap();
        let m = induced_translation(&s0, &s1, &id, &s0.homology(0), &s1.homology(0)).unwrap();
        assert_eq!(m.shape(), (1, 2));
        assert_eq!(m.rank(), 1);
        // The reverse direction is not a cell map.
        assert!(induced_translation(&s1, &s0, &id, &s1.homology(0), &s0.homology(0)).is_err());
    }

    #[test]
    fn bound() {
        let k = SimplicialComplex::new(9, &[]).unwrap();
        assert!(matches!(
            triangulate_bounded(&k, 8),
            Err(Error::TooManyVertices { value: 9, bound: 8, .. })
        ));
    }
}
