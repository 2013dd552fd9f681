//! Bredon cohomology of real moment-angle complexes, computed directly from
//! the equivariant cellular cochains and through Ext against injective
//! resolutions.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::action::ComplexAction;
use crate::coeffsys::{hom_space, homology_system_from, CoefficientSystem, FixedPointData};
use crate::doman::{injective_resolution, Resolution};
use crate::error::{Error, Result};
use crate::orbitcat::OrbitCategory;
use crate::qlinalg::{MatrixQ, Rational, SubspaceQ};
use crate::zcomplex::{triangulate, ChainComplexQ};

/// One G-orbit of cells of a fixed dimension.
#[derive(Clone, Debug, Serialize)]
pub struct CellOrbit {
    /// Index of the representative among the ambient cells; its stabilizer
    /// is exactly the representative subgroup of `object`.
    pub representative: usize,
    /// Orbit-category object of the stabilizer.
    pub object: usize,
    /// Member cell indices, sorted.
    pub members: Vec<usize>,
}

/// The G-CW structure of the triangulated moment-angle complex.
#[derive(Debug)]
pub struct EquivariantCellStructure {
    pub ambient: ChainComplexQ,
    pub orbits: Vec<Vec<CellOrbit>>,
    /// `locate[d][c] = (orbit, g)`: cell c is g·(orbit representative), with
    /// g the least such element.
    pub locate: Vec<Vec<(usize, usize)>>,
}

impl EquivariantCellStructure {
    pub fn num_dims(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_sizes(&self, d: usize) -> Vec<usize> {
        self.orbits[d].iter().map(|o| o.members.len()).collect()
    }
}

fn check_group(action: &ComplexAction, category: &OrbitCategory) -> Result<()> {
    if action.group().elements() != category.group().elements() {
        return Err(Error::CategoryMismatch);
    }
    Ok(())
}

pub fn equivariant_cells(
    action: &ComplexAction,
    category: &OrbitCategory,
) -> Result<EquivariantCellStructure> {
    check_group(action, category)?;
    let ambient = triangulate(action.complex())?;
    let group = category.group();
    let (orbits, locate): (Vec<_>, Vec<_>) = (0..ambient.num_dims())
        .into_par_iter()
        .map(|d| cell_orbits(&ambient, category, d))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .unzip();
    debug_assert_eq!(group.identity_index(), 0);
    Ok(EquivariantCellStructure {
        ambient,
        orbits,
        locate,
    })
}

/// Orbits of d-cells, and for each cell its (orbit, least g with g·rep = cell).
type OrbitsAndLocations = (Vec<CellOrbit>, Vec<(usize, usize)>);

fn cell_orbits(
    ambient: &ChainComplexQ,
    category: &OrbitCategory,
    d: usize,
) -> Result<OrbitsAndLocations> {
    let group = category.group();
    let cells = ambient.cells(d);
    let mut locate = vec![(usize::MAX, 0); cells.len()];
    let mut orbits = Vec::new();
    for start in 0..cells.len() {
        if locate[start].0 != usize::MAX {
            continue;
        }
        let images: Vec<usize> = group
            .elements()
            .iter()
            .map(|g| {
                ambient
                    .cell_index(&cells[start].translate(g))
                    .ok_or_else(|| Error::Internal("the action does not preserve the cells".into()))
            })
            .collect::<Result<_>>()?;
        let stabilizer: Vec<usize> = (0..group.order()).filter(|&g| images[g] == start).collect();
        let stabilizer = group.generate(&stabilizer);
        let object = (0..category.num_objects())
            .find(|&i| category.class(i).conjugates.contains(&stabilizer))
            .ok_or_else(|| Error::Internal("stabilizer outside the subgroup classes".into()))?;
        // Least orbit member whose stabilizer g·Stab·g⁻¹ is the class representative.
        let representative = (0..group.order())
            .filter(|&g| group.conjugate(&stabilizer, g) == *category.subgroup(object))
            .map(|g| images[g])
            .min()
            .expect("the stabilizer is conjugate to its class representative");
        let orbit = orbits.len();
        let rep_cell = &cells[representative];
        for (g, perm) in group.elements().iter().enumerate() {
            let c = ambient.cell_index(&rep_cell.translate(perm)).expect("checked above");
            if locate[c].0 == usize::MAX {
                locate[c] = (orbit, g);
            }
        }
        let mut members: Vec<usize> = images;
        members.sort_unstable();
        members.dedup();
        orbits.push(CellOrbit {
            representative,
            object,
            members,
        });
    }
    Ok((orbits, locate))
}

/// The cochain complex Hom_𝒞(C̲_*(X), M), one summand M(G/H) per cell orbit.
#[derive(Clone, Debug, Serialize)]
pub struct BredonCochain {
    pub dims: Vec<usize>,
    /// `differentials[n]`: Cⁿ → Cⁿ⁺¹.
    pub differentials: Vec<MatrixQ>,
    /// Column offset of each orbit's summand, per degree.
    pub offsets: Vec<Vec<usize>>,
}

impl BredonCochain {
    pub fn squares_to_zero(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.differentials.par_iter().map(MatrixQ::rank).collect()
    }

    pub fn cohomology(&self) -> Vec<usize> {
        let ranks = self.ranks();
        (0..self.dims.len())
            .map(|n| {
                let out = ranks.get(n).copied().unwrap_or(0);
                let inc = if n == 0 { 0 } else { ranks[n - 1] };
                self.dims[n] - out - inc
            })
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

pub fn bredon_cochain(cells: &EquivariantCellStructure, m: &CoefficientSystem) -> Result<BredonCochain> {
    let cat = m.category();
    let top = cells.num_dims();
    let offsets: Vec<Vec<usize>> = cells
        .orbits
        .iter()
        .map(|orbits| {
            let mut acc = 0;
            let mut out = Vec::with_capacity(orbits.len() + 1);
            for o in orbits {
                out.push(acc);
                acc += m.dim(o.object);
            }
            out.push(acc);
            out
        })
        .collect();
    let dims: Vec<usize> = offsets.iter().map(|o| *o.last().expect("nonempty")).collect();
    let differentials = (0..top.saturating_sub(1))
        .into_par_iter()
        .map(|n| {
            let mut delta = MatrixQ::zeros(dims[n + 1], dims[n]);
            for (t, orbit) in cells.orbits[n + 1].iter().enumerate() {
                let j = orbit.object;
                let cell = &cells.ambient.cells(n + 1)[orbit.representative];
                for (face, sign) in cell.faces() {
                    let f = cells
                        .ambient
                        .cell_index(&face)
                        .ok_or_else(|| Error::Internal("face outside the complex".into()))?;
                    let (o, g) = cells.locate[n][f];
                    let i = cells.orbits[n][o].object;
                    let phi = cat.find(j, i, g).ok_or_else(|| {
                        Error::Internal("face translation is not a morphism of orbits".into())
                    })?;
                    delta.add_block(offsets[n + 1][t], offsets[n][o], m.map(phi), &Rational::from_integer(sign));
                }
            }
            Ok(delta)
        })
        .collect::<Result<Vec<_>>>()?;
    let cochain = BredonCochain {
        dims,
        differentials,
        offsets,
    };
    if !cochain.squares_to_zero() {
        return Err(Error::Internal("Bredon differential does not square to zero".into()));
    }
    Ok(cochain)
}

pub fn bredon_cohomology(action: &ComplexAction, m: &CoefficientSystem) -> Result<Vec<usize>> {
    let cells = equivariant_cells(action, m.category())?;
    Ok(bredon_cochain(&cells, m)?.cohomology())
}

/// Dimensions of Hom(H̲_q, I^p) and of Ext^{p,q}(H̲_q, M).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtTable {
    /// `raw[p][q] = dim Hom(H̲_q, I^p)`.
    pub raw: Vec<Vec<usize>>,
    /// `ext[p][q] = dim Ext^p(H̲_q, M)`.
    pub ext: Vec<Vec<usize>>,
}

impl ExtTable {
    /// Σ_{p+q=n} dim Ext^{p,q}.
    pub fn total(&self, n: usize) -> usize {
        self.ext
            .iter()
            .enumerate()
            .filter(|&(p, _)| p <= n)
            .map(|(p, row)| row.get(n - p).copied().unwrap_or(0))
            .sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        euler(&self.ext)
    }

    pub fn raw_euler_characteristic(&self) -> i64 {
        euler(&self.raw)
    }
}

fn euler(table: &[Vec<usize>]) -> i64 {
    let mut chi = 0i64;
    for (p, row) in table.iter().enumerate() {
        for (q, &d) in row.iter().enumerate() {
            chi += if (p + q) % 2 == 0 { d as i64 } else { -(d as i64) };
        }
    }
    chi
}

fn flatten(components: &[MatrixQ]) -> Vec<Rational> {
    components.iter().flat_map(|c| c.to_rows().into_iter().flatten()).collect()
}

fn unflatten(v: &[Rational], shapes: &[(usize, usize)]) -> Vec<MatrixQ> {
    let mut pos = 0;
    shapes
        .iter()
        .map(|&(r, c)| {
            let m = MatrixQ::from_vec(r, c, v[pos..pos + r * c].to_vec());
            pos += r * c;
            m
        })
        .collect()
}

/// Hom(H̲_q, I^p) as a subspace of the flattened component space.
fn hom_subspace(h: &CoefficientSystem, i: &CoefficientSystem) -> Result<SubspaceQ> {
    let space = hom_space(h, i)?;
    let ambient: usize = (0..h.dims().len()).map(|k| h.dim(k) * i.dim(k)).sum();
    let vectors: Vec<Vec<Rational>> = space.basis.iter().map(|b| flatten(b)).collect();
    SubspaceQ::span(ambient, &vectors)
}

/// Ext table of the homology systems against a resolution of M.
pub fn ext_table(homology: &[CoefficientSystem], resolution: &Resolution) -> Result<ExtTable> {
    let terms = &resolution.terms;
    let pairs: Vec<(usize, usize)> = (0..terms.len())
        .flat_map(|p| (0..homology.len()).map(move |q| (p, q)))
        .collect();
    let spaces: Vec<SubspaceQ> = pairs
        .par_iter()
        .map(|&(p, q)| hom_subspace(&homology[q], &terms[p]))
        .collect::<Result<_>>()?;
    let space = |p: usize, q: usize| &spaces[p * homology.len() + q];
    let raw: Vec<Vec<usize>> = (0..terms.len())
        .map(|p| (0..homology.len()).map(|q| space(p, q).dim()).collect())
        .collect();
    // δ^p: Hom(H̲_q, I^p) → Hom(H̲_q, I^{p+1}), post-composition with d^{p+1}.
    let ranks: Vec<Vec<usize>> = (0..terms.len().saturating_sub(1))
        .map(|p| {
            (0..homology.len())
                .into_par_iter()
                .map(|q| {
                    let h = &homology[q];
                    let shapes: Vec<(usize, usize)> =
                        (0..h.dims().len()).map(|k| (terms[p].dim(k), h.dim(k))).collect();
                    let d = &resolution.maps[p + 1];
                    let (src, dst) = (space(p, q), space(p + 1, q));
                    let mut m = MatrixQ::zeros(dst.dim(), src.dim());
                    for c in 0..src.dim() {
                        let eta = unflatten(src.basis().row(c), &shapes);
                        let image: Vec<MatrixQ> =
                            eta.iter().zip(&d.components).map(|(e, dk)| dk.mul(e)).collect();
                        let coords = dst.coordinates(&flatten(&image)).ok_or_else(|| {
                            Error::Internal("post-composition left the Hom space".into())
                        })?;
                        for (r, v) in coords.into_iter().enumerate() {
                            m.set(r, c, v);
                        }
                    }
                    Ok(m.rank())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let ext = (0..terms.len())
        .map(|p| {
            (0..homology.len())
                .map(|q| {
                    let out = ranks.get(p).map_or(0, |r| r[q]);
                    let inc = if p == 0 { 0 } else { ranks[p - 1][q] };
                    raw[p][q] - out - inc
                })
                .collect()
        })
        .collect();
    Ok(ExtTable { raw, ext })
}

/// One named check of the spectral-sequence comparison.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Direct cohomology, Ext data and their consistency checks.
#[derive(Clone, Debug, Serialize)]
pub struct UcssReport {
    pub cohomology: Vec<usize>,
    pub table: ExtTable,
    pub resolution_length: usize,
    pub injective: bool,
    pub checks: Vec<Check>,
}

impl UcssReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Everything needed to compare the two routes for one action.
pub struct BredonContext {
    pub category: Arc<OrbitCategory>,
    pub cells: EquivariantCellStructure,
    pub homology: Vec<CoefficientSystem>,
}

impl BredonContext {
    pub fn new(action: &ComplexAction, category: Arc<OrbitCategory>) -> Result<Self> {
        check_group(action, &category)?;
        let cells = equivariant_cells(action, &category)?;
        let data = FixedPointData::compute(action, &category)?;
        let top = cells.num_dims().saturating_sub(1);
        let homology = (0..=top)
            .map(|q| homology_system_from(&data, category.clone(), q))
            .collect::<Result<_>>()?;
        Ok(BredonContext {
            category,
            cells,
            homology,
        })
    }

    pub fn cohomology(&self, m: &CoefficientSystem) -> Result<Vec<usize>> {
        Ok(bredon_cochain(&self.cells, m)?.cohomology())
    }

    /// dim Hom(H̲_q, M) for every q.
    pub fn hom_dims(&self, m: &CoefficientSystem) -> Result<Vec<usize>> {
        self.homology
            .par_iter()
            .map(|h| Ok(hom_space(h, m)?.dim))
            .collect()
    }

    pub fn ucss(&self, m: &Arc<CoefficientSystem>, max_len: usize) -> Result<UcssReport> {
        let cohomology = self.cohomology(m)?;
        let resolution = injective_resolution(m, max_len)?;
        let table = ext_table(&self.homology, &resolution)?;
        let injective = resolution.len() <= 1;
        let mut checks = Vec::new();
        if injective {
            let hom = self.hom_dims(m)?;
            checks.push(Check {
                name: "collapse".into(),
                passed: hom == cohomology,
                detail: format!("H = {cohomology:?}, Hom(H_n, M) = {hom:?}"),
            });
        }
        let totals: Vec<usize> = (0..cohomology.len()).map(|n| table.total(n)).collect();
        checks.push(Check {
            name: "ext_bound".into(),
            passed: cohomology.iter().zip(&totals).all(|(h, t)| h <= t),
            detail: format!("H = {cohomology:?}, sum of Ext along antidiagonals = {totals:?}"),
        });
        let ext00 = table.ext.first().map_or(0, |r| r[0]);
        checks.push(Check {
            name: "degree_zero".into(),
            passed: cohomology.first().copied().unwrap_or(0) == ext00,
            detail: format!("H^0 = {}, Ext^0,0 = {ext00}", cohomology.first().copied().unwrap_or(0)),
        });
        let chi: i64 = cohomology
            .iter()
            .enumerate()
            .map(|(n, &d)| if n % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum();
        checks.push(Check {
            name: "euler".into(),
            passed: chi == table.euler_characteristic()
                && chi == table.raw_euler_characteristic(),
            detail: format!(
                "direct {chi}, Ext {}, raw Hom {}",
                table.euler_characteristic(),
                table.raw_euler_characteristic()
            ),
        });
        Ok(UcssReport {
            cohomology,
            table,
            resolution_length: resolution.len(),
            injective,
            checks,
        })
    }
}

pub fn ucss_consistency(
    action: &ComplexAction,
    m: &Arc<CoefficientSystem>,
    max_len: usize,
) -> Result<UcssReport> {
    BredonContext::new(action, m.category().clone())?.ucss(m, max_len)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::validate_action;
    use crate::groups::{parse_generators, PermGroup};
    use crate::simplicial::boundary;

    fn setup(degree: usize, gens: &str) -> (ComplexAction, Arc<OrbitCategory>) {
        let g = if gens.is_empty() {
            PermGroup::trivial(degree)
        } else {
            PermGroup::closure(degree, &parse_generators(degree, gens).unwrap()).unwrap()
        };
        let cat = Arc::new(OrbitCategory::new(&g).unwrap());
        (validate_action(&boundary(degree - 1).unwrap(), &g).unwrap(), cat)
    }

    #[test]
    fn trivial_group_cells() {
        let (a, cat) = setup(4, "");
        let cells = equivariant_cells(&a, &cat).unwrap();
        for d in 0..cells.num_dims() {
            assert!(cells.orbit_sizes(d).iter().all(|&s| s == 1));
            assert!(cells.orbits[d].iter().all(|o| o.object == 0));
        }
        let q = CoefficientSystem::constant(cat);
        assert_eq!(bredon_cohomology(&a, &q).unwrap(), vec![1, 0, 0, 1]);
    }

    #[test]
    fn symmetric_group_diagonal_cells() {
        let (a, cat) = setup(4, "(0 1),(0 1 2 3)");
        let cells = equivariant_cells(&a, &cat).unwrap();
        let top = cat.num_objects() - 1;
        let fixed: Vec<usize> = cells.orbits[0]
            .iter()
            .filter(|o| o.object == top)
            .map(|o| o.representative)
            .collect();
        let masks: Vec<u64> = fixed.iter().map(|&c| cells.ambient.cells(0)[c].chain()[0]).collect();
        assert_eq!(masks, vec![0, 0b1111]);
        for d in 0..cells.num_dims() {
            assert_eq!(cells.orbit_sizes(d).iter().sum::<usize>(), cells.ambient.num_cells(d));
        }
    }

    #[test]
    fn zero_coefficients() {
        let (a, cat) = setup(4, "(0 1 2 3),(0 1)(2 3)");
        let z = CoefficientSystem::zero(cat);
        assert_eq!(bredon_cohomology(&a, &z).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn constant_coefficients_give_orbit_space() {
        // With ℚ̲ the Bredon cochains are the cochains of X/G.
        let (a, cat) = setup(4, "(0 1 2 3),(0 1)(2 3)");
        let q = Arc::new(CoefficientSystem::constant(cat));
        let report = ucss_consistency(&a, &q, 4).unwrap();
        assert!(report.injective);
        assert!(report.passed(), "{:?}", report.checks);
        assert_eq!(report.cohomology[0], 1);
    }
}
