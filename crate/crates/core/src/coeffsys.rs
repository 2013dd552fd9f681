//! Bredon coefficient systems over ℚ: contravariant functors from the orbit
//! category to finite-dimensional vector spaces.
//!
//! For a morphism f: G/H_i → G/H_j the structure map M(f) is a
//! `dims[i] × dims[j]` matrix acting on column vectors, so that
//! M(f′∘f) = M(f)·M(f′).

use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::ComplexAction;
use crate::error::{Error, Result};
use crate::groups::{Perm, PermGroup};
use crate::orbitcat::OrbitCategory;
use crate::qlinalg::{kernel, quotient_map, MatrixQ, Rational, SubspaceQ};
use crate::zcomplex::{fixed_subcomplex, induced_translation, ChainComplexQ, HomologyBasis};

#[derive(Clone, Debug)]
pub struct CoefficientSystem {
    category: Arc<OrbitCategory>,
    dims: Vec<usize>,
    maps: Vec<MatrixQ>,
}

impl CoefficientSystem {
    /// Builds and validates a system from one matrix per morphism id.
    pub fn new(category: Arc<OrbitCategory>, dims: Vec<usize>, maps: Vec<MatrixQ>) -> Result<Self> {
        let m = CoefficientSystem::new_unchecked(category, dims, maps)?;
        m.validate()?;
        Ok(m)
    }

    /// Checks only shapes; functoriality is the caller's responsibility.
    pub fn new_unchecked(
        category: Arc<OrbitCategory>,
        dims: Vec<usize>,
        maps: Vec<MatrixQ>,
    ) -> Result<Self> {
        if dims.len() != category.num_objects() {
            return Err(Error::DimensionMismatch(format!(
                "{} dimensions for {} objects",
                dims.len(),
                category.num_objects()
            )));
        }
        if maps.len() != category.num_morphisms() {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for {} morphisms",
                maps.len(),
                category.num_morphisms()
            )));
        }
        for (id, m) in maps.iter().enumerate() {
            let f = category.morphism(id);
            if m.shape() != (dims[f.src], dims[f.dst]) {
                return Err(Error::DimensionMismatch(format!(
                    "matrix for morphism {id} ({} -> {}) is {}x{}, expected {}x{}",
                    f.src,
                    f.dst,
                    m.rows(),
                    m.cols(),
                    dims[f.src],
                    dims[f.dst]
                )));
            }
        }
        Ok(CoefficientSystem {
            category,
            dims,
            maps,
        })
    }

    /// ℚ at every object, identities everywhere.
    pub fn constant(category: Arc<OrbitCategory>) -> Self {
        let dims = vec![1; category.num_objects()];
        let maps = vec![MatrixQ::identity(1); category.num_morphisms()];
        CoefficientSystem {
            category,
            dims,
            maps,
        }
    }

    pub fn zero(category: Arc<OrbitCategory>) -> Self {
        let dims = vec![0; category.num_objects()];
        let maps = vec![MatrixQ::zeros(0, 0); category.num_morphisms()];
        CoefficientSystem {
            category,
            dims,
            maps,
        }
    }

    /// ℚ at G/{e} with trivial G-action, zero elsewhere.
    pub fn free_point(category: Arc<OrbitCategory>) -> Self {
        let mut dims = vec![0; category.num_objects()];
        dims[0] = 1;
        let maps = category
            .morphisms()
            .iter()
            .map(|f| {
                if f.src == 0 && f.dst == 0 {
                    MatrixQ::identity(1)
                } else {
                    MatrixQ::zeros(dims[f.src], dims[f.dst])
                }
            })
            .collect();
        CoefficientSystem {
            category,
            dims,
            maps,
        }
    }

    pub fn category(&self) -> &Arc<OrbitCategory> {
        &self.category
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, morphism: usize) -> &MatrixQ {
        &self.maps[morphism]
    }

    pub fn maps(&self) -> &[MatrixQ] {
        &self.maps
    }

    fn check_same_category(&self, other: &CoefficientSystem) -> Result<()> {
        if Arc::ptr_eq(&self.category, &other.category) || self.category.same_as(&other.category) {
            Ok(())
        } else {
            Err(Error::CategoryMismatch)
        }
    }

    /// Full functor check: identities and every composable pair.
    pub fn validate(&self) -> Result<()> {
        let cat = &self.category;
        for i in 0..cat.num_objects() {
            if !self.maps[cat.identity(i)].is_identity() {
                return Err(Error::NotAFunctor(format!("identity of object {i} is not sent to the identity")));
            }
        }
        let mut pairs: Vec<(usize, usize, usize)> = cat.composable_pairs().collect();
        pairs.sort_unstable();
        let bad = pairs.par_iter().find_first(|&&(f, g, h)| {
            self.maps[f].mul(&self.maps[g]) != self.maps[h]
        });
        if let Some(&(f, g, h)) = bad {
            let (mf, mg) = (cat.morphism(f), cat.morphism(g));
            return Err(Error::NotAFunctor(format!(
                "M({h}) != M({f})·M({g}) for {} -> {} -> {}",
                mf.src, mf.dst, mg.dst
            )));
        }
        Ok(())
    }

    /// The Weyl action at object i: one matrix per Weyl coset representative,
    /// ρ(n) = M(eH ↦ nH), a left action.
    pub fn weyl_matrices(&self, i: usize) -> Vec<MatrixQ> {
        let cat = &self.category;
        cat.class(i)
            .weyl_coset_reps
            .iter()
            .map(|&n| {
                let f = cat.find(i, i, n).expect("normalizer elements give automorphisms");
                self.maps[f].clone()
            })
            .collect()
    }

    /// Objectwise direct sum.
    pub fn direct_sum(systems: &[&CoefficientSystem]) -> Result<CoefficientSystem> {
        let first = systems
            .first()
            .ok_or_else(|| Error::DimensionMismatch("direct sum of no systems".into()))?;
        for s in systems {
            first.check_same_category(s)?;
        }
        let cat = first.category.clone();
        let dims = (0..cat.num_objects())
            .map(|i| systems.iter().map(|s| s.dims[i]).sum())
            .collect();
        let maps = (0..cat.num_morphisms())
            .map(|f| {
                let blocks: Vec<&MatrixQ> = systems.iter().map(|s| &s.maps[f]).collect();
                MatrixQ::direct_sum(&blocks)
            })
            .collect();
        CoefficientSystem::new_unchecked(cat, dims, maps)
    }
}

/// A natural transformation between systems over the same category.
#[derive(Clone, Debug)]
pub struct SystemMorphism {
    pub source: Arc<CoefficientSystem>,
    pub target: Arc<CoefficientSystem>,
    /// `components[i]`: `target.dim(i) × source.dim(i)`.
    pub components: Vec<MatrixQ>,
}

impl SystemMorphism {
    /// Builds and checks naturality.
    pub fn new(
        source: Arc<CoefficientSystem>,
        target: Arc<CoefficientSystem>,
        components: Vec<MatrixQ>,
    ) -> Result<Self> {
        let phi = SystemMorphism {
            source,
            target,
            components,
        };
        phi.validate()?;
        Ok(phi)
    }

    pub fn identity(m: Arc<CoefficientSystem>) -> Self {
        let components = m.dims.iter().map(|&d| MatrixQ::identity(d)).collect();
        SystemMorphism {
            source: m.clone(),
            target: m,
            components,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.source.check_same_category(&self.target)?;
        let cat = self.source.category.clone();
        if self.components.len() != cat.num_objects() {
            return Err(Error::DimensionMismatch("one component per object is required".into()));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.shape() != (self.target.dims[i], self.source.dims[i]) {
                return Err(Error::DimensionMismatch(format!(
                    "component {i} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    self.target.dims[i],
                    self.source.dims[i]
                )));
            }
        }
        for (id, f) in cat.morphisms().iter().enumerate() {
            // f_i · M(φ) = N(φ) · f_j
            let lhs = self.components[f.src].mul(self.source.map(id));
            let rhs = self.target.map(id).mul(&self.components[f.dst]);
            if lhs != rhs {
                return Err(Error::NotNatural(format!(
                    "square for morphism {id} ({} -> {}, coset rep {}) does not commute",
                    f.src,
                    f.dst,
                    cat.group().element(f.rep)
                )));
            }
        }
        Ok(())
    }

    /// `second ∘ self`.
    pub fn then(&self, second: &SystemMorphism) -> SystemMorphism {
        SystemMorphism {
            source: self.source.clone(),
            target: second.target.clone(),
            components: second
                .components
                .iter()
                .zip(&self.components)
                .map(|(b, a)| b.mul(a))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(MatrixQ::is_zero)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.components.iter().map(MatrixQ::rank).collect()
    }

    /// Whether every component is injective.
    pub fn is_injective(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.rank() == c.cols())
    }
}

/// The kernel of φ with its inclusion into the source.
pub fn kernel_system(phi: &SystemMorphism) -> Result<(CoefficientSystem, SystemMorphism)> {
    phi.validate()?;
    let m = &phi.source;
    let spaces: Vec<SubspaceQ> = phi.components.iter().map(kernel).collect();
    sub_system(m, spaces)
}

/// The subsystem of `m` given objectwise by `spaces` (assumed stable under
/// the structure maps), with its inclusion.
fn sub_system(
    m: &Arc<CoefficientSystem>,
    spaces: Vec<SubspaceQ>,
) -> Result<(CoefficientSystem, SystemMorphism)> {
    let cat = m.category.clone();
    let dims: Vec<usize> = spaces.iter().map(SubspaceQ::dim).collect();
    let mut maps = Vec::with_capacity(cat.num_morphisms());
    for (id, f) in cat.morphisms().iter().enumerate() {
        let (si, sj) = (&spaces[f.src], &spaces[f.dst]);
        let mut k = MatrixQ::zeros(si.dim(), sj.dim());
        for c in 0..sj.dim() {
            let image = m.map(id).mul_vec(sj.basis().row(c));
            let coords = si.coordinates(&image).ok_or_else(|| {
                Error::NotNatural(format!("subspace not stable under morphism {id}"))
            })?;
            for (r, x) in coords.into_iter().enumerate() {
                k.set(r, c, x);
            }
        }
        maps.push(k);
    }
    let sub = Arc::new(CoefficientSystem::new(cat, dims, maps)?);
    let inclusion = SystemMorphism {
        source: sub.clone(),
        target: m.clone(),
        components: spaces.iter().map(|s| s.basis().transpose()).collect(),
    };
    Ok((Arc::unwrap_or_clone(sub), inclusion))
}

/// The image of φ as a subsystem of the target, with its inclusion.
pub fn image_system(phi: &SystemMorphism) -> Result<(CoefficientSystem, SystemMorphism)> {
    phi.validate()?;
    let spaces = phi.components.iter().map(SubspaceQ::column_space).collect();
    sub_system(&phi.target, spaces)
}

/// The cokernel of φ with the projection from the target.
pub fn cokernel_system(phi: &SystemMorphism) -> Result<(CoefficientSystem, SystemMorphism)> {
    phi.validate()?;
    let n = &phi.target;
    let cat = n.category.clone();
    let quotients = phi
        .components
        .iter()
        .zip(&n.dims)
        .map(|(c, &d)| quotient_map(&SubspaceQ::full(d), &SubspaceQ::column_space(c)))
        .collect::<Result<Vec<_>>>()?;
    let dims: Vec<usize> = quotients.iter().map(|q| q.dim()).collect();
    let maps = cat
        .morphisms()
        .iter()
        .enumerate()
        .map(|(id, f)| {
            quotients[f.src]
                .projection
                .mul(n.map(id))
                .mul(&quotients[f.dst].section.transpose())
        })
        .collect();
    let coker = Arc::new(CoefficientSystem::new(cat, dims, maps)?);
    let projection = SystemMorphism {
        source: n.clone(),
        target: coker.clone(),
        components: quotients.into_iter().map(|q| q.projection).collect(),
    };
    Ok((Arc::unwrap_or_clone(coker), projection))
}

/// A basis of the space of natural transformations M → N.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub dim: usize,
    /// Each basis element as per-object components (`N.dim(i) × M.dim(i)`).
    pub basis: Vec<Vec<MatrixQ>>,
}

/// Solves the naturality equations f_i·M(φ) = N(φ)·f_j for all morphisms.
pub fn hom_space(m: &CoefficientSystem, n: &CoefficientSystem) -> Result<HomSpace> {
    m.check_same_category(n)?;
    let cat = &m.category;
    let objects = cat.num_objects();
    // Unknown (i, a, b) = f_i[a][b], row-major per object.
    let mut offset = vec![0usize; objects + 1];
    for i in 0..objects {
        offset[i + 1] = offset[i] + n.dims[i] * m.dims[i];
    }
    let unknowns = offset[objects];
    if unknowns == 0 {
        return Ok(HomSpace {
            dim: 0,
            basis: Vec::new(),
        });
    }
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (id, f) in cat.morphisms().iter().enumerate() {
        let (i, j) = (f.src, f.dst);
        let (mf, nf) = (m.map(id), n.map(id));
        // Entry (a, c) of f_i·M(φ) − N(φ)·f_j, a < dN_i, c < dM_j.
        for a in 0..n.dims[i] {
            for c in 0..m.dims[j] {
                let mut row = vec![Rational::zero(); unknowns];
                for b in 0..m.dims[i] {
                    let x = mf.get(b, c);
                    if !x.is_zero() {
                        row[offset[i] + a * m.dims[i] + b] += x;
                    }
                }
                for b in 0..n.dims[j] {
                    let x = nf.get(a, b);
                    if !x.is_zero() {
                        row[offset[j] + b * m.dims[j] + c] -= x;
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let system = MatrixQ::from_rows(rows, unknowns)?;
    let solutions = kernel(&system);
    let basis = solutions
        .basis_vectors()
        .into_iter()
        .map(|v| {
            (0..objects)
                .map(|i| {
                    MatrixQ::from_vec(n.dims[i], m.dims[i], v[offset[i]..offset[i + 1]].to_vec())
                })
                .collect()
        })
        .collect();
    Ok(HomSpace {
        dim: solutions.dim(),
        basis,
    })
}

/// Fixed-point data for every object: the complex X^{H_i}.
pub struct FixedPointData {
    pub complexes: Vec<ChainComplexQ>,
}

impl FixedPointData {
    pub fn compute(action: &ComplexAction, category: &OrbitCategory) -> Result<Self> {
        let complexes = (0..category.num_objects())
            .into_par_iter()
            .map(|i| fixed_subcomplex(action.complex(), &category.object_generators(i)))
            .collect::<Result<Vec<_>>>()?;
        Ok(FixedPointData { complexes })
    }

    /// The largest degree with cells anywhere.
    pub fn top_dim(&self) -> usize {
        self.complexes.iter().map(|c| c.num_dims()).max().unwrap_or(1).max(1) - 1
    }
}

/// The system G/H ↦ H_n(X^H; ℚ) for the moment-angle complex of the action.
pub fn homology_system(
    action: &ComplexAction,
    category: Arc<OrbitCategory>,
    n: usize,
) -> Result<CoefficientSystem> {
    let data = FixedPointData::compute(action, &category)?;
    homology_system_from(&data, category, n)
}

/// All homology systems H̲_0, …, H̲_top sharing one fixed-point computation.
pub fn homology_systems(
    action: &ComplexAction,
    category: Arc<OrbitCategory>,
) -> Result<Vec<CoefficientSystem>> {
    let data = FixedPointData::compute(action, &category)?;
    (0..=data.top_dim())
        .map(|n| homology_system_from(&data, category.clone(), n))
        .collect()
}

pub fn homology_system_from(
    data: &FixedPointData,
    category: Arc<OrbitCategory>,
    n: usize,
) -> Result<CoefficientSystem> {
    let bases: Vec<HomologyBasis> = data.complexes.par_iter().map(|c| c.homology(n)).collect();
    let dims: Vec<usize> = bases.iter().map(HomologyBasis::betti).collect();
    let group = category.group();
    let maps = category
        .morphisms()
        .par_iter()
        .map(|f| {
            // x ↦ g·x carries X^{H_dst} into X^{H_src}.
            let g = group.element(f.rep);
            induced_translation(
                &data.complexes[f.dst],
                &data.complexes[f.src],
                g,
                &bases[f.dst],
                &bases[f.src],
            )
        })
        .collect::<Result<Vec<_>>>()?;
    CoefficientSystem::new(category, dims, maps)
}

/// One structure map in the JSON format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapEntry {
    pub src: usize,
    pub dst: usize,
    /// Any element of the coset gH_dst, as an image array.
    pub coset: Perm,
    pub matrix: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SystemJson {
    pub group: PermGroup,
    pub dims: Vec<usize>,
    pub maps: Vec<MapEntry>,
}

impl CoefficientSystem {
    pub fn to_json(&self) -> SystemJson {
        let cat = &self.category;
        SystemJson {
            group: cat.group().clone(),
            dims: self.dims.clone(),
            maps: cat
                .morphisms()
                .iter()
                .enumerate()
                .map(|(id, f)| MapEntry {
                    src: f.src,
                    dst: f.dst,
                    coset: cat.group().element(f.rep).clone(),
                    matrix: self.maps[id].to_rows(),
                })
                .collect(),
        }
    }

    /// Reads a system over `category`, which must have been built from an
    /// equal group. Every morphism needs exactly one entry.
    pub fn from_json(raw: &SystemJson, category: Arc<OrbitCategory>) -> Result<Self> {
        if raw.group.elements() != category.group().elements() {
            return Err(Error::CategoryMismatch);
        }
        let mut maps: Vec<Option<MatrixQ>> = vec![None; category.num_morphisms()];
        for (k, e) in raw.maps.iter().enumerate() {
            let g = category.group().index_of(&e.coset).ok_or_else(|| {
                Error::Parse(format!("maps[{k}]: coset {} is not a group element", e.coset))
            })?;
            if e.src >= category.num_objects() || e.dst >= category.num_objects() {
                return Err(Error::Parse(format!("maps[{k}]: object index out of range")));
            }
            let id = category.find(e.src, e.dst, g).ok_or_else(|| {
                Error::Parse(format!(
                    "maps[{k}]: {} does not define a morphism {} -> {}",
                    e.coset, e.src, e.dst
                ))
            })?;
            if maps[id].is_some() {
                return Err(Error::Parse(format!("maps[{k}]: morphism listed twice")));
            }
            let cols = e.matrix.first().map_or(raw.dims.get(e.dst).copied().unwrap_or(0), Vec::len);
            maps[id] = Some(MatrixQ::from_rows(e.matrix.clone(), cols)?);
        }
        let maps = maps
            .into_iter()
            .enumerate()
            .map(|(id, m)| {
                m.map(|m| {
                    // Empty row lists lose the column count; restore it.
                    let f = category.morphism(id);
                    if m.rows() == 0 {
                        MatrixQ::zeros(0, raw.dims.get(f.dst).copied().unwrap_or(0))
                    } else {
                        m
                    }
                })
                .ok_or_else(|| {
                    let f = category.morphism(id);
                    Error::Parse(format!(
                        "no matrix for morphism {} -> {} with coset {}",
                        f.src,
                        f.dst,
                        category.group().element(f.rep)
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CoefficientSystem::new(category, raw.dims.clone(), maps)
    }
}

/// A fill-in-the-matrices template: the constant system's morphism list.
pub fn template(category: Arc<OrbitCategory>) -> SystemJson {
    CoefficientSystem::constant(category).to_json()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::validate_action;
    use crate::groups::parse_generators;
    use crate::simplicial::boundary;

    fn d8() -> PermGroup {
        PermGroup::closure(4, &parse_generators(4, "(0 1 2 3),(0 1)(2 3)").unwrap()).unwrap()
    }

    fn d8_cat() -> Arc<OrbitCategory> {
        Arc::new(OrbitCategory::new(&d8()).unwrap())
    }

    #[test]
    fn constant_and_zero() {
        let cat = d8_cat();
        let q = CoefficientSystem::constant(cat.clone());
        assert_eq!(q.dims(), &[1; 8]);
        q.validate().unwrap();
        CoefficientSystem::zero(cat.clone()).validate().unwrap();
        CoefficientSystem::free_point(cat.clone()).validate().unwrap();
        let triv = Arc::new(OrbitCategory::new(&PermGroup::trivial(2)).unwrap());
        assert_eq!(CoefficientSystem::constant(triv).dims(), &[1]);
    }

    #[test]
    fn sums_kernels_cokernels() {
        let cat = d8_cat();
        let q = Arc::new(CoefficientSystem::constant(cat.clone()));
        let sum = CoefficientSystem::direct_sum(&[&q, &q]).unwrap();
        assert_eq!(sum.dims(), &[2; 8]);
        sum.validate().unwrap();

        let id = SystemMorphism::identity(q.clone());
        let (k, _) = kernel_system(&id).unwrap();
        assert!(k.is_zero());

        // M̲ ↪ ℚ̲ and its cokernel.
        let m = Arc::new(CoefficientSystem::free_point(cat.clone()));
        let mut comps: Vec<MatrixQ> = (0..8).map(|i| MatrixQ::zeros(1, m.dim(i))).collect();
        comps[0] = MatrixQ::identity(1);
        let incl = SystemMorphism::new(m.clone(), q.clone(), comps).unwrap();
        let (c, proj) = cokernel_system(&incl).unwrap();
        assert_eq!(c.dims(), &[0, 1, 1, 1, 1, 1, 1, 1]);
        proj.validate().unwrap();
        assert!(incl.then(&proj).is_zero());
    }

    #[test]
    fn hom_identities() {
        let cat = d8_cat();
        let q = CoefficientSystem::constant(cat.clone());
        assert_eq!(hom_space(&q, &q).unwrap().dim, 1);
        let m = CoefficientSystem::free_point(cat.clone());
        assert_eq!(hom_space(&m, &m).unwrap().dim, 1);
        assert_eq!(hom_space(&m, &q).unwrap().dim, 1);
        // ℚ̲ → M̲ must vanish at G/e after restriction from G/G, where M̲ is 0.
        assert_eq!(hom_space(&q, &m).unwrap().dim, 0);
    }

    #[test]
    fn homology_systems_on_sphere() {
        let g = d8();
        let cat = Arc::new(OrbitCategory::new(&g).unwrap());
        let action = validate_action(&boundary(3).unwrap(), &g).unwrap();
        let hs = homology_systems(&action, cat.clone()).unwrap();
        assert_eq!(hs.len(), 4);
        let mut h0 = hs[0].dims().to_vec();
        h0.sort_unstable();
        assert_eq!(h0, vec![1, 1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(hs[3].dims(), &[1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(hs[2].total_dim(), 1);
        for h in &hs {
            h.validate().unwrap();
        }
    }

    #[test]
    fn json_round_trip() {
        let cat = d8_cat();
        let m = CoefficientSystem::free_point(cat.clone());
        let s = serde_json::to_string(&m.to_json()).unwrap();
        let raw: SystemJson = serde_json::from_str(&s).unwrap();
        let back = CoefficientSystem::from_json(&raw, cat.clone()).unwrap();
        assert_eq!(back.dims(), m.dims());
        assert_eq!(back.maps(), m.maps());
        let mut broken = raw.clone();
        broken.maps.pop();
        assert!(CoefficientSystem::from_json(&broken, cat).is_err());
    }
}
