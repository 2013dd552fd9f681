//! Doman's injective coefficient systems I(V_H), injective envelopes and
//! injective resolutions over ℚ.
//!
//! I(V_H)(G/K) = Hom_{ℚWH}(ℚ[(G/K)^H], V_H), where (G/K)^H is identified
//! with the set of G-maps G/H → G/K and WH acts by precomposition with the
//! automorphisms of G/H.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::coeffsys::{cokernel_system, CoefficientSystem, SystemMorphism};
use crate::error::{Error, Result};
use crate::orbitcat::OrbitCategory;
use crate::qlinalg::{intersect, kernel, MatrixQ, Rational, SubspaceQ};

/// A representation of WH = N(H)/H, one matrix per Weyl coset
/// representative in the order of `SubgroupClass::weyl_coset_reps`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylRep {
    pub object: usize,
    pub dim: usize,
    pub matrices: Vec<MatrixQ>,
}

impl WeylRep {
    pub fn trivial(category: &OrbitCategory, object: usize, dim: usize) -> Self {
        let w = category.class(object).weyl_coset_reps.len();
        WeylRep {
            object,
            dim,
            matrices: vec![MatrixQ::identity(dim); w],
        }
    }

    /// Checks ρ(n₁n₂) = ρ(n₁)ρ(n₂) and ρ(e) = I.
    pub fn validate(&self, category: &OrbitCategory) -> Result<()> {
        let class = category.class(self.object);
        let reps = &class.weyl_coset_reps;
        if self.matrices.len() != reps.len()
            || self.matrices.iter().any(|m| m.shape() != (self.dim, self.dim))
        {
            return Err(Error::DimensionMismatch(format!(
                "Weyl representation at object {} needs {} matrices of size {}",
                self.object,
                reps.len(),
                self.dim
            )));
        }
        if !self.matrices[0].is_identity() {
            return Err(Error::NotAFunctor("Weyl identity not sent to the identity".into()));
        }
        let group = category.group();
        for (a, &n1) in reps.iter().enumerate() {
            for (b, &n2) in reps.iter().enumerate() {
                let key = group.coset_key(group.mul(n1, n2), &class.representative);
                let c = reps.binary_search(&key).map_err(|_| {
                    Error::Internal("Weyl coset representatives are not closed".into())
                })?;
                if self.matrices[a].mul(&self.matrices[b]) != self.matrices[c] {
                    return Err(Error::NotAFunctor(format!(
                        "Weyl representation at object {} is not multiplicative",
                        self.object
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The H-fixed cosets (G/K)^H as morphism ids G/H → G/K, and the WH action
/// on them: `action[w][x]` is the position of n_w·x.
pub fn h_fixed_cosets(category: &OrbitCategory, k: usize, h: usize) -> (Vec<usize>, Vec<Vec<usize>>) {
    let cosets = category.hom(h, k).to_vec();
    let action = category
        .class(h)
        .weyl_coset_reps
        .iter()
        .map(|&n| {
            let w = category.find(h, h, n).expect("normalizer elements give automorphisms");
            cosets
                .iter()
                .map(|&x| {
                    let y = category.compose(w, x);
                    cosets.iter().position(|&c| c == y).expect("hom-sets are closed")
                })
                .collect()
        })
        .collect();
    (cosets, action)
}

/// I(V)(G/K) as a subspace of V^{(G/K)^H}: equivariant functions, stored
/// coset by coset.
fn equivariant_functions(category: &OrbitCategory, rep: &WeylRep, k: usize) -> (Vec<usize>, SubspaceQ) {
    let (cosets, action) = h_fixed_cosets(category, k, rep.object);
    let d = rep.dim;
    let n = cosets.len() * d;
    // F(n·x) − ρ(n)F(x) = 0.
    let mut rows = Vec::new();
    for (w, perm) in action.iter().enumerate() {
        let rho = &rep.matrices[w];
        for (x, &nx) in perm.iter().enumerate() {
            for a in 0..d {
                let mut row = vec![Rational::zero(); n];
                row[nx * d + a] += &Rational::one();
                for b in 0..d {
                    let r = rho.get(a, b);
                    if !r.is_zero() {
                        row[x * d + b] -= r;
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let space = if rows.is_empty() {
        SubspaceQ::full(n)
    } else {
        kernel(&MatrixQ::from_rows(rows, n).expect("rows have the ambient length"))
    };
    (cosets, space)
}

/// A realized injective: the system together with, at each object, the
/// basis of equivariant functions it is written in.
#[derive(Clone, Debug)]
pub struct RealizedInjective {
    pub rep: WeylRep,
    pub system: CoefficientSystem,
    cosets: Vec<Vec<usize>>,
    spaces: Vec<SubspaceQ>,
}

/// Builds the coefficient system I(V_H).
pub fn realize_injective(category: Arc<OrbitCategory>, rep: &WeylRep) -> Result<RealizedInjective> {
    rep.validate(&category)?;
    let objects = category.num_objects();
    let (cosets, spaces): (Vec<Vec<usize>>, Vec<SubspaceQ>) = (0..objects)
        .into_par_iter()
        .map(|k| equivariant_functions(&category, rep, k))
        .unzip();
    let d = rep.dim;
    let dims: Vec<usize> = spaces.iter().map(SubspaceQ::dim).collect();
    let maps = category
        .morphisms()
        .iter()
        .enumerate()
        .map(|(id, psi)| {
            let (k, k2) = (psi.src, psi.dst);
            let mut m = MatrixQ::zeros(dims[k], dims[k2]);
            // Target coset of ψ∘x for each x ∈ (G/K)^H.
            let pushed: Vec<usize> = cosets[k]
                .iter()
                .map(|&x| {
                    let y = category.compose(x, id);
                    cosets[k2].iter().position(|&c| c == y).expect("hom-sets are closed")
                })
                .collect();
            for c in 0..dims[k2] {
                let f = spaces[k2].basis().row(c);
                let mut g = vec![Rational::zero(); cosets[k].len() * d];
                for (x, &y) in pushed.iter().enumerate() {
                    g[x * d..(x + 1) * d].clone_from_slice(&f[y * d..(y + 1) * d]);
                }
                let coords = spaces[k]
                    .coordinates(&g)
                    .ok_or_else(|| Error::Internal("precomposition left the equivariant functions".into()))?;
                for (r, v) in coords.into_iter().enumerate() {
                    m.set(r, c, v);
                }
            }
            Ok(m)
        })
        .collect::<Result<Vec<_>>>()?;
    let system = CoefficientSystem::new(category, dims, maps)?;
    Ok(RealizedInjective {
        rep: rep.clone(),
        system,
        cosets,
        spaces,
    })
}

/// V_H inside M(G/H) with its Weyl action.
#[derive(Clone, Debug)]
pub struct SoclePart {
    pub rep: WeylRep,
    /// Basis of V_H (rows, RREF) inside M(G/H).
    pub space: SubspaceQ,
}

/// V_H = ⋂ ker M(φ) over all φ: G/K → G/H with |K| < |H|.
pub fn socle_parts(m: &CoefficientSystem) -> Vec<SoclePart> {
    let cat = m.category();
    (0..cat.num_objects())
        .map(|h| {
            let d = m.dim(h);
            let kernels: Vec<SubspaceQ> = (0..cat.num_objects())
                .filter(|&k| cat.object_order(k) < cat.object_order(h))
                .flat_map(|k| cat.hom(k, h).iter().map(|&f| kernel(m.map(f))))
                .collect();
            let space = intersect(&kernels, d).expect("kernels live in M(G/H)");
            let matrices = m
                .weyl_matrices(h)
                .iter()
                .map(|w| restrict(w, &space))
                .collect();
            SoclePart {
                rep: WeylRep {
                    object: h,
                    dim: space.dim(),
                    matrices,
                },
                space,
            }
        })
        .collect()
}

/// Matrix of an endomorphism preserving `space`, in its RREF basis.
fn restrict(endo: &MatrixQ, space: &SubspaceQ) -> MatrixQ {
    let k = space.dim();
    let mut out = MatrixQ::zeros(k, k);
    for c in 0..k {
        let image = endo.mul_vec(space.basis().row(c));
        let coords = space
            .coordinates(&image)
            .expect("the socle is stable under the Weyl action");
        for (r, v) in coords.into_iter().enumerate() {
            out.set(r, c, v);
        }
    }
    out
}

/// The Weyl-averaged projection M(G/H) → V_H.
fn equivariant_projection(m: &CoefficientSystem, part: &SoclePart) -> MatrixQ {
    let h = part.rep.object;
    let cat = m.category();
    let group = cat.group();
    let class = cat.class(h);
    let d = m.dim(h);
    let k = part.space.dim();
    // Pivot projection: identity on V_H in its RREF coordinates.
    let mut p0 = MatrixQ::zeros(k, d);
    for (r, &p) in part.space.pivots().iter().enumerate() {
        p0.set(r, p, Rational::one());
    }
    let weyl = m.weyl_matrices(h);
    let reps = &class.weyl_coset_reps;
    let mut sum = MatrixQ::zeros(k, d);
    for (w, &n) in reps.iter().enumerate() {
        let inv_key = group.coset_key(group.inv(n), &class.representative);
        let inv = reps.binary_search(&inv_key).expect("Weyl representatives are closed");
        sum = sum.add(&part.rep.matrices[w].mul(&p0).mul(&weyl[inv]));
    }
    sum.scale(&Rational::new(1, reps.len() as i64))
}

/// An injective envelope M ↪ ⊕_H I(V_H).
#[derive(Clone, Debug)]
pub struct Envelope {
    pub atoms: Vec<RealizedInjective>,
    pub embedding: SystemMorphism,
}

impl Envelope {
    pub fn system(&self) -> &Arc<CoefficientSystem> {
        &self.embedding.target
    }
}

pub fn injective_envelope(m: &Arc<CoefficientSystem>) -> Result<Envelope> {
    let cat = m.category().clone();
    let parts: Vec<SoclePart> = socle_parts(m).into_iter().filter(|p| p.rep.dim > 0).collect();
    let atoms = parts
        .iter()
        .map(|p| realize_injective(cat.clone(), &p.rep))
        .collect::<Result<Vec<_>>>()?;
    let target = if atoms.is_empty() {
        CoefficientSystem::zero(cat.clone())
    } else {
        let systems: Vec<&CoefficientSystem> = atoms.iter().map(|a| &a.system).collect();
        CoefficientSystem::direct_sum(&systems)?
    };
    let target = Arc::new(target);
    let objects = cat.num_objects();
    let mut components = Vec::with_capacity(objects);
    for k in 0..objects {
        let mut blocks = Vec::with_capacity(atoms.len());
        for (part, atom) in parts.iter().zip(&atoms) {
            let p = equivariant_projection(m, part);
            let d = part.rep.dim;
            let cosets = &atom.cosets[k];
            let mut block = MatrixQ::zeros(atom.system.dim(k), m.dim(k));
            for col in 0..m.dim(k) {
                let x = (0..m.dim(k))
                    .map(|r| if r == col { Rational::one() } else { Rational::zero() })
                    .collect::<Vec<_>>();
                let mut f = vec![Rational::zero(); cosets.len() * d];
                for (pos, &phi) in cosets.iter().enumerate() {
                    let value = p.mul_vec(&m.map(phi).mul_vec(&x));
                    f[pos * d..(pos + 1) * d].clone_from_slice(&value);
                }
                let coords = atom.spaces[k].coordinates(&f).ok_or_else(|| {
                    Error::EnvelopeFailed(format!("embedding at object {k} is not equivariant"))
                })?;
                for (r, v) in coords.into_iter().enumerate() {
                    block.set(r, col, v);
                }
            }
            blocks.push(block);
        }
        let mut stacked = MatrixQ::zeros(0, m.dim(k));
        for b in &blocks {
            stacked = stacked.vstack(b);
        }
        if stacked.rank() != m.dim(k) {
            return Err(Error::EnvelopeFailed(format!(
                "embedding is not injective at object {k}"
            )));
        }
        components.push(stacked);
    }
    let embedding = SystemMorphism::new(m.clone(), target, components)?;
    Ok(Envelope { atoms, embedding })
}

/// An exact sequence 0 → M → I⁰ → I¹ → … → I^{ℓ−1} → 0.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub source: Arc<CoefficientSystem>,
    pub terms: Vec<Arc<CoefficientSystem>>,
    /// `maps[0]`: M → I⁰, `maps[k]`: I^{k−1} → I^k.
    pub maps: Vec<SystemMorphism>,
    /// The atoms (H, V_H) of each term.
    pub atoms: Vec<Vec<WeylRep>>,
}

impl Resolution {
    /// Number of injective terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Objectwise rank check of exactness, including d∘d = 0.
    pub fn is_exact(&self) -> bool {
        let objects = self.source.dims().len();
        for i in 0..objects {
            let ranks: Vec<usize> = self.maps.iter().map(|d| d.components[i].rank()).collect();
            if ranks.first().copied().unwrap_or(0) != self.source.dim(i) {
                return false;
            }
            for k in 0..self.terms.len() {
                let next = ranks.get(k + 1).copied().unwrap_or(0);
                if ranks[k] + next != self.terms[k].dim(i) {
                    return false;
                }
                if let Some(d) = self.maps.get(k + 1) {
                    if !d.components[i].mul(&self.maps[k].components[i]).is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Resolves M by iterated envelopes of cokernels; more than `max_len`
/// terms is an error.
pub fn injective_resolution(m: &Arc<CoefficientSystem>, max_len: usize) -> Result<Resolution> {
    let mut res = Resolution {
        source: m.clone(),
        terms: Vec::new(),
        maps: Vec::new(),
        atoms: Vec::new(),
    };
    if m.is_zero() {
        return Ok(res);
    }
    let env = injective_envelope(m)?;
    res.atoms.push(env.atoms.iter().map(|a| a.rep.clone()).collect());
    res.terms.push(env.system().clone());
    res.maps.push(env.embedding);
    loop {
        let (coker, projection) = cokernel_system(res.maps.last().expect("nonempty"))?;
        if coker.is_zero() {
            break;
        }
        if res.terms.len() == max_len {
            return Err(Error::ResolutionTooLong { max_len });
        }
        let coker = Arc::new(coker);
        let env = injective_envelope(&coker)?;
        let projection = SystemMorphism {
            target: coker,
            ..projection
        };
        let d = projection.then(&env.embedding);
        res.atoms.push(env.atoms.iter().map(|a| a.rep.clone()).collect());
        res.terms.push(env.system().clone());
        res.maps.push(d);
    }
    if !res.is_exact() {
        return Err(Error::Internal("injective resolution is not exact".into()));
    }
    Ok(res)
}
