#![allow(dead_code)]

use std::sync::Arc;

use zk_core::action::{validate_action, ComplexAction};
use zk_core::coeffsys::{
    cokernel_system, hom_space, homology_systems, image_system, kernel_system, CoefficientSystem,
    SystemMorphism,
};
use zk_core::doman::{realize_injective, WeylRep};
use zk_core::groups::{parse_generators, PermGroup};
use zk_core::orbitcat::OrbitCategory;
use zk_core::bredon::{bredon_cochain, equivariant_cells};
use zk_core::qlinalg::{kernel, MatrixQ, Rational, SubspaceQ};
use zk_core::zcomplex::triangulate;
use zk_core::simplicial::boundary;

pub const D8: &str = "(0 1 2 3),(0 1)(2 3)";
pub const S4: &str = "(0 1),(0 1 2 3)";

pub fn group(degree: usize, gens: &str) -> PermGroup {
    PermGroup::closure(degree, &parse_generators(degree, gens).unwrap()).unwrap()
}

/// The action on ∂Δ³ and its orbit category.
pub fn sphere_setup(gens: &str) -> (ComplexAction, Arc<OrbitCategory>) {
    let g = group(4, gens);
    let cat = Arc::new(OrbitCategory::new(&g).unwrap());
    (validate_action(&boundary(3).unwrap(), &g).unwrap(), cat)
}

/// Building blocks for random systems: ℚ̲, M̲, 0, the homology systems of
/// ∂Δ³ and the trivial-representation injectives.
pub fn pool(action: &ComplexAction, cat: &Arc<OrbitCategory>) -> Vec<Arc<CoefficientSystem>> {
    let mut out = vec![
        CoefficientSystem::constant(cat.clone()),
        CoefficientSystem::free_point(cat.clone()),
        CoefficientSystem::zero(cat.clone()),
    ];
    out.extend(homology_systems(action, cat.clone()).unwrap());
    for i in 0..cat.num_objects() {
        out.push(realize_injective(cat.clone(), &WeylRep::trivial(cat, i, 1)).unwrap().system);
    }
    out.into_iter().map(Arc::new).collect()
}

/// A random natural transformation a → b from integer combinations of a
/// Hom basis.
pub fn random_morphism(
    a: &Arc<CoefficientSystem>,
    b: &Arc<CoefficientSystem>,
    coeffs: &[i64],
) -> SystemMorphism {
    let space = hom_space(a, b).unwrap();
    let objects = a.dims().len();
    let mut comps: Vec<MatrixQ> = (0..objects).map(|i| MatrixQ::zeros(b.dim(i), a.dim(i))).collect();
    for (basis, &c) in space.basis.iter().zip(coeffs.iter().cycle()) {
        for (comp, part) in comps.iter_mut().zip(basis) {
            *comp = comp.add(&part.scale(&Rational::from_integer(c)));
        }
    }
    SystemMorphism::new(a.clone(), b.clone(), comps).unwrap()
}

/// A system obtained from the pool by one kernel / cokernel / image / sum.
pub fn random_system(
    pool: &[Arc<CoefficientSystem>],
    a: usize,
    b: usize,
    op: usize,
    coeffs: &[i64],
) -> Arc<CoefficientSystem> {
    let (a, b) = (&pool[a % pool.len()], &pool[b % pool.len()]);
    let phi = random_morphism(a, b, coeffs);
    let system = match op % 4 {
        0 => kernel_system(&phi).unwrap().0,
        1 => cokernel_system(&phi).unwrap().0,
        2 => image_system(&phi).unwrap().0,
        _ => CoefficientSystem::direct_sum(&[a, b]).unwrap(),
    };
    Arc::new(system)
}

/// The space of natural transformations C̲_n → M solved directly: one
/// unknown matrix per object on the H-fixed n-cells, constrained by every
/// morphism of the orbit category. Returns the solution space together
/// with the fixed cells and the unknown offsets.
struct Naive {
    fixed: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    space: SubspaceQ,
}

fn fixed_cells(action: &ComplexAction, cat: &OrbitCategory, d: usize) -> Vec<Vec<usize>> {
    let z = triangulate(action.complex()).unwrap();
    (0..cat.num_objects())
        .map(|i| {
            let gens = cat.object_generators(i);
            (0..z.num_cells(d))
                .filter(|&c| gens.iter().all(|g| z.cells(d)[c].is_fixed_by(g)))
                .collect()
        })
        .collect()
}

fn naive(action: &ComplexAction, m: &CoefficientSystem, d: usize) -> Naive {
    let cat = m.category();
    let z = triangulate(action.complex()).unwrap();
    let fixed = fixed_cells(action, cat, d);
    let objects = cat.num_objects();
    let mut offsets = vec![0; objects + 1];
    for i in 0..objects {
        offsets[i + 1] = offsets[i] + m.dim(i) * fixed[i].len();
    }
    let n = offsets[objects];
    let mut rows = Vec::new();
    // η_j(g·c) = M(f)·η_i(c) for f: G/H_j → G/H_i with coset g.
    for (id, f) in cat.morphisms().iter().enumerate() {
        let g = cat.group().element(f.rep);
        for (ci, &c) in fixed[f.dst].iter().enumerate() {
            let image = z.cell_index(&z.cells(d)[c].translate(g)).unwrap();
            let cj = fixed[f.src].iter().position(|&x| x == image).expect("translates stay fixed");
            for a in 0..m.dim(f.src) {
                let mut row = vec![Rational::zero(); n];
                row[offsets[f.src] + a * fixed[f.src].len() + cj] += &Rational::one();
                for b in 0..m.dim(f.dst) {
                    let x = m.map(id).get(a, b);
                    if !x.is_zero() {
                        row[offsets[f.dst] + b * fixed[f.dst].len() + ci] -= x;
                    }
                }
                rows.push(row);
            }
        }
    }
    let space = if rows.is_empty() {
        SubspaceQ::full(n)
    } else {
        kernel(&MatrixQ::from_rows(rows, n).unwrap())
    };
    Naive { fixed, offsets, space }
}

/// Compares the orbit-sum cochains with the naive ones: equal dimensions, the
/// evaluation map lands in the naive space injectively, and it intertwines
/// the differentials.
pub fn compare(action: &ComplexAction, m: &CoefficientSystem) -> Result<(), String> {
    let cat = m.category();
    let cells = equivariant_cells(action, cat).map_err(|e| e.to_string())?;
    let cochain = bredon_cochain(&cells, m).map_err(|e| e.to_string())?;
    let z = &cells.ambient;
    let objects = cat.num_objects();
    let eval = |d: usize, nv: &Naive| -> MatrixQ {
        let n = *nv.offsets.last().unwrap();
        let mut e = MatrixQ::zeros(n, cochain.dims[d]);
        for i in 0..objects {
            for (pos, &c) in nv.fixed[i].iter().enumerate() {
                let (o, g) = cells.locate[d][c];
                let j = cells.orbits[d][o].object;
                let f = cat.find(i, j, g).expect("fixed cells map to orbits");
                let block = m.map(f);
                for a in 0..m.dim(i) {
                    for b in 0..m.dim(j) {
                        e.set(nv.offsets[i] + a * nv.fixed[i].len() + pos, cochain.offsets[d][o] + b, block.get(a, b).clone());
                    }
                }
            }
        }
        e
    };
    let naives: Vec<Naive> = (0..cells.num_dims()).map(|d| naive(action, m, d)).collect();
    let evals: Vec<MatrixQ> = (0..cells.num_dims()).map(|d| eval(d, &naives[d])).collect();
    for d in 0..cells.num_dims() {
        let nv = &naives[d];
        if nv.space.dim() != cochain.dims[d] || evals[d].rank() != cochain.dims[d] {
            return Err(format!(
                "degree {d}: naive dimension {}, orbit-sum dimension {}",
                nv.space.dim(),
                cochain.dims[d]
            ));
        }
        if !evals[d].transpose().row_vectors().iter().all(|col| nv.space.contains(col)) {
            return Err(format!("degree {d}: evaluation is not natural"));
        }
        if d + 1 < cells.num_dims() {
            // (δη)_K = η_K ∘ ∂ restricted to H_K-fixed cells.
            let next = &naives[d + 1];
            let naive_delta = |v: &[Rational]| -> Vec<Rational> {
                let mut out = vec![Rational::zero(); *next.offsets.last().unwrap()];
                for i in 0..objects {
                    for (pos, &t) in next.fixed[i].iter().enumerate() {
                        for (face, sign) in z.cells(d + 1)[t].faces() {
                            let f = z.cell_index(&face).unwrap();
                            let fp = nv.fixed[i].iter().position(|&x| x == f).unwrap();
                            for a in 0..m.dim(i) {
                                let x = &v[nv.offsets[i] + a * nv.fixed[i].len() + fp];
                                let slot = &mut out[next.offsets[i] + a * next.fixed[i].len() + pos];
                                *slot = if sign > 0 { &*slot + x } else { &*slot - x };
                            }
                        }
                    }
                }
                out
            };
            let lhs = evals[d + 1].mul(&cochain.differentials[d]);
            for (col, v) in evals[d].transpose().row_vectors().iter().enumerate() {
                if lhs.column(col) != naive_delta(v) {
                    return Err(format!("degree {d}: differentials disagree"));
                }
            }
        }
    }
    Ok(())
}
