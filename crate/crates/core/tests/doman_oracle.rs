mod common;

use std::collections::BTreeSet;
use std::sync::{Arc, LazyLock};

use proptest::prelude::*;
use zk_core::action::ComplexAction;
use zk_core::coeffsys::{homology_systems, CoefficientSystem};
use zk_core::doman::{injective_envelope, injective_resolution, realize_injective, socle_parts, WeylRep};
use zk_core::groups::PermGroup;
use zk_core::orbitcat::OrbitCategory;
use zk_core::qlinalg::{intersect, kernel, MatrixQ, SubspaceQ};

use common::*;

struct Setup {
    action: ComplexAction,
    cat: Arc<OrbitCategory>,
    pool: Vec<Arc<CoefficientSystem>>,
}

fn setup(gens: &str) -> Setup {
    let (action, cat) = sphere_setup(gens);
    let pool = pool(&action, &cat);
    Setup { action, cat, pool }
}

static D8_SETUP: LazyLock<Setup> = LazyLock::new(|| setup(D8));
static S4_SETUP: LazyLock<Setup> = LazyLock::new(|| setup(S4));

/// dim Hom_{WH}(ℚ[(G/K)^H], V) = Σ over WH-orbits x of dim V^{Stab(x)},
/// with the cosets enumerated directly as sets of group elements.
fn orbit_count_dim(g: &PermGroup, cat: &OrbitCategory, rep: &WeylRep, k: usize) -> usize {
    let h = cat.subgroup(rep.object);
    let kk = cat.subgroup(k);
    let cosets: BTreeSet<Vec<usize>> = (0..g.order())
        .map(|x| {
            let mut c: Vec<usize> = kk.elements().iter().map(|&y| g.mul(x, y)).collect();
            c.sort_unstable();
            c
        })
        .collect();
    let translate = |n: usize, c: &Vec<usize>| {
        let mut out: Vec<usize> = c.iter().map(|&x| g.mul(n, x)).collect();
        out.sort_unstable();
        out
    };
    let fixed: Vec<Vec<usize>> = cosets
        .into_iter()
        .filter(|c| h.elements().iter().all(|&x| translate(x, c) == *c))
        .collect();
    let weyl = &cat.class(rep.object).weyl_coset_reps;
    let mut seen = BTreeSet::new();
    let mut total = 0;
    for c in &fixed {
        if seen.contains(c) {
            continue;
        }
        for &n in weyl {
            seen.insert(translate(n, c));
        }
        let invariants: Vec<SubspaceQ> = weyl
            .iter()
            .enumerate()
            .filter(|&(_, &n)| translate(n, c) == *c)
            .map(|(w, _)| kernel(&rep.matrices[w].sub(&MatrixQ::identity(rep.dim))))
            .collect();
        total += intersect(&invariants, rep.dim).unwrap().dim();
    }
    total
}

fn check_atoms(s: &Setup) {
    let g = s.cat.group();
    let mut reps: Vec<WeylRep> = (0..s.cat.num_objects())
        .map(|i| WeylRep::trivial(&s.cat, i, 1))
        .collect();
    // Nontrivial Weyl representations: the homology systems evaluated at each object.
    for h in homology_systems(&s.action, s.cat.clone()).unwrap() {
        for i in 0..s.cat.num_objects() {
            if h.dim(i) > 0 {
                reps.push(WeylRep {
                    object: i,
                    dim: h.dim(i),
                    matrices: h.weyl_matrices(i),
                });
            }
        }
    }
    for rep in &reps {
        let atom = realize_injective(s.cat.clone(), rep).unwrap();
        atom.system.validate().unwrap();
        for k in 0..s.cat.num_objects() {
            assert_eq!(
                atom.system.dim(k),
                orbit_count_dim(g, &s.cat, rep, k),
                "atom at {} (dim {}) evaluated at {k}",
                rep.object,
                rep.dim
            );
        }
    }
}

#[test]
fn atom_dimensions_match_orbit_counts_d8() {
    check_atoms(&D8_SETUP);
}

#[test]
fn atom_dimensions_match_orbit_counts_s4() {
    check_atoms(&S4_SETUP);
}

#[test]
fn free_point_resolution_over_d8() {
    let s = &*D8_SETUP;
    let m = Arc::new(CoefficientSystem::free_point(s.cat.clone()));
    let res = injective_resolution(&m, 4).unwrap();
    assert!(res.is_exact());
    assert_eq!(res.len(), 3);
    assert_eq!(res.terms[0].dims(), CoefficientSystem::constant(s.cat.clone()).dims());
    // Euler characteristic objectwise: Σ (−1)^p dim I^p = dim M.
    for i in 0..s.cat.num_objects() {
        let chi: i64 = res
            .terms
            .iter()
            .enumerate()
            .map(|(p, t)| if p % 2 == 0 { t.dim(i) as i64 } else { -(t.dim(i) as i64) })
            .sum();
        assert_eq!(chi, m.dim(i) as i64);
    }
}

fn socle_dims(m: &CoefficientSystem) -> Vec<usize> {
    socle_parts(m).iter().map(|p| p.rep.dim).collect()
}

fn check_random(s: &Setup, a: usize, b: usize, op: usize, coeffs: &[i64]) -> Result<(), TestCaseError> {
    let m = random_system(&s.pool, a, b, op, coeffs);
    m.validate().unwrap();
    let env = injective_envelope(&m).unwrap();
    env.embedding.validate().unwrap();
    prop_assert!(env.embedding.is_injective());
    // An envelope is an essential extension: it has the same socle.
    prop_assert_eq!(socle_dims(env.system()), socle_dims(&m));
    let l = s.cat.group().longest_chain_length();
    let res = injective_resolution(&m, l).unwrap();
    prop_assert!(res.is_exact());
    for t in &res.terms {
        t.validate().unwrap();
    }
    for d in &res.maps {
        d.validate().unwrap();
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_resolutions_d8(a in 0usize..64, b in 0usize..64, op in 0usize..4,
                             coeffs in prop::collection::vec(-2i64..=2, 1..6)) {
        check_random(&D8_SETUP, a, b, op, &coeffs)?;
    }

    #[test]
    fn random_resolutions_s4(a in 0usize..64, b in 0usize..64, op in 0usize..4,
                             coeffs in prop::collection::vec(-2i64..=2, 1..6)) {
        check_random(&S4_SETUP, a, b, op, &coeffs)?;
    }
}
