//! Permutation actions on simplicial complexes: validation, automorphism
//! groups, strong quotients and the combinatorial fixed-point formula.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{Perm, PermGroup, Subgroup};
use crate::simplicial::{boundary, mask_of, SimplicialComplex};

/// Default vertex bound for [`aut_group`].
pub const DEFAULT_AUT_BOUND: usize = 10;

/// A group acting on a complex by vertex permutations that preserve faces.
#[derive(Clone, Debug)]
pub struct ComplexAction {
    complex: SimplicialComplex,
    group: PermGroup,
}

impl ComplexAction {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The action restricted to a subgroup (always valid).
    pub fn restrict(&self, h: &Subgroup) -> ComplexAction {
        ComplexAction {
            complex: self.complex.clone(),
            group: self.group.subgroup_group(h),
        }
    }
}

/// Checks that every generator of `group` maps faces of `complex` to faces.
pub fn validate_action(complex: &SimplicialComplex, group: &PermGroup) -> Result<ComplexAction> {
    if group.degree() != complex.num_vertices() {
        return Err(Error::DimensionMismatch(format!(
            "group of degree {} cannot act on a complex with {} vertices",
            group.degree(),
            complex.num_vertices()
        )));
    }
    for g in group.generators() {
        for face in complex.faces() {
            let mut image: Vec<usize> = face.iter().map(|&v| g.apply(v)).collect();
            image.sort_unstable();
            if !complex.is_face(&image) {
                return Err(Error::FaceNotPreserved {
                    perm: g.to_string(),
                    face: face.clone(),
                    image,
                });
            }
        }
    }
    Ok(ComplexAction {
        complex: complex.clone(),
        group: group.clone(),
    })
}

/// The full automorphism group of `complex`, refusing more than
/// [`DEFAULT_AUT_BOUND`] vertices.
pub fn aut_group(complex: &SimplicialComplex) -> Result<PermGroup> {
    aut_group_bounded(complex, DEFAULT_AUT_BOUND)
}

pub fn aut_group_bounded(complex: &SimplicialComplex, bound: usize) -> Result<PermGroup> {
    let n = complex.num_vertices();
    if n > bound {
        return Err(Error::TooManyVertices {
            what: "automorphism search",
            value: n,
            bound,
        });
    }
    let search = AutSearch::new(complex);
    // Generators from a stabilizer chain: for each level i and each
    // candidate image j of i, one automorphism fixing 0..i pointwise with
    // i ↦ j.
    let mut gens: Vec<Perm> = Vec::new();
    for i in 0..n {
        let prefix: Vec<usize> = (0..i).collect();
        for j in i + 1..n {
            let mut assignment = prefix.clone();
            assignment.push(j);
            if let Some(p) = search.extend(assignment) {
                if !gens.contains(&p) {
                    gens.push(p);
                }
            }
        }
    }
    PermGroup::closure(n, &gens)
}

struct AutSearch<'a> {
    complex: &'a SimplicialComplex,
    invariants: Vec<Vec<usize>>,
    /// Faces grouped by their largest vertex.
    faces_by_max: Vec<Vec<Vec<usize>>>,
}

impl<'a> AutSearch<'a> {
    fn new(complex: &'a SimplicialComplex) -> Self {
        let n = complex.num_vertices();
        let top = complex.faces().last().map_or(0, Vec::len);
        let mut invariants = vec![vec![0usize; top + 1]; n];
        let mut faces_by_max = vec![Vec::new(); n];
        for face in complex.faces() {
            for &v in face {
                invariants[v][face.len()] += 1;
            }
            if let Some(&m) = face.last() {
                faces_by_max[m].push(face.clone());
            }
        }
        AutSearch {
            complex,
            invariants,
            faces_by_max,
        }
    }

    fn consistent(&self, assignment: &[usize]) -> bool {
        let v = assignment.len() - 1;
        if self.invariants[v] != self.invariants[assignment[v]] {
            return false;
        }
        self.faces_by_max[v].iter().all(|face| {
            let image: Vec<usize> = face.iter().map(|&u| assignment[u]).collect();
            self.complex.is_face_mask(mask_of(&image))
        })
    }

    /// Depth-first completion of a partial vertex map to an automorphism.
    fn extend(&self, mut assignment: Vec<usize>) -> Option<Perm> {
        let n = self.complex.num_vertices();
        for k in 0..assignment.len() {
            if !self.consistent(&assignment[..=k]) {
                return None;
            }
        }
        let mut used = vec![false; n];
        for &a in &assignment {
            if used[a] {
                return None;
            }
            used[a] = true;
        }
        self.dfs(&mut assignment, &mut used)
    }

    fn dfs(&self, assignment: &mut Vec<usize>, used: &mut [bool]) -> Option<Perm> {
        let n = self.complex.num_vertices();
        if assignment.len() == n {
            // A face-preserving bijection of a finite complex is an automorphism.
            return Perm::new(assignment.clone()).ok();
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            assignment.push(cand);
            if self.consistent(assignment) {
                used[cand] = true;
                if let Some(p) = self.dfs(assignment, used) {
                    return Some(p);
                }
                used[cand] = false;
            }
            assignment.pop();
        }
        None
    }
}

/// The strong quotient K//G together with the orbit bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongQuotient {
    /// Vertex orbits, each sorted, ordered by least vertex.
    pub orbits: Vec<Vec<usize>>,
    /// Indices into `orbits` of the orbits that are faces of K (V_G); these
    /// are the vertices of the quotient, in this order.
    pub face_orbit_indices: Vec<usize>,
    pub quotient: SimplicialComplex,
    /// Number of orbits that are not faces (k_G).
    pub k: usize,
    /// Original vertex ↦ index of its orbit.
    pub vertex_map: Vec<usize>,
}

/// Vertex orbits of a group, sorted by least vertex.
pub fn vertex_orbits(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut label: Vec<usize> = (0..degree).collect();
    fn find(label: &mut [usize], v: usize) -> usize {
        let mut r = v;
        while label[r] != r {
            r = label[r];
        }
        label[v] = r;
        r
    }
    for g in gens {
        for v in 0..degree {
            let (a, b) = (find(&mut label, v), find(&mut label, g.apply(v)));
            if a != b {
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut root_to_orbit = vec![usize::MAX; degree];
    for v in 0..degree {
        let r = find(&mut label, v);
        if root_to_orbit[r] == usize::MAX {
            root_to_orbit[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[root_to_orbit[r]].push(v);
    }
    orbits
}

pub fn strong_quotient(action: &ComplexAction) -> StrongQuotient {
    let k = action.complex();
    let orbits = vertex_orbits(k.num_vertices(), action.group().generators());
    let mut vertex_map = vec![0; k.num_vertices()];
    for (i, o) in orbits.iter().enumerate() {
        for &v in o {
            vertex_map[v] = i;
        }
    }
    let face_orbit_indices: Vec<usize> = (0..orbits.len()).filter(|&i| k.is_face(&orbits[i])).collect();
    let mut quotient_index = vec![usize::MAX; orbits.len()];
    for (q, &i) in face_orbit_indices.iter().enumerate() {
        quotient_index[i] = q;
    }
    // q̂(σ): the orbits contained in σ.
    let mut faces = Vec::new();
    for face in k.faces() {
        let fm = mask_of(face);
        let contained: Vec<usize> = face_orbit_indices
            .iter()
            .filter(|&&i| {
                let om = mask_of(&orbits[i]);
                om & fm == om
            })
            .map(|&i| quotient_index[i])
            .collect();
        faces.push(contained);
    }
    let quotient = SimplicialComplex::new(face_orbit_indices.len(), &faces)
        .expect("quotient vertices are in range");
    StrongQuotient {
        k: orbits.len() - face_orbit_indices.len(),
        orbits,
        face_orbit_indices,
        quotient,
        vertex_map,
    }
}

/// The fixed-point formula Z(K;(X,A))^H = Z(K//H;(X,A)) × A^k, reported
/// structurally.
#[derive(Clone, Debug, Serialize)]
pub struct FixedPointShape {
    pub quotient: StrongQuotient,
    pub description: String,
    /// When K is the boundary of a simplex the fixed set is a sphere of this
    /// dimension.
    pub sphere: Option<usize>,
}

pub fn fixed_point_shape(action: &ComplexAction, h: &Subgroup) -> FixedPointShape {
    let restricted = action.restrict(h);
    let quotient = strong_quotient(&restricted);
    let k = action.complex();
    let is_boundary = k.num_vertices() >= 2
        && boundary(k.num_vertices() - 1).is_ok_and(|b| b == *k);
    let sphere = is_boundary.then(|| quotient.orbits.len().saturating_sub(1));
    let facets: Vec<String> = quotient
        .quotient
        .facets()
        .iter()
        .map(|f| format!("{f:?}"))
        .collect();
    let description = format!(
        "Z(K//H;(X,A)) x A^{} with K//H on {} vertices, facets [{}]",
        quotient.k,
        quotient.quotient.num_vertices(),
        facets.join(", ")
    );
    FixedPointShape {
        quotient,
        description,
        sphere,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_generators;
    use crate::simplicial::{ngon, star, trilinder};

    fn group(degree: usize, gens: &str) -> PermGroup {
        PermGroup::closure(degree, &parse_generators(degree, gens).unwrap()).unwrap()
    }

    #[test]
    fn validate_examples() {
        let b3 = boundary(3).unwrap();
        assert!(validate_action(&b3, &PermGroup::symmetric(4).unwrap()).is_ok());
        assert!(validate_action(&star(), &group(4, "(1 2 3)")).is_ok());
        match validate_action(&ngon(4).unwrap(), &group(4, "(0 1)")) {
            Err(Error::FaceNotPreserved { face, image, .. }) => {
                assert!(ngon(4).unwrap().is_face(&face));
                assert!(!ngon(4).unwrap().is_face(&image));
            }
            other => panic!("expected a witness, got {other:?}"),
        }
        assert!(validate_action(&b3, &group(3, "(0 1)")).is_err());
    }

    #[test]
    fn aut_examples() {
        assert_eq!(aut_group(&boundary(3).unwrap()).unwrap().order(), 24);
        for n in 3..=7 {
            assert_eq!(aut_group(&ngon(n).unwrap()).unwrap().order(), 2 * n);
        }
        // E8 Dynkin diagram: a path 0-1-2-3-4-5-6 with 7 attached to 2.
        let e8 = SimplicialComplex::new(
            8,
            &[
                vec![0, 1],
                vec![1, 2],
                vec![2, 3],
                vec![3, 4],
                vec![4, 5],
                vec![5, 6],
                vec![2, 7],
            ],
        )
        .unwrap();
        assert_eq!(aut_group(&e8).unwrap().order(), 1);
        let big = SimplicialComplex::new(11, &[]).unwrap();
        assert!(matches!(aut_group(&big), Err(Error::TooManyVertices { .. })));
    }

    #[test]
    fn quotient_examples() {
        let a = validate_action(&star(), &group(4, "(1 2 3)")).unwrap();
        let q = strong_quotient(&a);
        assert_eq!(q.k, 1);
        assert_eq!(q.quotient.num_vertices(), 1);
        assert_eq!(q.quotient.facets(), vec![vec![0]]);

        let a = validate_action(&trilinder(), &group(6, "(0 1 2)(3 4 5)")).unwrap();
        let q = strong_quotient(&a);
        assert_eq!(q.k, 0);
        assert_eq!(q.quotient, boundary(1).unwrap());

        let a = validate_action(&boundary(3).unwrap(), &PermGroup::symmetric(4).unwrap()).unwrap();
        let q = strong_quotient(&a);
        assert_eq!(q.k, 1);
        assert_eq!(q.quotient.num_vertices(), 0);
    }

    #[test]
    fn sphere_labels() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let a = validate_action(&boundary(3).unwrap(), &s4).unwrap();
        let sub = |c: &str| s4.subgroup_from_perms(&parse_generators(4, c).unwrap()).unwrap();
        assert_eq!(fixed_point_shape(&a, &sub("(0 2)(1 3)")).sphere, Some(1));
        assert_eq!(fixed_point_shape(&a, &sub("(0 1 2)")).sphere, Some(1));
        assert_eq!(fixed_point_shape(&a, &s4.trivial_subgroup()).sphere, Some(3));
        assert_eq!(fixed_point_shape(&a, &s4.whole()).sphere, Some(0));
    }
}
