//! The reduced orbit category of a finite group, materialized with every
//! morphism, and the path-algebra side of the picture.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::groups::{Perm, PermGroup, Subgroup, SubgroupClass, DEFAULT_SUBGROUP_BOUND};

/// A G-map G/H_src → G/H_dst, eH_src ↦ g·H_dst, where `rep` is the least
/// element index of the coset gH_dst.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub src: usize,
    pub dst: usize,
    pub rep: usize,
}

/// One object per conjugacy class of subgroups, in the order of
/// [`PermGroup::subgroup_classes`]; object 0 is G/{e}, the last is G/G.
#[derive(Debug)]
pub struct OrbitCategory {
    group: PermGroup,
    classes: Vec<SubgroupClass>,
    morphisms: Vec<Morphism>,
    hom: Vec<Vec<Vec<usize>>>,
    lookup: HashMap<(usize, usize, usize), usize>,
    identities: Vec<usize>,
    composition: HashMap<(usize, usize), usize>,
}

impl OrbitCategory {
    pub fn new(group: &PermGroup) -> Result<Self> {
        Self::with_bound(group, DEFAULT_SUBGROUP_BOUND)
    }

    pub fn with_bound(group: &PermGroup, bound: usize) -> Result<Self> {
        let classes = group.subgroup_classes_bounded(bound)?;
        let n = classes.len();
        let mut morphisms = Vec::new();
        let mut hom = vec![vec![Vec::new(); n]; n];
        let mut lookup = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                let reps = group.subconjugators(&classes[i].representative, &classes[j].representative);
                for rep in reps {
                    let id = morphisms.len();
                    morphisms.push(Morphism { src: i, dst: j, rep });
                    hom[i][j].push(id);
                    lookup.insert((i, j, rep), id);
                }
            }
        }
        // The identity coset has least element the identity (index 0).
        let identities = (0..n).map(|i| lookup[&(i, i, 0)]).collect();
        let mut cat = OrbitCategory {
            group: group.clone(),
            classes,
            morphisms,
            hom,
            lookup,
            identities,
            composition: HashMap::new(),
        };
        let mut composition = HashMap::new();
        for (f, mf) in cat.morphisms.iter().enumerate() {
            for k in 0..n {
                for &g in &cat.hom[mf.dst][k] {
                    let rep = cat.group.mul(mf.rep, cat.morphisms[g].rep);
                    let h = cat
                        .find(mf.src, k, rep)
                        .expect("composites of G-maps are G-maps");
                    composition.insert((f, g), h);
                }
            }
        }
        cat.composition = composition;
        Ok(cat)
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn num_objects(&self) -> usize {
        self.classes.len()
    }

    pub fn class(&self, i: usize) -> &SubgroupClass {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.classes[i].representative
    }

    /// |H_i|.
    pub fn object_order(&self, i: usize) -> usize {
        self.classes[i].order()
    }

    /// Generators of the representative subgroup H_i.
    pub fn object_generators(&self, i: usize) -> Vec<Perm> {
        self.group.small_generating_set(self.subgroup(i))
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn morphism(&self, id: usize) -> Morphism {
        self.morphisms[id]
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    /// Morphism ids G/H_i → G/H_j.
    pub fn hom(&self, i: usize, j: usize) -> &[usize] {
        &self.hom[i][j]
    }

    pub fn identity(&self, i: usize) -> usize {
        self.identities[i]
    }

    /// The morphism i → j sending eH_i to gH_j, if g⁻¹H_i g ⊆ H_j.
    pub fn find(&self, i: usize, j: usize, g: usize) -> Option<usize> {
        let key = self.group.coset_key(g, self.subgroup(j));
        self.lookup.get(&(i, j, key)).copied()
    }

    /// `second ∘ first` for `first: i → j`, `second: j → k`.
    pub fn compose(&self, first: usize, second: usize) -> usize {
        *self
            .composition
            .get(&(first, second))
            .unwrap_or_else(|| panic!("morphisms {first} and {second} are not composable"))
    }

    /// All composable pairs (first, second, composite).
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.composition.iter().map(|(&(f, g), &h)| (f, g, h))
    }

    /// Σ |Hom(i, j)|: the dimension of the category algebra.
    pub fn category_algebra_dimension(&self) -> usize {
        self.morphisms.len()
    }

    pub fn is_associative(&self) -> bool {
        self.composable_pairs().all(|(f, g, fg)| {
            let k = self.morphisms[g].dst;
            (0..self.num_objects()).all(|l| {
                self.hom[k][l]
                    .iter()
                    .all(|&h| self.compose(fg, h) == self.compose(f, self.compose(g, h)))
            })
        })
    }

    /// Whether two categories were built from the same group data.
    pub fn same_as(&self, other: &OrbitCategory) -> bool {
        std::ptr::eq(self, other)
            || (self.group.elements() == other.group.elements()
                && self.morphisms == other.morphisms)
    }

    /// The Hasse diagram of subconjugacy between objects (one edge i → j
    /// when H_i is maximal among classes subconjugate to H_j). Display only.
    pub fn hasse_quiver(&self) -> Quiver {
        let n = self.num_objects();
        let below = |i: usize, j: usize| i != j && !self.hom[i][j].is_empty();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if below(i, j) && !(0..n).any(|k| below(i, k) && below(k, j)) {
                    edges.push((i, j));
                }
            }
        }
        Quiver { vertices: n, edges }
    }

    pub fn summary(&self) -> CategorySummary {
        let n = self.num_objects();
        CategorySummary {
            group_order: self.group.order(),
            objects: (0..n)
                .map(|i| ObjectSummary {
                    index: i,
                    order: self.object_order(i),
                    generators: self
                        .object_generators(i)
                        .iter()
                        .map(ToString::to_string)
                        .collect(),
                    conjugates: self.classes[i].conjugates.len(),
                    weyl_order: self.classes[i].weyl_order,
                })
                .collect(),
            hom_sizes: (0..n)
                .map(|i| (0..n).map(|j| self.hom[i][j].len()).collect())
                .collect(),
            algebra_dimension: self.category_algebra_dimension(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ObjectSummary {
    pub index: usize,
    pub order: usize,
    pub generators: Vec<String>,
    pub conjugates: usize,
    pub weyl_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CategorySummary {
    pub group_order: usize,
    pub objects: Vec<ObjectSummary>,
    pub hom_sizes: Vec<Vec<usize>>,
    pub algebra_dimension: usize,
}

/// A finite directed graph (loops and parallel edges allowed).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quiver {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Quiver {
    /// The linear quiver 0 → 1 → … → n−1.
    pub fn linear(n: usize) -> Self {
        Quiver {
            vertices: n,
            edges: (1..n).map(|i| (i - 1, i)).collect(),
        }
    }
}

/// Dimension of a free path algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PathAlgebraDimension {
    Finite(u128),
    /// The quiver has a directed cycle.
    Unbounded,
}

/// Number of paths in `q`, trivial paths included.
pub fn free_path_algebra_dimension(q: &Quiver) -> PathAlgebraDimension {
    let n = q.vertices;
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(s, t) in &q.edges {
        assert!(s < n && t < n, "edge ({s}, {t}) out of range");
        out[s].push(t);
    }
    // paths[v] = number of paths starting at v; colours: 0 new, 1 open, 2 done.
    let mut colour = vec![0u8; n];
    let mut paths = vec![0u128; n];
    fn visit(v: usize, out: &[Vec<usize>], colour: &mut [u8], paths: &mut [u128]) -> bool {
        colour[v] = 1;
        let mut total = 1u128;
        for &w in &out[v] {
            let state = colour[w];
            if state == 1 || (state == 0 && !visit(w, out, colour, paths)) {
                return false;
            }
            total += paths[w];
        }
        paths[v] = total;
        colour[v] = 2;
        true
    }
    for v in 0..n {
        if colour[v] == 0 && !visit(v, &out, &mut colour, &mut paths) {
            return PathAlgebraDimension::Unbounded;
        }
    }
    PathAlgebraDimension::Finite(paths.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::parse_generators;

    fn group(degree: usize, gens: &str) -> PermGroup {
        PermGroup::closure(degree, &parse_generators(degree, gens).unwrap()).unwrap()
    }

    #[test]
    fn c2_category() {
        let cat = OrbitCategory::new(&group(2, "(0 1)")).unwrap();
        assert_eq!(cat.num_objects(), 2);
        assert_eq!(cat.hom(0, 0).len(), 2);
        assert_eq!(cat.hom(0, 1).len(), 1);
        assert_eq!(cat.hom(1, 1).len(), 1);
        assert_eq!(cat.hom(1, 0).len(), 0);
        assert_eq!(cat.category_algebra_dimension(), 4);
        assert!(cat.is_associative());
    }

    #[test]
    fn d8_category() {
        let g = group(4, "(0 1 2 3),(0 1)(2 3)");
        let cat = OrbitCategory::new(&g).unwrap();
        assert_eq!(cat.num_objects(), 8);
        let top = cat.num_objects() - 1;
        assert_eq!(cat.object_order(top), 8);
        assert_eq!(cat.hom(0, 0).len(), 8);
        for i in 0..top {
            assert_eq!(cat.hom(i, top).len(), 1);
            assert!(cat.hom(top, i).is_empty());
            assert_eq!(cat.hom(0, i).len(), 8 / cat.object_order(i));
        }
        assert!(cat.is_associative());
        for i in 0..cat.num_objects() {
            let id = cat.identity(i);
            for j in 0..cat.num_objects() {
                for &f in cat.hom(i, j) {
                    assert_eq!(cat.compose(id, f), f);
                    assert_eq!(cat.compose(f, cat.identity(j)), f);
                }
            }
        }
    }

    #[test]
    fn trivial_group_category() {
        let cat = OrbitCategory::new(&PermGroup::trivial(3)).unwrap();
        assert_eq!(cat.category_algebra_dimension(), 1);
    }

    #[test]
    fn path_algebras() {
        for n in 3..=5u128 {
            assert_eq!(
                free_path_algebra_dimension(&Quiver::linear(n as usize)),
                PathAlgebraDimension::Finite(n * (n + 1) / 2)
            );
        }
        let point = Quiver { vertices: 1, edges: vec![] };
        assert_eq!(free_path_algebra_dimension(&point), PathAlgebraDimension::Finite(1));
        let looped = Quiver { vertices: 1, edges: vec![(0, 0)] };
        assert_eq!(free_path_algebra_dimension(&looped), PathAlgebraDimension::Unbounded);
        let diamond = Quiver { vertices: 4, edges: vec![(0, 1), (0, 2), (1, 3), (2, 3)] };
        // 4 trivial + 4 edges + 2 of length two.
        assert_eq!(free_path_algebra_dimension(&diamond), PathAlgebraDimension::Finite(10));
    }
}
