//! Finite permutation groups, their subgroups up to conjugacy, normalizers
//! and Weyl groups.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on |G| for subgroup enumeration.
pub const DEFAULT_SUBGROUP_BOUND: usize = 120;

/// Groups larger than this are refused outright by [`PermGroup::closure`].
pub const MAX_GROUP_ORDER: usize = 1 << 20;

/// Multiplication tables are cached up to this order.
const TABLE_BOUND: usize = 2048;

/// A permutation of {0,…,n−1}, stored as its image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotAPermutation(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, v: usize) -> usize {
        self.images[v]
    }

    /// Image of a vertex set given as a bitmask.
    pub fn apply_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            out |= 1u64 << self.images[v];
            m &= m - 1;
        }
        out
    }

    /// The product `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "permutation degrees differ");
        Perm {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Perm { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.images[start];
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)` or `()`; points may be
    /// separated by spaces or commas.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Perm> {
        let bad = |why: &str| Error::Parse(format!("permutation {s:?}: {why}"));
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        let mut rest = s.trim();
        if rest.is_empty() {
            return Err(bad("empty"));
        }
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = body.find(')').ok_or_else(|| bad("unbalanced parentheses"))?;
            let points: Vec<usize> = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad("points must be integers")))
                .collect::<Result<_>>()?;
            for &p in &points {
                if p >= degree {
                    return Err(bad(&format!("point {p} out of range for degree {degree}")));
                }
                if moved[p] {
                    return Err(bad(&format!("point {p} appears twice")));
                }
                moved[p] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Perm::new(images)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Perm::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Splits a generator list such as `(0 1 2 3),(0 1)(2 3)` at top-level
/// commas and parses each piece.
pub fn parse_generators(degree: usize, s: &str) -> Result<Vec<Perm>> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                out.push(Perm::parse_cycles(degree, &s[start..i])?);
                start = i + 1;
            }
            _ => {}
        }
    }
    if !s[start..].trim().is_empty() {
        out.push(Perm::parse_cycles(degree, &s[start..])?);
    }
    Ok(out)
}

/// A finite permutation group with its elements enumerated and sorted
/// lexicographically by image array (so the identity has index 0).
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// The group generated by `gens`, all of the given degree.
    pub fn closure(degree: usize, gens: &[Perm]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::NotAPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge {
                            order: seen.len(),
                            bound: MAX_GROUP_ORDER,
                        });
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted(degree, gens.to_vec(), elements))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_sorted(degree, Vec::new(), vec![Perm::identity(degree)])
    }

    /// The full symmetric group on `degree` points.
    pub fn symmetric(degree: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Perm::parse_cycles(degree, "(0 1)")?);
            let cycle: Vec<usize> = (1..degree).chain([0]).collect();
            gens.push(Perm::new(cycle)?);
        }
        Self::closure(degree, &gens)
    }

    fn from_sorted(degree: usize, generators: Vec<Perm>, elements: Vec<Perm>) -> Self {
        let index: HashMap<Perm, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_BOUND).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)] as u32);
                }
            }
            t
        });
        PermGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            table,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Index of `g h g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted_indices(self.order(), (0..self.order()).collect())
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup::from_sorted_indices(self.order(), vec![0])
    }

    /// The subgroup generated by the given element indices.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut set = FixedBitSet::with_capacity(n);
        set.insert(0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !set.contains(y) {
                    set.insert(y);
                    queue.push_back(y);
                }
            }
        }
        Subgroup::from_sorted_indices(n, set.ones().collect())
    }

    /// The subgroup of `self` whose elements are the given permutations.
    pub fn subgroup_from_perms(&self, perms: &[Perm]) -> Result<Subgroup> {
        let idx: Vec<usize> = perms
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| Error::NotASubgroup(format!("{p} is not an element of the group")))
            })
            .collect::<Result<_>>()?;
        Ok(self.generate(&idx))
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut idx: Vec<usize> = h.elements.iter().map(|&x| self.conj(g, x)).collect();
        idx.sort_unstable();
        Subgroup::from_sorted_indices(self.order(), idx)
    }

    /// Realizes a subgroup as a standalone permutation group.
    pub fn subgroup_group(&self, h: &Subgroup) -> PermGroup {
        let gens = self.small_generating_set(h);
        let elements = h.elements.iter().map(|&i| self.elements[i].clone()).collect();
        PermGroup::from_sorted(self.degree, gens, elements)
    }

    /// Greedy generating set: add the least element not yet generated.
    pub fn small_generating_set(&self, h: &Subgroup) -> Vec<Perm> {
        self.small_generating_set_indices(h)
            .into_iter()
            .map(|i| self.elements[i].clone())
            .collect()
    }

    /// The normalizer N_G(H) and minimal-index representatives of N_G(H)/H
    /// (the identity first).
    pub fn weyl(&self, h: &Subgroup) -> Result<(Subgroup, Vec<usize>)> {
        self.check_subgroup(h)?;
        let normal: Vec<usize> = (0..self.order())
            .filter(|&g| h.elements.iter().all(|&x| h.contains(self.conj(g, x))))
            .collect();
        let reps = self.coset_reps(&normal, h);
        Ok((Subgroup::from_sorted_indices(self.order(), normal), reps))
    }

    /// Minimal index in each left coset gK for g in `elems`, sorted.
    fn coset_reps(&self, elems: &[usize], k: &Subgroup) -> Vec<usize> {
        let reps: BTreeSet<usize> = elems.iter().map(|&g| self.coset_key(g, k)).collect();
        reps.into_iter().collect()
    }

    /// Canonical representative of the left coset gK (its least index).
    pub fn coset_key(&self, g: usize, k: &Subgroup) -> usize {
        k.elements
            .iter()
            .map(|&x| self.mul(g, x))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Elements g with g⁻¹Hg ⊆ K, one (least) per coset gK, sorted.
    pub fn subconjugators(&self, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
        let good: Vec<usize> = (0..self.order())
            .filter(|&g| {
                let gi = self.inv(g);
                h.elements.iter().all(|&x| k.contains(self.conj(gi, x)))
            })
            .collect();
        self.coset_reps(&good, k)
    }

    fn check_subgroup(&self, h: &Subgroup) -> Result<()> {
        if h.universe != self.order() {
            return Err(Error::NotASubgroup(
                "subgroup belongs to a different group".into(),
            ));
        }
        Ok(())
    }

    /// Conjugacy classes of subgroups, refusing groups larger than
    /// [`DEFAULT_SUBGROUP_BOUND`].
    pub fn subgroup_classes(&self) -> Result<Vec<SubgroupClass>> {
        self.subgroup_classes_bounded(DEFAULT_SUBGROUP_BOUND)
    }

    /// Conjugacy classes of subgroups ordered by (order, least conjugate as
    /// a sorted index list); each class representative is that least
    /// conjugate.
    pub fn subgroup_classes_bounded(&self, bound: usize) -> Result<Vec<SubgroupClass>> {
        if self.order() > bound {
            return Err(Error::GroupTooLarge {
                order: self.order(),
                bound,
            });
        }
        let all = self.all_subgroups();
        let mut classes: Vec<(Vec<usize>, Vec<Subgroup>)> = Vec::new();
        let mut assigned: HashSet<Vec<usize>> = HashSet::new();
        for s in &all {
            if assigned.contains(&s.elements) {
                continue;
            }
            let conjugates: BTreeSet<Vec<usize>> = (0..self.order())
                .map(|g| self.conjugate(s, g).elements)
                .collect();
            for c in &conjugates {
                assigned.insert(c.clone());
            }
            let conjugates: Vec<Subgroup> = conjugates
                .into_iter()
                .map(|e| Subgroup::from_sorted_indices(self.order(), e))
                .collect();
            classes.push((conjugates[0].elements.clone(), conjugates));
        }
        classes.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        classes
            .into_iter()
            .map(|(_, conjugates)| {
                let representative = conjugates[0].clone();
                let (normalizer, weyl_coset_reps) = self.weyl(&representative)?;
                Ok(SubgroupClass {
                    weyl_order: normalizer.order() / representative.order(),
                    representative,
                    conjugates,
                    normalizer,
                    weyl_coset_reps,
                })
            })
            .collect()
    }

    /// Every subgroup, by joining cyclic subgroups until nothing new appears.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let mut cyclic: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for g in 0..self.order() {
            let c = self.generate(&[g]);
            if seen.insert(c.elements.clone()) {
                cyclic.push(c);
            }
        }
        let mut all = cyclic.clone();
        let mut queue: VecDeque<usize> = (0..all.len()).collect();
        while let Some(i) = queue.pop_front() {
            for c in &cyclic {
                if all[i].contains_subgroup(c) {
                    continue;
                }
                let mut gens = self.small_generating_set_indices(&all[i]);
                gens.extend(self.small_generating_set_indices(c));
                let joined = self.generate(&gens);
                if seen.insert(joined.elements.clone()) {
                    all.push(joined);
                    queue.push_back(all.len() - 1);
                }
            }
        }
        all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
        all
    }

    fn small_generating_set_indices(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.trivial_subgroup();
        for &x in &h.elements {
            if !current.contains(x) {
                gens.push(x);
                current = self.generate(&gens);
            }
        }
        gens
    }

    /// Number of subgroups in a longest strictly increasing chain
    /// {e} = H₀ < H₁ < … < G.
    pub fn longest_chain_length(&self) -> usize {
        let all = self.all_subgroups();
        let mut best = vec![1usize; all.len()];
        for i in 0..all.len() {
            for j in 0..i {
                if all[j].order() < all[i].order() && all[i].contains_subgroup(&all[j]) {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(1)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    degree: usize,
    generators: Vec<Perm>,
}

impl Serialize for PermGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GroupJson {
            degree: self.degree,
            generators: self.generators.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PermGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GroupJson::deserialize(d)?;
        PermGroup::closure(raw.degree, &raw.generators).map_err(serde::de::Error::custom)
    }
}

/// A subgroup of a fixed ambient [`PermGroup`], as a sorted list of element
/// indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subgroup {
    universe: usize,
    elements: Vec<usize>,
    set: FixedBitSet,
}

impl Subgroup {
    fn from_sorted_indices(universe: usize, elements: Vec<usize>) -> Self {
        let mut set = FixedBitSet::with_capacity(universe);
        for &e in &elements {
            set.insert(e);
        }
        Subgroup {
            universe,
            elements,
            set,
        }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn contains(&self, g: usize) -> bool {
        self.set.contains(g)
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.set.is_subset(&self.set)
    }
}

/// One conjugacy class of subgroups.
#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub representative: Subgroup,
    /// All conjugates, sorted; the representative comes first.
    pub conjugates: Vec<Subgroup>,
    pub normalizer: Subgroup,
    pub weyl_order: usize,
    /// Least element of each coset nH, n ∈ N(H); the identity first.
    pub weyl_coset_reps: Vec<usize>,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d8() -> PermGroup {
        PermGroup::closure(4, &parse_generators(4, "(0 1 2 3),(0 1)(2 3)").unwrap()).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let p = Perm::parse_cycles(4, "(0 1)(2 3)").unwrap();
        assert_eq!(p.images(), &[1, 0, 3, 2]);
        assert_eq!(p.to_string(), "(0 1)(2 3)");
        assert_eq!(Perm::parse_cycles(3, "()").unwrap(), Perm::identity(3));
        assert!(Perm::parse_cycles(3, "(0 3)").is_err());
        assert!(Perm::parse_cycles(3, "(0 1)(1 2)").is_err());
        assert!(Perm::new(vec![0, 0]).is_err());
        let gens = parse_generators(4, "(0 1 2 3),(0 1)(2 3)").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(parse_generators(4, "(0,1,2)").unwrap()[0].images(), &[1, 2, 0, 3]);
    }

    #[test]
    fn composition_convention() {
        let a = Perm::parse_cycles(3, "(0 1)").unwrap();
        let b = Perm::parse_cycles(3, "(1 2)").unwrap();
        // (a∘b)(1) = a(b(1)) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert!(a.compose(&a.inverse()).is_identity());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(d8().order(), 8);
        assert_eq!(PermGroup::closure(4, &[]).unwrap().order(), 1);
        let transpositions = parse_generators(4, "(0 1),(0 2),(0 3),(1 2),(1 3),(2 3)").unwrap();
        assert_eq!(PermGroup::closure(4, &transpositions).unwrap().order(), 24);
        assert!(d8().element(0).is_identity());
    }

    #[test]
    fn subgroup_class_counts() {
        assert_eq!(d8().subgroup_classes().unwrap().len(), 8);
        let s4 = PermGroup::symmetric(4).unwrap();
        assert_eq!(s4.subgroup_classes().unwrap().len(), 11);
        let c2 = PermGroup::closure(2, &parse_generators(2, "(0 1)").unwrap()).unwrap();
        assert_eq!(c2.subgroup_classes().unwrap().len(), 2);
        let s6 = PermGroup::symmetric(6).unwrap();
        assert!(matches!(
            s6.subgroup_classes(),
            Err(Error::GroupTooLarge { order: 720, bound: 120 })
        ));
    }

    #[test]
    fn weyl_examples() {
        let g = d8();
        let center = g.subgroup_from_perms(&[Perm::parse_cycles(4, "(0 2)(1 3)").unwrap()]).unwrap();
        let (n, reps) = g.weyl(&center).unwrap();
        assert_eq!(n.order() / center.order(), 4);
        assert_eq!(reps.len(), 4);
        assert_eq!(reps[0], 0);
        let (_, reps) = g.weyl(&g.trivial_subgroup()).unwrap();
        assert_eq!(reps.len(), 8);
        let (_, reps) = g.weyl(&g.whole()).unwrap();
        assert_eq!(reps, vec![0]);
    }

    #[test]
    fn subconjugator_examples() {
        let s4 = PermGroup::symmetric(4).unwrap();
        let a4_gens: Vec<Perm> = s4.elements().iter().filter(|p| p.is_even()).cloned().collect();
        let a4 = s4.subgroup_from_perms(&a4_gens).unwrap();
        assert_eq!(a4.order(), 12);
        let c4 = s4.subgroup_from_perms(&[Perm::parse_cycles(4, "(0 1 2 3)").unwrap()]).unwrap();
        assert!(s4.subconjugators(&c4, &a4).is_empty());
        assert_eq!(s4.subconjugators(&s4.trivial_subgroup(), &a4).len(), 2);
        assert_eq!(s4.subconjugators(&s4.whole(), &s4.whole()), vec![0]);
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(d8().longest_chain_length(), 4);
        assert_eq!(PermGroup::symmetric(4).unwrap().longest_chain_length(), 5);
        assert_eq!(PermGroup::trivial(3).longest_chain_length(), 1);
    }

    #[test]
    fn json_round_trip() {
        let g = d8();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"degree":4,"generators":[[1,2,3,0],[1,0,3,2]]}"#);
        let back: PermGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back.elements(), g.elements());
    }
}
