//! Abstract simplicial complexes on a vertex set {0,…,n−1}, possibly with
//! ghost vertices (vertices that are not faces).

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex sets are limited to this many vertices so faces fit in a `u64`.
pub const MAX_VERTICES: usize = 64;

/// A downward-closed family of vertex sets; the empty face is always present.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    num_vertices: usize,
    /// Sorted by (size, lexicographic vertex list).
    faces: Vec<Vec<usize>>,
    masks: HashSet<u64>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.num_vertices == other.num_vertices && self.faces == other.faces
    }
}

impl Eq for SimplicialComplex {}

pub fn mask_of(face: &[usize]) -> u64 {
    face.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

pub fn vertices_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&v| mask & (1u64 << v) != 0).collect()
}

impl SimplicialComplex {
    /// The downward closure of `generators` (plus ∅) on `num_vertices`
    /// vertices.
    pub fn new(num_vertices: usize, generators: &[Vec<usize>]) -> Result<Self> {
        if num_vertices > MAX_VERTICES {
            return Err(Error::InvalidComplex(format!(
                "{num_vertices} vertices exceeds the supported maximum {MAX_VERTICES}"
            )));
        }
        let mut gen_masks = Vec::with_capacity(generators.len());
        for g in generators {
            for &v in g {
                if v >= num_vertices {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        num_vertices,
                    });
                }
            }
            gen_masks.push(mask_of(g));
        }
        let mut masks = HashSet::new();
        masks.insert(0u64);
        for &g in &gen_masks {
            if masks.contains(&g) {
                continue;
            }
            // Enumerate all submasks of g.
            let mut s = g;
            loop {
                masks.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & g;
            }
        }
        Ok(Self::from_masks(num_vertices, masks))
    }

    fn from_masks(num_vertices: usize, masks: HashSet<u64>) -> Self {
        let mut faces: Vec<Vec<usize>> = masks.iter().map(|&m| vertices_of(m)).collect();
        faces.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        SimplicialComplex {
            num_vertices,
            faces,
            masks,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// All faces including ∅, sorted by size then lexicographically.
    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn is_face(&self, face: &[usize]) -> bool {
        face.iter().all(|&v| v < self.num_vertices) && self.masks.contains(&mask_of(face))
    }

    pub fn is_face_mask(&self, mask: u64) -> bool {
        self.masks.contains(&mask)
    }

    /// Maximal faces, sorted.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .faces
            .iter()
            .filter(|f| !f.is_empty())
            .filter(|f| {
                let m = mask_of(f);
                (0..self.num_vertices)
                    .all(|v| m & (1 << v) != 0 || !self.masks.contains(&(m | (1 << v))))
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    /// Dimension (−1 for the complex {∅}).
    pub fn dim(&self) -> isize {
        self.faces.last().map_or(-1, |f| f.len() as isize - 1)
    }

    /// Number of faces of each dimension 0, 1, …, dim.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = (self.dim() + 1).max(0) as usize;
        let mut f = vec![0; top];
        for face in &self.faces {
            if !face.is_empty() {
                f[face.len() - 1] += 1;
            }
        }
        f
    }

    /// Vertices v with {v} a face.
    pub fn vertex_faces(&self) -> Vec<usize> {
        (0..self.num_vertices)
            .filter(|&v| self.masks.contains(&(1 << v)))
            .collect()
    }

    pub fn ghost_vertices(&self) -> Vec<usize> {
        (0..self.num_vertices)
            .filter(|&v| !self.masks.contains(&(1 << v)))
            .collect()
    }

    /// The full subcomplex K_I = {σ ∩ I}, re-indexed over I in increasing
    /// order.
    pub fn full_subcomplex(&self, vertices: &[usize]) -> Result<Self> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&v) = sorted.iter().find(|&&v| v >= self.num_vertices) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                num_vertices: self.num_vertices,
            });
        }
        let keep = mask_of(&sorted);
        let masks = self
            .masks
            .iter()
            .map(|&m| {
                let mut out = 0u64;
                for (new, &old) in sorted.iter().enumerate() {
                    if (m & keep) & (1 << old) != 0 {
                        out |= 1 << new;
                    }
                }
                out
            })
            .collect();
        Ok(Self::from_masks(sorted.len(), masks))
    }
}

/// The full simplex Δ^m on vertices {0,…,m}.
pub fn simplex(m: usize) -> SimplicialComplex {
    SimplicialComplex::new(m + 1, &[(0..=m).collect()]).expect("simplex is well formed")
}

/// The boundary ∂Δ^m: all proper subsets of {0,…,m}.
pub fn boundary(m: usize) -> Result<SimplicialComplex> {
    if m == 0 {
        return Err(Error::InvalidComplex(
            "boundary(0) is empty; use a ghost vertex instead".into(),
        ));
    }
    let facets: Vec<Vec<usize>> = (0..=m)
        .map(|skip| (0..=m).filter(|&v| v != skip).collect())
        .collect();
    SimplicialComplex::new(m + 1, &facets)
}

/// The boundary of the n-gon: edges {i, i+1 mod n}.
pub fn ngon(n: usize) -> Result<SimplicialComplex> {
    if n < 3 {
        return Err(Error::InvalidComplex(format!("an n-gon needs n >= 3, got {n}")));
    }
    let edges: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut e = vec![i, (i + 1) % n];
            e.sort_unstable();
            e
        })
        .collect();
    SimplicialComplex::new(n, &edges)
}

/// Three edges {0,1}, {0,2}, {0,3} meeting at vertex 0.
pub fn star() -> SimplicialComplex {
    SimplicialComplex::new(4, &[vec![0, 1], vec![0, 2], vec![0, 3]]).expect("star is well formed")
}

/// Two triangles {0,1,2} and {3,4,5} joined by the edges {0,3}, {1,4}, {2,5}.
pub fn trilinder() -> SimplicialComplex {
    SimplicialComplex::new(
        6,
        &[
            vec![0, 1, 2],
            vec![3, 4, 5],
            vec![0, 3],
            vec![1, 4],
            vec![2, 5],
        ],
    )
    .expect("trilinder is well formed")
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: usize,
    facets: Vec<Vec<usize>>,
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            vertices: self.num_vertices,
            facets: self.facets(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ComplexJson::deserialize(d)?;
        SimplicialComplex::new(raw.vertices, &raw.facets).map_err(serde::de::Error::custom)
    }
}
