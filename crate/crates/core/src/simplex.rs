//! Vertices and abstract simplices.
//!
//! A vertex is an opaque small integer. Distinct "namespaces" (the two
//! variable groups of an analysis, or the synthetic vertices of a product
//! triangulation) are represented by disjoint id ranges; operations that
//! require disjointness, such as [`join`](crate::complex::SimplicialComplex::join),
//! check it explicitly rather than trusting a tag.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Identifier of a vertex within an analysis context.
///
/// For complexes built from a dataset the id is the column index of the
/// variable; for product triangulations ids are synthesized pair codes.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A non-empty abstract simplex: a strictly sorted set of vertices.
///
/// The empty simplex is not representable. It only plays a transient role
/// inside the join construction, where it is handled implicitly by the facet
/// representation and never materialized.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<VertexId>,
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v.0)?;
        }
        write!(f, "}}")
    }
}

impl Simplex {
    /// Builds a simplex from a vertex list. The list is sorted internally;
    /// duplicates or an empty list are rejected.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::MalformedSimplex("empty vertex list".into()));
        }
        vertices.sort_unstable();
        for pair in vertices.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::MalformedSimplex(format!(
                    "duplicate vertex {:?}",
                    pair[0]
                )));
            }
        }
        Ok(Self { vertices })
    }

    /// Convenience constructor from raw ids.
    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Result<Self> {
        Self::new(ids.into_iter().map(VertexId).collect())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    /// Dimension = number of vertices − 1.
    pub fn dimension(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// True when every vertex of `self` is a vertex of `other`.
    pub fn is_face_of(&self, other: &Simplex) -> bool {
        if self.vertices.len() > other.vertices.len() {
            return false;
        }
        let mut it = other.vertices.iter();
        'outer: for v in &self.vertices {
            for w in it.by_ref() {
                match w.cmp(v) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    /// The codimension-1 faces, in the order obtained by dropping each vertex.
    /// A vertex has no such faces.
    pub fn boundary_faces(&self) -> Vec<Simplex> {
        if self.vertices.len() == 1 {
            return Vec::new();
        }
        (0..self.vertices.len())
            .map(|skip| {
                let vertices = self
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v)
                    .collect();
                Simplex { vertices }
            })
            .collect()
    }

    /// All non-empty faces including `self`, as an iterator over subsets.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.vertices.len();
        debug_assert!(n <= 63, "simplex too large to enumerate");
        (1u64..(1u64 << n)).map(move |mask| {
            let vertices = self
                .vertices
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v)
                .collect();
            Simplex { vertices }
        })
    }

    /// Intersection of vertex sets, or `None` when empty.
    pub fn intersection(&self, other: &Simplex) -> Option<Simplex> {
        let vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .filter(|v| other.contains(**v))
            .copied()
            .collect();
        if vertices.is_empty() {
            None
        } else {
            Some(Simplex { vertices })
        }
    }

    /// Restriction to a vertex subset, or `None` when the restriction is empty.
    pub fn restrict(&self, keep: &std::collections::BTreeSet<VertexId>) -> Option<Simplex> {
        let vertices: Vec<VertexId> = self
            .vertices
            .iter()
            .filter(|v| keep.contains(v))
            .copied()
            .collect();
        if vertices.is_empty() {
            None
        } else {
            Some(Simplex { vertices })
        }
    }

    /// Union of two simplices with disjoint vertex sets.
    pub fn join(&self, other: &Simplex) -> Result<Simplex> {
        let mut vertices = Vec::with_capacity(self.vertices.len() + other.vertices.len());
        let (mut i, mut j) = (0, 0);
        while i < self.vertices.len() && j < other.vertices.len() {
            match self.vertices[i].cmp(&other.vertices[j]) {
                std::cmp::Ordering::Less => {
                    vertices.push(self.vertices[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    vertices.push(other.vertices[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    return Err(Error::NamespaceOverlap(self.vertices[i]));
                }
            }
        }
        vertices.extend_from_slice(&self.vertices[i..]);
        vertices.extend_from_slice(&other.vertices[j..]);
        Ok(Simplex { vertices })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(ids: &[u32]) -> Simplex {
        Simplex::from_ids(ids.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_empty_and_duplicates() {
        assert!(Simplex::new(vec![]).is_err());
        assert!(Simplex::from_ids([1, 1]).is_err());
    }

    #[test]
    fn sorts_vertices() {
        let spx = s(&[3, 1, 2]);
        assert_eq!(
            spx.vertices(),
            &[VertexId(1), VertexId(2), VertexId(3)]
        );
        assert_eq!(spx.dimension(), 2);
    }

    #[test]
    fn boundary_faces_of_triangle() {
        let faces = s(&[0, 1, 2]).boundary_faces();
        assert_eq!(faces.len(), 3);
        assert!(faces.contains(&s(&[1, 2])));
        assert!(faces.contains(&s(&[0, 2])));
        assert!(faces.contains(&s(&[0, 1])));
        assert!(s(&[7]).boundary_faces().is_empty());
    }

    #[test]
    fn face_relation() {
        assert!(s(&[1, 3]).is_face_of(&s(&[1, 2, 3])));
        assert!(!s(&[1, 4]).is_face_of(&s(&[1, 2, 3])));
        assert!(s(&[2]).is_face_of(&s(&[2])));
    }

    #[test]
    fn join_disjoint_and_overlapping() {
        assert_eq!(s(&[0, 2]).join(&s(&[1, 3])).unwrap(), s(&[0, 1, 2, 3]));
        assert!(s(&[0, 2]).join(&s(&[2, 3])).is_err());
    }

    #[test]
    fn faces_enumerates_all_subsets() {
        let all: Vec<Simplex> = s(&[0, 1, 2]).faces().collect();
        assert_eq!(all.len(), 7);
    }
}
