//! Finite abstract simplicial complexes in facet representation.
//!
//! A complex is stored as its set of maximal simplices (facets); the full,
//! downward-closed simplex set is enumerated on demand under a configurable
//! budget, since joins grow multiplicatively.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::simplex::{Simplex, VertexId};

/// Default cap on full simplex enumeration.
pub const DEFAULT_BUDGET: usize = 1 << 20;

/// An abstract simplicial complex, represented by its facets.
///
/// Invariants: facets are pairwise incomparable (an antichain under the face
/// relation), sorted, and deduplicated. The empty complex has no facets.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    facets: Vec<Simplex>,
    vertices: BTreeSet<VertexId>,
}

impl SimplicialComplex {
    /// The complex with no simplices at all.
    pub fn empty() -> Self {
        Self {
            facets: Vec::new(),
            vertices: BTreeSet::new(),
        }
    }

    /// Smallest downward-closed complex containing every input simplex.
    ///
    /// Inputs need not be maximal or distinct; dominated entries are dropped.
    pub fn closure(simplices: Vec<Simplex>) -> Self {
        let mut facets: Vec<Simplex> = Vec::new();
        let mut sorted = simplices;
        // Larger simplices first so dominated ones are filtered in one pass.
        sorted.sort_unstable_by(|a, b| {
            b.vertices()
                .len()
                .cmp(&a.vertices().len())
                .then_with(|| a.cmp(b))
        });
        for s in sorted {
            if !facets.iter().any(|f| s.is_face_of(f)) {
                facets.push(s);
            }
        }
        facets.sort_unstable();
        let vertices = facets
            .iter()
            .flat_map(|f| f.vertices().iter().copied())
            .collect();
        Self { facets, vertices }
    }

    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Maximal simplices, sorted.
    pub fn facets(&self) -> &[Simplex] {
        &self.facets
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    /// Largest facet dimension, or `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.facets.iter().map(|f| f.dimension()).max()
    }

    /// Membership test: a simplex belongs to the complex iff it is a face of
    /// some facet.
    pub fn contains(&self, s: &Simplex) -> bool {
        self.facets.iter().any(|f| s.is_face_of(f))
    }

    /// Checks `self` ⊆ `other`, returning a witness facet on failure.
    pub fn subcomplex_of(&self, other: &SimplicialComplex) -> std::result::Result<(), Simplex> {
        for f in &self.facets {
            if !other.contains(f) {
                return Err(f.clone());
            }
        }
        Ok(())
    }

    /// Enumerates every simplex, grouped and sorted by dimension.
    ///
    /// Fails with [`Error::BudgetExceeded`] once more than `budget` distinct
    /// simplices have been produced.
    pub fn enumerate(&self, budget: usize) -> Result<SimplexTable> {
        let mut seen: BTreeSet<Simplex> = BTreeSet::new();
        for facet in &self.facets {
            if facet.vertices().len() > 63 {
                return Err(Error::BudgetExceeded { budget });
            }
            for face in facet.faces() {
                seen.insert(face);
                if seen.len() > budget {
                    return Err(Error::BudgetExceeded { budget });
                }
            }
        }
        let max_dim = self.dimension();
        let mut by_dim: Vec<Vec<Simplex>> = match max_dim {
            None => Vec::new(),
            Some(d) => vec![Vec::new(); d + 1],
        };
        for s in seen {
            by_dim[s.dimension()].push(s);
        }
        // BTreeSet iteration is lex-sorted; shorter prefixes sort first, so
        // within one dimension the order is already lexicographic.
        Ok(SimplexTable { by_dim })
    }

    /// Number of simplices in the full complex.
    pub fn simplex_count(&self, budget: usize) -> Result<usize> {
        Ok(self.enumerate(budget)?.total())
    }

    /// Σ_d (−1)^d · (#d-simplices).
    pub fn euler_characteristic(&self, budget: usize) -> Result<i64> {
        let table = self.enumerate(budget)?;
        Ok(table
            .by_dim
            .iter()
            .enumerate()
            .map(|(d, simplices)| {
                let count = simplices.len() as i64;
                if d % 2 == 0 {
                    count
                } else {
                    -count
                }
            })
            .sum())
    }

    /// Projection onto a vertex subset: `{ σ ∩ S : σ ∈ X, σ ∩ S ≠ ∅ }`.
    ///
    /// The result is empty when `keep` misses every simplex; callers that
    /// consider this exceptional should test [`is_empty`](Self::is_empty).
    pub fn project(&self, keep: &BTreeSet<VertexId>) -> SimplicialComplex {
        let restricted: Vec<Simplex> = self
            .facets
            .iter()
            .filter_map(|f| f.restrict(keep))
            .collect();
        SimplicialComplex::closure(restricted)
    }

    /// Simplicial join: all unions σ ∪ τ of a simplex from each side, plus
    /// faces. Vertex sets must be disjoint.
    ///
    /// The facets of the join are exactly the joins of facet pairs; pure
    /// simplices of either side arise as their faces, which makes the empty
    /// simplex unnecessary as an explicit value.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        if let Some(v) = self.vertices.intersection(&other.vertices).next() {
            return Err(Error::NamespaceOverlap(*v));
        }
        let mut facets = Vec::with_capacity(self.facets.len() * other.facets.len());
        for a in &self.facets {
            for b in &other.facets {
                facets.push(a.join(b)?);
            }
        }
        if facets.is_empty() {
            // One side is empty; the join degenerates to the other side.
            facets = if self.is_empty() {
                other.facets.clone()
            } else {
                self.facets.clone()
            };
        }
        Ok(SimplicialComplex::closure(facets))
    }
}

/// All simplices of a complex, grouped by dimension and lex-sorted within
/// each dimension. Produced by [`SimplicialComplex::enumerate`].
#[derive(Clone, Debug)]
pub struct SimplexTable {
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplexTable {
    pub fn max_dim(&self) -> Option<usize> {
        self.by_dim.len().checked_sub(1)
    }

    /// Simplices of one dimension, lex-sorted. Empty slice out of range.
    pub fn dim(&self, d: usize) -> &[Simplex] {
        self.by_dim.get(d).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn total(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// Index of a simplex within its dimension class.
    pub fn position(&self, s: &Simplex) -> Option<usize> {
        self.by_dim
            .get(s.dimension())
            .and_then(|v| v.binary_search(s).ok())
    }

    pub fn iter(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }
}

/// A staircase triangulation of the product |K| × |L|.
///
/// Vertices are synthetic pair codes; `pair_of` recovers the factors.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    complex: SimplicialComplex,
    left: Vec<VertexId>,
    right: Vec<VertexId>,
}

impl ProductComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The (left, right) factor vertices encoded by a product vertex.
    pub fn pair_of(&self, v: VertexId) -> (VertexId, VertexId) {
        let idx = v.0 as usize;
        let w = self.right.len();
        (self.left[idx / w], self.right[idx % w])
    }
}

/// Triangulates |K| × |L| with vertex set K⁰ × L⁰ using per-cell staircase
/// chains: within a cell σ × τ the simplices are the chains of the
/// componentwise order induced by `order_k` and `order_l`.
///
/// The triangulation depends on the chosen orders; its homology does not.
pub fn product_complex(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    order_k: &[VertexId],
    order_l: &[VertexId],
    budget: usize,
) -> Result<ProductComplex> {
    validate_order(k, order_k, "left")?;
    validate_order(l, order_l, "right")?;
    let pos_k: BTreeMap<VertexId, usize> =
        order_k.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let pos_l: BTreeMap<VertexId, usize> =
        order_l.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let width = order_l.len();

    let mut top_cells: Vec<Simplex> = Vec::new();
    for sigma in k.facets() {
        for tau in l.facets() {
            // Vertex ranks of the cell σ × τ along each axis, ascending.
            let mut rows: Vec<usize> = sigma.vertices().iter().map(|v| pos_k[v]).collect();
            let mut cols: Vec<usize> = tau.vertices().iter().map(|v| pos_l[v]).collect();
            rows.sort_unstable();
            cols.sort_unstable();
            staircases(&rows, &cols, width, &mut top_cells, budget)?;
        }
    }
    let complex = SimplicialComplex::closure(top_cells);
    Ok(ProductComplex {
        complex,
        left: order_k.to_vec(),
        right: order_l.to_vec(),
    })
}

/// `product_complex` with the default ascending-id vertex orders.
pub fn product_complex_default(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    budget: usize,
) -> Result<ProductComplex> {
    let order_k: Vec<VertexId> = k.vertex_set().iter().copied().collect();
    let order_l: Vec<VertexId> = l.vertex_set().iter().copied().collect();
    product_complex(k, l, &order_k, &order_l, budget)
}

fn validate_order(x: &SimplicialComplex, order: &[VertexId], side: &str) -> Result<()> {
    let as_set: BTreeSet<VertexId> = order.iter().copied().collect();
    if as_set.len() != order.len() || &as_set != x.vertex_set() {
        return Err(Error::InvalidArgument(format!(
            "{side} vertex order must be a permutation of the {side} vertex set"
        )));
    }
    Ok(())
}

/// Emits every maximal monotone chain through the grid rows × cols as a
/// simplex of pair codes `row_rank * width + col_rank`.
fn staircases(
    rows: &[usize],
    cols: &[usize],
    width: usize,
    out: &mut Vec<Simplex>,
    budget: usize,
) -> Result<()> {
    let (a, b) = (rows.len(), cols.len());
    let mut path: Vec<VertexId> = Vec::with_capacity(a + b - 1);
    let mut stack: Vec<(usize, usize, usize)> = vec![(0, 0, 0)]; // (i, j, path_len)
    while let Some((i, j, len)) = stack.pop() {
        path.truncate(len);
        path.push(VertexId((rows[i] * width + cols[j]) as u32));
        if i + 1 == a && j + 1 == b {
            if out.len() >= budget {
                return Err(Error::BudgetExceeded { budget });
            }
            out.push(Simplex::new(path.clone()).expect("distinct grid points"));
            continue;
        }
        if i + 1 < a {
            stack.push((i + 1, j, path.len()));
        }
        if j + 1 < b {
            stack.push((i, j + 1, path.len()));
        }
    }
    Ok(())
}
