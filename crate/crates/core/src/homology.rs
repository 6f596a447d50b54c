//! Z/2 simplicial homology via boundary-matrix ranks.

use serde::{Deserialize, Serialize};

use crate::complex::{SimplexTable, SimplicialComplex};
use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;

/// Betti numbers indexed by dimension. `reduced` marks whether the entry in
/// dimension 0 has been decremented for the augmentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiVector {
    pub per_dim: Vec<usize>,
    pub reduced: bool,
}

impl BettiVector {
    pub fn unreduced(per_dim: Vec<usize>) -> Self {
        Self {
            per_dim,
            reduced: false,
        }
    }

    pub fn reduced(per_dim: Vec<usize>) -> Self {
        Self {
            per_dim,
            reduced: true,
        }
    }

    /// Betti number in dimension `d` (0 beyond the stored range).
    pub fn get(&self, d: usize) -> usize {
        self.per_dim.get(d).copied().unwrap_or(0)
    }

    /// Largest dimension with a nonzero entry.
    pub fn top_dim(&self) -> Option<usize> {
        self.per_dim.iter().rposition(|&b| b > 0)
    }

    /// Converts to reduced form. Fails on a vector with β₀ = 0, which only
    /// arises for the empty complex.
    pub fn to_reduced(&self) -> Result<BettiVector> {
        if self.reduced {
            return Ok(self.clone());
        }
        if self.get(0) == 0 {
            return Err(Error::EmptyComplex("reduced Betti numbers are undefined"));
        }
        let mut per_dim = self.per_dim.clone();
        per_dim[0] -= 1;
        Ok(BettiVector::reduced(per_dim))
    }

    /// Converts to ordinary (unreduced) form.
    pub fn to_unreduced(&self) -> BettiVector {
        if !self.reduced {
            return self.clone();
        }
        let mut per_dim = self.per_dim.clone();
        if per_dim.is_empty() {
            per_dim.push(0);
        }
        per_dim[0] += 1;
        BettiVector::unreduced(per_dim)
    }

    /// Equality up to trailing zeros, requiring matching reduction flags.
    pub fn same_as(&self, other: &BettiVector) -> bool {
        if self.reduced != other.reduced {
            return false;
        }
        let len = self.per_dim.len().max(other.per_dim.len());
        (0..len).all(|d| self.get(d) == other.get(d))
    }

    /// Σ_d (−1)^d β_d; equals the Euler characteristic for unreduced input.
    pub fn alternating_sum(&self) -> i64 {
        self.per_dim
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// The boundary operator ∂_d as a Z/2 matrix: columns are the d-simplices,
/// rows the (d−1)-simplices, both in the lexicographic order of `table`.
///
/// ∂₀ maps into the zero module, so its matrix has no rows.
pub fn boundary_matrix(table: &SimplexTable, d: usize) -> GF2Matrix {
    let n_rows = if d == 0 { 0 } else { table.dim(d - 1).len() };
    let cols = table
        .dim(d)
        .iter()
        .map(|s| {
            if d == 0 {
                return Vec::new();
            }
            let mut rows: Vec<u32> = s
                .boundary_faces()
                .iter()
                .map(|f| {
                    table
                        .position(f)
                        .expect("face of an enumerated simplex is enumerated") as u32
                })
                .collect();
            rows.sort_unstable();
            rows
        })
        .collect();
    GF2Matrix::from_columns(n_rows, cols)
}

/// Betti numbers of a complex over Z/2, via rank–nullity:
/// β_d = #d-simplices − rank ∂_d − rank ∂_{d+1}.
pub fn betti(x: &SimplicialComplex, reduced: bool, budget: usize) -> Result<BettiVector> {
    if x.is_empty() {
        if reduced {
            return Err(Error::EmptyComplex("reduced Betti numbers are undefined"));
        }
        return Ok(BettiVector::unreduced(Vec::new()));
    }
    let table = x.enumerate(budget)?;
    let top = table.max_dim().unwrap_or(0);
    let mut ranks = vec![0usize; top + 2];
    for (d, rank) in ranks.iter_mut().enumerate().take(top + 1).skip(1) {
        *rank = boundary_matrix(&table, d).rank();
    }
    let per_dim: Vec<usize> = (0..=top)
        .map(|d| table.dim(d).len() - ranks[d] - ranks[d + 1])
        .collect();
    let vec = BettiVector::unreduced(per_dim);
    if reduced {
        vec.to_reduced()
    } else {
        Ok(vec)
    }
}
