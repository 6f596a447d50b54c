//! Sparse matrices over the two-element field.
//!
//! Columns are strictly increasing row-index lists; addition is symmetric
//! difference. This is all the linear algebra the homology engine needs.

/// A matrix over Z/2 in sparse column form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Matrix {
    n_rows: usize,
    cols: Vec<Vec<u32>>,
}

impl GF2Matrix {
    /// Builds a matrix from sparse columns. Each column must hold strictly
    /// increasing row indices below `n_rows`.
    pub fn from_columns(n_rows: usize, cols: Vec<Vec<u32>>) -> Self {
        debug_assert!(cols.iter().all(|c| {
            c.windows(2).all(|w| w[0] < w[1]) && c.iter().all(|&r| (r as usize) < n_rows)
        }));
        Self { n_rows, cols }
    }

    pub fn zero(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            cols: vec![Vec::new(); n_cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_rows: n,
            cols: (0..n as u32).map(|i| vec![i]).collect(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[u32] {
        &self.cols[j]
    }

    /// Matrix product over Z/2. Used by tests to verify ∂∘∂ = 0.
    pub fn multiply(&self, rhs: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.n_cols(), rhs.n_rows());
        let cols = rhs
            .cols
            .iter()
            .map(|rc| {
                let mut acc: Vec<u32> = Vec::new();
                for &k in rc {
                    acc = xor_merge(&acc, &self.cols[k as usize]);
                }
                acc
            })
            .collect();
        GF2Matrix {
            n_rows: self.n_rows,
            cols,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Rank over Z/2 by column elimination.
    ///
    /// Columns are reduced left to right against the pivots found so far
    /// (pivot = largest row index of a column), which keeps the procedure
    /// deterministic.
    pub fn rank(&self) -> usize {
        let mut pivots: std::collections::HashMap<u32, Vec<u32>> =
            std::collections::HashMap::new();
        let mut rank = 0;
        for col in &self.cols {
            let mut cur = col.clone();
            while let Some(&low) = cur.last() {
                match pivots.get(&low) {
                    Some(p) => cur = xor_merge(&cur, p),
                    None => break,
                }
            }
            if let Some(&low) = cur.last() {
                pivots.insert(low, cur);
                rank += 1;
            }
        }
        rank
    }
}

/// Symmetric difference of two strictly increasing index lists.
pub fn xor_merge(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_merge_cancels() {
        assert_eq!(xor_merge(&[0, 1, 3], &[1, 2]), vec![0, 2, 3]);
        assert_eq!(xor_merge(&[5], &[5]), Vec::<u32>::new());
        assert_eq!(xor_merge(&[], &[7]), vec![7]);
    }

    #[test]
    fn rank_of_identity() {
        assert_eq!(GF2Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn rank_of_zero() {
        assert_eq!(GF2Matrix::zero(4, 3).rank(), 0);
    }

    #[test]
    fn rank_of_hollow_triangle_incidence() {
        // ∂₁ of the hollow triangle: columns are the three edges.
        let m = GF2Matrix::from_columns(3, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        // Hand elimination: col3 = col1 + col2, so rank 2.
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rank_of_dependent_columns() {
        let m = GF2Matrix::from_columns(3, vec![vec![0, 1], vec![0, 1], vec![1, 2]]);
        assert_eq!(m.rank(), 2);
    }
}
