//! Deliberately simple dense Z/2 homology oracle, independent of the
//! library's sparse machinery. Works on raw facet lists (vertex ids), builds
//! full boolean boundary matrices, and row-reduces them.

use std::collections::BTreeSet;

/// Rank of a dense boolean matrix by Gauss-Jordan elimination.
pub fn dense_rank(mut m: Vec<Vec<bool>>) -> usize {
    let rows = m.len();
    if rows == 0 || m[0].is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][c]) else {
            continue;
        };
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] {
                for k in 0..cols {
                    row[k] ^= pivot_row[k];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// All simplices of the closure of `facets`, grouped by dimension, each a
/// sorted vertex list.
pub fn enumerate_closure(facets: &[Vec<u32>]) -> Vec<Vec<Vec<u32>>> {
    let mut seen: BTreeSet<Vec<u32>> = BTreeSet::new();
    for facet in facets {
        let mut sorted = facet.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let n = sorted.len();
        assert!(n < 24, "oracle facets stay small");
        for mask in 1u32..(1 << n) {
            let subset: Vec<u32> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| sorted[i]).collect();
            seen.insert(subset);
        }
    }
    let max_dim = seen.iter().map(|s| s.len() - 1).max().unwrap_or(0);
    let mut by_dim = vec![Vec::new(); max_dim + 1];
    for simplex in seen {
        by_dim[simplex.len() - 1].push(simplex);
    }
    by_dim
}

/// Unreduced Z/2 Betti numbers of the closure of `facets`, via dense
/// rank-nullity: beta_d = n_d - rank d_d - rank d_{d+1}.
pub fn dense_betti(facets: &[Vec<u32>]) -> Vec<usize> {
    if facets.is_empty() {
        return Vec::new();
    }
    let by_dim = enumerate_closure(facets);
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || d >= by_dim.len() || by_dim[d].is_empty() {
            return 0;
        }
        let rows = &by_dim[d - 1];
        let cols = &by_dim[d];
        let mut m = vec![vec![false; cols.len()]; rows.len()];
        for (j, simplex) in cols.iter().enumerate() {
            for skip in 0..simplex.len() {
                let mut face = simplex.clone();
                face.remove(skip);
                let i = rows.binary_search(&face).expect("closure contains every face");
                m[i][j] = true;
            }
        }
        dense_rank(m)
    };
    (0..by_dim.len())
        .map(|d| by_dim[d].len() - boundary_rank(d) - boundary_rank(d + 1))
        .collect()
}

/// Total simplex count of the closure.
pub fn closure_size(facets: &[Vec<u32>]) -> usize {
    enumerate_closure(facets).iter().map(|v| v.len()).sum()
}

/// Trailing-zero-insensitive equality of Betti vectors.
pub fn betti_eq(a: &[usize], b: &[usize]) -> bool {
    let len = a.len().max(b.len());
    (0..len).all(|d| a.get(d).copied().unwrap_or(0) == b.get(d).copied().unwrap_or(0))
}
