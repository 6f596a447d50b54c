//! Persistent homology of level-filtered complexes over Z/2, and the rank of
//! inclusion-induced maps computed through a two-level filtration.

use std::collections::HashMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::xor_merge;
use crate::simplex::Simplex;

/// A totally ordered filtration: simplices with level labels, sorted by
/// (level, dimension, lexicographic vertices) so every face precedes its
/// cofaces.
#[derive(Clone, Debug)]
pub struct FiltrationOrder {
    entries: Vec<(Simplex, u32)>,
}

impl FiltrationOrder {
    /// Builds and validates a filtration from (simplex, level) pairs.
    ///
    /// Fails when a simplex has a face that is missing or enters at a later
    /// level, naming the offending pair.
    pub fn from_levels(levels: Vec<(Simplex, u32)>) -> Result<FiltrationOrder> {
        let mut entries = levels;
        entries.sort_unstable_by(|(a, fa), (b, fb)| {
            fa.cmp(fb)
                .then_with(|| a.dimension().cmp(&b.dimension()))
                .then_with(|| a.cmp(b))
        });
        let mut level_of: HashMap<&Simplex, u32> = HashMap::with_capacity(entries.len());
        for (s, f) in &entries {
            if level_of.insert(s, *f).is_some() {
                return Err(Error::InvalidFiltration {
                    simplex: s.clone(),
                    face: s.clone(),
                    reason: "appears at two levels",
                });
            }
        }
        for (s, f) in &entries {
            for face in s.boundary_faces() {
                match level_of.get(&face) {
                    None => {
                        return Err(Error::InvalidFiltration {
                            simplex: s.clone(),
                            face,
                            reason: "is missing",
                        })
                    }
                    Some(&ff) if ff > *f => {
                        return Err(Error::InvalidFiltration {
                            simplex: s.clone(),
                            face,
                            reason: "enters at a later level",
                        })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(FiltrationOrder { entries })
    }

    /// Every simplex of `x` at one common level.
    pub fn single_level(x: &SimplicialComplex, level: u32, budget: usize) -> Result<Self> {
        let table = x.enumerate(budget)?;
        Self::from_levels(table.iter().map(|s| (s.clone(), level)).collect())
    }

    /// The two-level filtration of an inclusion: simplices of `m` at level 1,
    /// the rest of `w` at level 2. Fails unless `m` ⊆ `w`.
    pub fn two_level(m: &SimplicialComplex, w: &SimplicialComplex, budget: usize) -> Result<Self> {
        if let Err(witness) = m.subcomplex_of(w) {
            return Err(Error::NotSubcomplex { witness });
        }
        let m_table = m.enumerate(budget)?;
        let w_table = w.enumerate(budget)?;
        let mut levels: Vec<(Simplex, u32)> = Vec::with_capacity(w_table.total());
        for s in w_table.iter() {
            let level = if m_table.position(s).is_some() { 1 } else { 2 };
            levels.push((s.clone(), level));
        }
        Self::from_levels(levels)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(Simplex, u32)] {
        &self.entries
    }
}

/// A persistence interval. `death == None` encodes an essential class.
/// The representative, when requested, is a cycle present at the birth level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub dim: usize,
    pub birth: u32,
    pub death: Option<u32>,
    pub representative: Option<Vec<Simplex>>,
}

impl Interval {
    /// True when the class exists at `level`.
    pub fn alive_at(&self, level: u32) -> bool {
        self.birth <= level && self.death.is_none_or(|d| d > level)
    }
}

/// Birth/death intervals of a filtration, zero-length pairs omitted.
#[derive(Clone, Debug, Default)]
pub struct PersistenceIntervals {
    pub intervals: Vec<Interval>,
}

impl PersistenceIntervals {
    /// Betti numbers of the complex at a given level.
    pub fn betti_at(&self, level: u32) -> Vec<usize> {
        let mut per_dim = Vec::new();
        for iv in &self.intervals {
            if iv.alive_at(level) {
                if per_dim.len() <= iv.dim {
                    per_dim.resize(iv.dim + 1, 0);
                }
                per_dim[iv.dim] += 1;
            }
        }
        per_dim
    }

    pub fn essential(&self) -> impl Iterator<Item = &Interval> {
        self.intervals.iter().filter(|iv| iv.death.is_none())
    }
}

/// Standard left-to-right column reduction of the filtered boundary matrix.
///
/// Pairs (i, j) with level(i) = level(j) are homologically invisible and are
/// dropped from the output; essential classes get `death = None`.
/// Representatives are the raw reduced columns: the killing column's cycle
/// for a finite interval, the creator's accumulated cycle for an essential
/// one. No cycle minimization is attempted.
pub fn persistence(order: &FiltrationOrder, with_representatives: bool) -> PersistenceIntervals {
    let entries = order.entries();
    let n = entries.len();
    let mut index_of: HashMap<&Simplex, usize> = HashMap::with_capacity(n);
    for (i, (s, _)) in entries.iter().enumerate() {
        index_of.insert(s, i);
    }

    // pivot row -> column index that owns it
    let mut owner_of_low: HashMap<u32, usize> = HashMap::new();
    let mut reduced: Vec<Vec<u32>> = Vec::with_capacity(n);
    // chain[j] = set of column indices whose boundaries sum to reduced[j]
    let mut chain: Vec<Vec<u32>> = Vec::with_capacity(n);
    let mut killer_of: Vec<Option<usize>> = vec![None; n];
    let mut is_creator: Vec<bool> = vec![false; n];

    for (j, (s, _)) in entries.iter().enumerate() {
        let mut col: Vec<u32> = s
            .boundary_faces()
            .iter()
            .map(|f| index_of[f] as u32)
            .collect();
        col.sort_unstable();
        let mut v_col: Vec<u32> = vec![j as u32];
        while let Some(&low) = col.last() {
            match owner_of_low.get(&low) {
                Some(&k) => {
                    col = xor_merge(&col, &reduced[k]);
                    if with_representatives {
                        v_col = xor_merge(&v_col, &chain[k]);
                    }
                }
                None => break,
            }
        }
        if let Some(&low) = col.last() {
            owner_of_low.insert(low, j);
            killer_of[low as usize] = Some(j);
        } else {
            is_creator[j] = true;
        }
        reduced.push(col);
        chain.push(if with_representatives { v_col } else { Vec::new() });
    }

    let mut intervals = Vec::new();
    for i in 0..n {
        if !is_creator[i] {
            continue;
        }
        let birth = entries[i].1;
        let dim = entries[i].0.dimension();
        match killer_of[i] {
            Some(j) => {
                let death = entries[j].1;
                if death == birth {
                    continue; // zero-length pair
                }
                let representative = with_representatives.then(|| {
                    reduced[j]
                        .iter()
                        .map(|&k| entries[k as usize].0.clone())
                        .collect()
                });
                intervals.push(Interval {
                    dim,
                    birth,
                    death: Some(death),
                    representative,
                });
            }
            None => {
                let representative = with_representatives.then(|| {
                    chain[i]
                        .iter()
                        .map(|&k| entries[k as usize].0.clone())
                        .collect()
                });
                intervals.push(Interval {
                    dim,
                    birth,
                    death: None,
                    representative,
                });
            }
        }
    }
    intervals.sort_by(|a, b| {
        (a.dim, a.birth, a.death.unwrap_or(u32::MAX)).cmp(&(
            b.dim,
            b.birth,
            b.death.unwrap_or(u32::MAX),
        ))
    });
    PersistenceIntervals { intervals }
}

/// Per-dimension rank of the map on homology induced by the inclusion
/// `m` ↪ `w`, together with the surviving intervals.
#[derive(Clone, Debug)]
pub struct InclusionRanks {
    pub per_dim: Vec<usize>,
    /// Intervals of the two-level filtration born at level 1 with no death:
    /// classes of `m` whose image in `w` is nonzero.
    pub survivors: Vec<Interval>,
}

impl InclusionRanks {
    pub fn rank(&self, d: usize) -> usize {
        self.per_dim.get(d).copied().unwrap_or(0)
    }
}

/// Computes the rank of H(m) → H(w) per dimension by running persistence on
/// the two-level filtration (m at level 1, w∖m at level 2) and counting the
/// intervals that are born at level 1 and never die.
pub fn inclusion_rank(
    m: &SimplicialComplex,
    w: &SimplicialComplex,
    with_representatives: bool,
    budget: usize,
) -> Result<InclusionRanks> {
    let order = FiltrationOrder::two_level(m, w, budget)?;
    let intervals = persistence(&order, with_representatives);
    let mut per_dim = Vec::new();
    let mut survivors = Vec::new();
    for iv in intervals.intervals {
        if iv.birth == 1 && iv.death.is_none() {
            if per_dim.len() <= iv.dim {
                per_dim.resize(iv.dim + 1, 0);
            }
            per_dim[iv.dim] += 1;
            survivors.push(iv);
        }
    }
    Ok(InclusionRanks { per_dim, survivors })
}
