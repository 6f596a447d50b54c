//! The six-step independence procedure: restrict to the grouped variables,
//! build the frame complex M, project to the group complexes K and L, join,
//! and measure which classes of M survive into K*L through the two-level
//! filtration. Kunneth-style predictions for joins and products are included
//! as built-in oracles.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::DEFAULT_BUDGET;
use crate::dataset::{BinaryDataset, FilteredConcurrence};
use crate::error::{Error, Result};
use crate::homology::{betti, BettiVector};
use crate::interchange::IntervalJson;
use crate::persistence::inclusion_rank;
use crate::simplex::VertexId;

/// Two disjoint, non-empty, ordered variable groups. Variables outside the
/// union are eliminated before analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grouping {
    group_a: Vec<String>,
    group_b: Vec<String>,
}

impl Grouping {
    pub fn new(group_a: Vec<String>, group_b: Vec<String>) -> Result<Grouping> {
        if group_a.is_empty() || group_b.is_empty() {
            return Err(Error::InvalidArgument("both groups need at least one variable".into()));
        }
        for (side, group) in [("A", &group_a), ("B", &group_b)] {
            for (i, name) in group.iter().enumerate() {
                if group[..i].contains(name) {
                    return Err(Error::InvalidArgument(format!(
                        "group {side} lists {name:?} twice"
                    )));
                }
            }
        }
        if let Some(shared) = group_a.iter().find(|n| group_b.contains(n)) {
            return Err(Error::InvalidArgument(format!(
                "groups must be disjoint; {shared:?} is in both"
            )));
        }
        Ok(Grouping { group_a, group_b })
    }

    pub fn group_a(&self) -> &[String] {
        &self.group_a
    }

    pub fn group_b(&self) -> &[String] {
        &self.group_b
    }

    /// A's names followed by B's.
    pub fn union(&self) -> Vec<String> {
        self.group_a.iter().chain(&self.group_b).cloned().collect()
    }
}

/// Which frames to analyze.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameSelection {
    /// 1 through max_frame.
    All,
    /// An inclusive range; frames beyond max_frame report as empty.
    Range { lo: u32, hi: u32 },
}

impl FrameSelection {
    /// Accepts "all", a single frame "3", or an inclusive range "1..5".
    pub fn parse(text: &str) -> Result<FrameSelection> {
        let text = text.trim();
        if text.eq_ignore_ascii_case("all") {
            return Ok(FrameSelection::All);
        }
        let parse_level = |part: &str| -> Result<u32> {
            part.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidArgument(format!("bad frame number {part:?}")))
        };
        let (lo, hi) = match text.split_once("..") {
            Some((a, b)) => (parse_level(a)?, parse_level(b)?),
            None => {
                let f = parse_level(text)?;
                (f, f)
            }
        };
        if lo < 1 {
            return Err(Error::InvalidArgument("frames start at 1".into()));
        }
        if lo > hi {
            return Err(Error::InvalidArgument(format!("empty frame range {lo}..{hi}")));
        }
        Ok(FrameSelection::Range { lo, hi })
    }
}

/// Tuning knobs for an analysis run.
#[derive(Clone, Copy, Debug)]
pub struct AnalyzeOptions {
    /// Attach representative cycles to lifespan-2 classes.
    pub with_representatives: bool,
    /// Simplex enumeration budget for homology.
    pub budget: usize,
    /// Cap on the intersection-closure candidate set per frame.
    pub candidate_cap: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            with_representatives: false,
            budget: DEFAULT_BUDGET,
            candidate_cap: DEFAULT_BUDGET,
        }
    }
}

/// Why a frame has no join analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrameStatus {
    /// Full analysis ran.
    Ok,
    /// M_f is empty (frame beyond the data).
    EmptyFrame,
    /// The projection to group A is empty; join undefined.
    EmptyGroupA,
    /// The projection to group B is empty; join undefined.
    EmptyGroupB,
}

/// Per-frame analysis results. Betti vectors are unreduced; absent fields
/// correspond to the skipped join when a side is empty.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrameReport {
    pub frame: u32,
    pub status: FrameStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_m: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_k: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_l: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_join: Option<Vec<usize>>,
    /// Unreduced Betti vector of the join as predicted from betti_k and
    /// betti_l alone.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kunneth_prediction: Option<Vec<usize>>,
    /// Rank of H_d(M) -> H_d(K*L) per dimension, padded to the join's
    /// dimension range.
    pub inclusion_ranks: Vec<usize>,
    /// Classes born in M that survive into the join (birth 1, death inf).
    pub lifespan2_classes: Vec<IntervalJson>,
    /// Whether K and L embed back into M_f at this frame.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_union_l_in_m: Option<bool>,
    /// |facets(M_f)| / |facets(K*L)|, a descriptive closeness statistic.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub facet_ratio: Option<f64>,
}

impl FrameReport {
    fn empty(frame: u32, status: FrameStatus) -> FrameReport {
        FrameReport {
            frame,
            status,
            betti_m: None,
            betti_k: None,
            betti_l: None,
            betti_join: None,
            kunneth_prediction: None,
            inclusion_ranks: Vec::new(),
            lifespan2_classes: Vec::new(),
            k_union_l_in_m: None,
            facet_ratio: None,
        }
    }

    pub fn rank(&self, d: usize) -> usize {
        self.inclusion_ranks.get(d).copied().unwrap_or(0)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupingJson {
    pub group_a: Vec<String>,
    pub group_b: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DatasetSummary {
    /// Observation count of the restricted dataset.
    pub t: usize,
    /// Variables analyzed (the grouping union).
    pub n: usize,
    /// Rows that are all-zero after restriction.
    pub zero_rows: u32,
    pub max_frame: u32,
}

/// Full output of `analyze`: one report per requested frame, descending,
/// plus per-dimension maximal runs of frames with positive inclusion rank.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IndependenceReport {
    pub grouping: GroupingJson,
    pub frames: Vec<FrameReport>,
    pub frequency_lifespans: BTreeMap<usize, Vec<(u32, u32)>>,
    pub summary: DatasetSummary,
}

/// Prepared analysis state: the restricted dataset, its frequency
/// filtration, and the vertex ids of each group.
#[derive(Clone, Debug)]
pub struct Analysis {
    restricted: BinaryDataset,
    filtration: FilteredConcurrence,
    a_ids: BTreeSet<VertexId>,
    b_ids: BTreeSet<VertexId>,
    grouping: Grouping,
    options: AnalyzeOptions,
}

impl Analysis {
    pub fn new(
        dataset: &BinaryDataset,
        grouping: Grouping,
        options: AnalyzeOptions,
    ) -> Result<Analysis> {
        let restricted = dataset.restrict(&grouping.union())?;
        let ids_of = |names: &[String]| -> BTreeSet<VertexId> {
            names
                .iter()
                .map(|n| {
                    VertexId(restricted.column_index(n).expect("restricted keeps the group") as u32)
                })
                .collect()
        };
        let a_ids = ids_of(grouping.group_a());
        let b_ids = ids_of(grouping.group_b());
        let filtration = FilteredConcurrence::new(&restricted, options.candidate_cap);
        Ok(Analysis { restricted, filtration, a_ids, b_ids, grouping, options })
    }

    pub fn restricted(&self) -> &BinaryDataset {
        &self.restricted
    }

    pub fn filtration(&self) -> &FilteredConcurrence {
        &self.filtration
    }

    pub fn max_frame(&self) -> u32 {
        self.filtration.max_frame()
    }

    /// Steps 2 through 6 at a single frequency level.
    pub fn frame_report(&self, f: u32) -> Result<FrameReport> {
        let budget = self.options.budget;
        let m = self.filtration.frame(f)?;
        if m.is_empty() {
            return Ok(FrameReport::empty(f, FrameStatus::EmptyFrame));
        }
        let k = m.project(&self.a_ids);
        let l = m.project(&self.b_ids);
        let betti_m = betti(&m, false, budget)?;
        if k.is_empty() || l.is_empty() {
            let status = if k.is_empty() { FrameStatus::EmptyGroupA } else { FrameStatus::EmptyGroupB };
            let mut report = FrameReport::empty(f, status);
            report.betti_m = Some(betti_m.per_dim.clone());
            report.betti_k = (!k.is_empty()).then(|| betti(&k, false, budget)).transpose()?.map(|b| b.per_dim);
            report.betti_l = (!l.is_empty()).then(|| betti(&l, false, budget)).transpose()?.map(|b| b.per_dim);
            return Ok(report);
        }
        let w = k.join(&l)?;
        let betti_k = betti(&k, false, budget)?;
        let betti_l = betti(&l, false, budget)?;
        let betti_join = betti(&w, false, budget)?;
        let prediction = kunneth_join_prediction(&betti_k, &betti_l)?.to_unreduced();
        let ranks = inclusion_rank(&m, &w, self.options.with_representatives, budget)?;

        let mut inclusion_ranks = ranks.per_dim.clone();
        inclusion_ranks.resize(inclusion_ranks.len().max(betti_join.per_dim.len()), 0);
        debug_assert!(inclusion_ranks
            .iter()
            .enumerate()
            .all(|(d, &r)| r <= betti_m.get(d).min(betti_join.get(d))));

        let lifespan2_classes = ranks
            .survivors
            .iter()
            .map(|iv| {
                IntervalJson::from_interval(iv, self.options.with_representatives, |v| {
                    self.restricted.names()[v.0 as usize].clone()
                })
            })
            .collect();
        let k_union_l_in_m = k.facets().iter().chain(l.facets()).all(|s| m.contains(s));
        let facet_ratio = m.facets().len() as f64 / w.facets().len() as f64;

        Ok(FrameReport {
            frame: f,
            status: FrameStatus::Ok,
            betti_m: Some(betti_m.per_dim),
            betti_k: Some(betti_k.per_dim),
            betti_l: Some(betti_l.per_dim),
            betti_join: Some(betti_join.per_dim),
            kunneth_prediction: Some(prediction.per_dim),
            inclusion_ranks,
            lifespan2_classes,
            k_union_l_in_m: Some(k_union_l_in_m),
            facet_ratio: Some(facet_ratio),
        })
    }

    /// Reports for every requested frame, descending, plus the maximal runs
    /// of consecutive frames with positive inclusion rank per dimension.
    pub fn run(&self, selection: FrameSelection) -> Result<IndependenceReport> {
        let (lo, hi) = match selection {
            FrameSelection::All => (1, self.max_frame()),
            FrameSelection::Range { lo, hi } => (lo, hi),
        };
        let mut frames = Vec::new();
        for f in (lo..=hi).rev() {
            frames.push(self.frame_report(f)?);
        }

        let mut frequency_lifespans: BTreeMap<usize, Vec<(u32, u32)>> = BTreeMap::new();
        let max_dims = frames.iter().map(|r| r.inclusion_ranks.len()).max().unwrap_or(0);
        for d in 0..max_dims {
            let mut runs: Vec<(u32, u32)> = Vec::new();
            for report in frames.iter().rev() {
                if report.rank(d) == 0 {
                    continue;
                }
                match runs.last_mut() {
                    Some(run) if run.1 + 1 == report.frame => run.1 = report.frame,
                    _ => runs.push((report.frame, report.frame)),
                }
            }
            if !runs.is_empty() {
                frequency_lifespans.insert(d, runs);
            }
        }

        Ok(IndependenceReport {
            grouping: GroupingJson {
                group_a: self.grouping.group_a().to_vec(),
                group_b: self.grouping.group_b().to_vec(),
            },
            frames,
            frequency_lifespans,
            summary: DatasetSummary {
                t: self.restricted.t(),
                n: self.restricted.n(),
                zero_rows: self.filtration.table().zero_rows(),
                max_frame: self.max_frame(),
            },
        })
    }
}

/// One-shot frame analysis.
pub fn analyze_frame(
    dataset: &BinaryDataset,
    grouping: Grouping,
    f: u32,
    options: AnalyzeOptions,
) -> Result<FrameReport> {
    Analysis::new(dataset, grouping, options)?.frame_report(f)
}

/// One-shot full analysis.
pub fn analyze(
    dataset: &BinaryDataset,
    grouping: Grouping,
    selection: FrameSelection,
    options: AnalyzeOptions,
) -> Result<IndependenceReport> {
    Analysis::new(dataset, grouping, options)?.run(selection)
}

/// Predicted reduced Betti vector of the join from the factors' Betti
/// vectors (converted to reduced internally): over Z/2 the join satisfies
/// reduced beta_{p+q+1}(K*L) = sum over p+q of reduced beta_p(K) *
/// reduced beta_q(L), and the join of non-empty complexes is path-connected.
pub fn kunneth_join_prediction(bk: &BettiVector, bl: &BettiVector) -> Result<BettiVector> {
    let bk = bk.to_reduced()?;
    let bl = bl.to_reduced()?;
    let mut per_dim = vec![0usize; bk.per_dim.len() + bl.per_dim.len()];
    for (p, &a) in bk.per_dim.iter().enumerate() {
        for (q, &b) in bl.per_dim.iter().enumerate() {
            per_dim[p + q + 1] += a * b;
        }
    }
    Ok(BettiVector::reduced(per_dim))
}

/// Field Kunneth for products: the unreduced Betti vector of |K| x |L| is
/// the convolution of the factors' unreduced Betti vectors.
pub fn kunneth_product_prediction(bk: &BettiVector, bl: &BettiVector) -> BettiVector {
    let bk = bk.to_unreduced();
    let bl = bl.to_unreduced();
    if bk.per_dim.is_empty() || bl.per_dim.is_empty() {
        return BettiVector::unreduced(Vec::new());
    }
    let mut per_dim = vec![0usize; bk.per_dim.len() + bl.per_dim.len() - 1];
    for (p, &a) in bk.per_dim.iter().enumerate() {
        for (q, &b) in bl.per_dim.iter().enumerate() {
            per_dim[p + q] += a * b;
        }
    }
    BettiVector::unreduced(per_dim)
}
