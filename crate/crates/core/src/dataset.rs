//! Binary observation datasets and the descending frequency-filtered
//! concurrence (Curto-Itskov) complex.
//!
//! A simplex is a set of variables that are simultaneously 1 in at least one
//! observation; the frame-f complex keeps those sets seen in at least f
//! observations. Rows are stored as bitmasks, which caps the variable count
//! at 64.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// Hard ceiling on variable count imposed by the bitmask row encoding.
pub const MAX_VARIABLES: usize = 64;

/// T observations of n binary variables. Row bit i corresponds to column i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryDataset {
    names: Vec<String>,
    rows: Vec<u64>,
}

impl BinaryDataset {
    /// Validates names (non-empty, distinct, at most 64) and rows
    /// (at least one, no bits beyond the column count).
    pub fn from_rows(names: Vec<String>, rows: Vec<u64>) -> Result<BinaryDataset> {
        if names.is_empty() {
            return Err(Error::InvalidArgument("dataset needs at least one variable".into()));
        }
        if names.len() > MAX_VARIABLES {
            return Err(Error::InvalidArgument(format!(
                "{} variables exceed the supported maximum of {MAX_VARIABLES}",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidArgument(format!("variable {} has an empty name", i + 1)));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidArgument(format!("duplicate variable name {name:?}")));
            }
        }
        if rows.is_empty() {
            return Err(Error::InvalidArgument("T >= 1 required: dataset has no rows".into()));
        }
        let valid = if names.len() == 64 { u64::MAX } else { (1u64 << names.len()) - 1 };
        if let Some(bad) = rows.iter().find(|r| **r & !valid != 0) {
            return Err(Error::InvalidArgument(format!(
                "row mask {bad:#x} sets bits beyond the {} columns",
                names.len()
            )));
        }
        Ok(BinaryDataset { names, rows })
    }

    /// Parses header-plus-body CSV. Cells must be single 0/1 digits
    /// (surrounding blanks tolerated). Errors carry 1-based row and column
    /// positions, counting the header as row 1.
    pub fn parse_csv(text: &str) -> Result<BinaryDataset> {
        let mut lines = text.lines().enumerate();
        let header = match lines.next() {
            Some((_, h)) if !h.trim().is_empty() => h,
            _ => {
                return Err(Error::Parse { row: 1, col: 1, msg: "missing header row".into() })
            }
        };
        let names: Vec<String> = header.split(',').map(|s| s.trim().to_string()).collect();
        if names.len() > MAX_VARIABLES {
            return Err(Error::Parse {
                row: 1,
                col: MAX_VARIABLES + 1,
                msg: format!("{} variables exceed the supported maximum of {MAX_VARIABLES}", names.len()),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Parse { row: 1, col: i + 1, msg: "empty variable name".into() });
            }
            if let Some(j) = names[..i].iter().position(|x| x == name) {
                return Err(Error::Parse {
                    row: 1,
                    col: i + 1,
                    msg: format!("duplicate variable name {name:?} (first at column {})", j + 1),
                });
            }
        }
        let mut rows = Vec::new();
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let row_pos = lineno + 1;
            let cells: Vec<&str> = line.split(',').collect();
            if cells.len() != names.len() {
                return Err(Error::Parse {
                    row: row_pos,
                    col: cells.len().min(names.len()) + 1,
                    msg: format!("row has {} values, expected {}", cells.len(), names.len()),
                });
            }
            let mut mask = 0u64;
            for (i, cell) in cells.iter().enumerate() {
                match cell.trim() {
                    "0" => {}
                    "1" => mask |= 1 << i,
                    other => {
                        return Err(Error::Parse {
                            row: row_pos,
                            col: i + 1,
                            msg: format!("expected 0 or 1, found {other:?}"),
                        })
                    }
                }
            }
            rows.push(mask);
        }
        if rows.is_empty() {
            return Err(Error::Parse { row: 2, col: 1, msg: "T >= 1 required: no data rows".into() });
        }
        Ok(BinaryDataset { names, rows })
    }

    /// Serializes back to the ingest format: LF line endings, trailing newline.
    pub fn to_csv(&self) -> String {
        let mut out = self.names.join(",");
        out.push('\n');
        for &row in &self.rows {
            for i in 0..self.names.len() {
                if i > 0 {
                    out.push(',');
                }
                out.push(if row >> i & 1 == 1 { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn t(&self) -> usize {
        self.rows.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    /// Occurrences of 1 per column.
    pub fn column_sums(&self) -> Vec<usize> {
        let mut sums = vec![0usize; self.names.len()];
        for &row in &self.rows {
            for (i, sum) in sums.iter_mut().enumerate() {
                *sum += (row >> i & 1) as usize;
            }
        }
        sums
    }

    /// Keeps only the named columns, in the dataset's own column order.
    /// Row count is unchanged; rows whose kept part is all zero stay as
    /// zero rows.
    pub fn restrict(&self, keep: &[String]) -> Result<BinaryDataset> {
        for name in keep {
            if self.column_index(name).is_none() {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let kept: Vec<usize> = (0..self.names.len())
            .filter(|i| keep.contains(&self.names[*i]))
            .collect();
        if kept.is_empty() {
            return Err(Error::InvalidArgument("restriction keeps no variables".into()));
        }
        let names = kept.iter().map(|&i| self.names[i].clone()).collect();
        let rows = self
            .rows
            .iter()
            .map(|&row| {
                kept.iter()
                    .enumerate()
                    .fold(0u64, |acc, (new, &old)| acc | (row >> old & 1) << new)
            })
            .collect();
        BinaryDataset::from_rows(names, rows)
    }

    /// The support simplex of one row; `None` for the all-zero row.
    pub fn support(row: u64) -> Option<Simplex> {
        if row == 0 {
            return None;
        }
        let ids = (0u32..64).filter(|i| row >> i & 1 == 1);
        Some(Simplex::from_ids(ids).expect("bit positions are distinct"))
    }

    pub fn pattern_table(&self) -> PatternTable {
        let mut entries: BTreeMap<u64, u32> = BTreeMap::new();
        let mut zero_rows = 0u32;
        for &row in &self.rows {
            if row == 0 {
                zero_rows += 1;
            } else {
                *entries.entry(row).or_insert(0) += 1;
            }
        }
        PatternTable { entries, zero_rows }
    }
}

/// Multiset of distinct non-zero support patterns, with all-zero rows
/// counted separately (they support no simplex but did happen).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternTable {
    entries: BTreeMap<u64, u32>,
    zero_rows: u32,
}

impl PatternTable {
    pub fn entries(&self) -> &BTreeMap<u64, u32> {
        &self.entries
    }

    pub fn zero_rows(&self) -> u32 {
        self.zero_rows
    }

    pub fn total_rows(&self) -> u32 {
        self.entries.values().sum::<u32>() + self.zero_rows
    }

    /// Observations whose support contains every bit of `mask`.
    pub fn count_mask(&self, mask: u64) -> u32 {
        self.entries
            .iter()
            .filter(|(p, _)| *p & mask == mask)
            .map(|(_, c)| c)
            .sum()
    }

    /// JSON object mapping "name|name|..." (names sorted) to multiplicity;
    /// all-zero rows appear under the empty key when present.
    pub fn to_json(&self, names: &[String]) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (&pattern, &count) in &self.entries {
            let mut parts: Vec<&str> = (0..names.len())
                .filter(|i| pattern >> i & 1 == 1)
                .map(|i| names[i].as_str())
                .collect();
            parts.sort_unstable();
            map.insert(parts.join("|"), count.into());
        }
        if self.zero_rows > 0 {
            map.insert(String::new(), self.zero_rows.into());
        }
        serde_json::Value::Object(map)
    }
}

/// The descending frequency filtration f -> M_f of a dataset: sigma is in
/// M_f exactly when count(sigma) >= f, where count(sigma) is the number of
/// observations whose support contains sigma.
#[derive(Clone, Debug)]
pub struct FilteredConcurrence {
    table: PatternTable,
    max_frame: u32,
    candidate_cap: usize,
}

impl FilteredConcurrence {
    pub fn new(dataset: &BinaryDataset, candidate_cap: usize) -> FilteredConcurrence {
        let table = dataset.pattern_table();
        let max_frame = dataset.column_sums().into_iter().max().unwrap_or(0) as u32;
        FilteredConcurrence { table, max_frame, candidate_cap }
    }

    pub fn table(&self) -> &PatternTable {
        &self.table
    }

    /// Largest f with a non-empty frame; 0 for an all-zero dataset.
    pub fn max_frame(&self) -> u32 {
        self.max_frame
    }

    pub fn count(&self, simplex: &Simplex) -> u32 {
        let mask = simplex
            .vertices()
            .iter()
            .fold(0u64, |acc, v| acc | 1 << v.0);
        self.table.count_mask(mask)
    }

    /// The frame-f complex by facets. Empty above `max_frame`; an error for
    /// f = 0, which the filtration does not define.
    ///
    /// Every maximal simplex of M_f is the intersection of the observed
    /// patterns containing it, so the facet candidates are exactly the
    /// intersection closure of the pattern set. The closure size is capped.
    pub fn frame(&self, f: u32) -> Result<SimplicialComplex> {
        if f == 0 {
            return Err(Error::InvalidArgument("frame index must be at least 1".into()));
        }
        if f > self.max_frame {
            return Ok(SimplicialComplex::empty());
        }
        let patterns: Vec<u64> = self.table.entries().keys().copied().collect();
        let mut seen: BTreeSet<u64> = patterns.iter().copied().collect();
        let mut queue: Vec<u64> = patterns.clone();
        while let Some(a) = queue.pop() {
            for &p in &patterns {
                let c = a & p;
                if c != 0 && seen.insert(c) {
                    if seen.len() > self.candidate_cap {
                        return Err(Error::BudgetExceeded { budget: self.candidate_cap });
                    }
                    queue.push(c);
                }
            }
        }
        let mut survivors: Vec<u64> = seen
            .into_iter()
            .filter(|&c| self.table.count_mask(c) >= f)
            .collect();
        // Maximal elements only: order by descending popcount, drop dominated.
        survivors.sort_unstable_by_key(|&c| (std::cmp::Reverse(c.count_ones()), c));
        let mut maximal: Vec<u64> = Vec::new();
        for c in survivors {
            if !maximal.iter().any(|&m| m & c == c) {
                maximal.push(c);
            }
        }
        let facets = maximal
            .into_iter()
            .map(|m| BinaryDataset::support(m).expect("maximal candidates are non-zero"))
            .collect();
        Ok(SimplicialComplex::closure(facets))
    }
}

/// Convenience wrapper: the frame-f concurrence complex of a dataset.
pub fn concurrence_frame(dataset: &BinaryDataset, f: u32, cap: usize) -> Result<SimplicialComplex> {
    FilteredConcurrence::new(dataset, cap).frame(f)
}
