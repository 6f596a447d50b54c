//! Randomized consistency properties of the concurrence pipeline:
//! projection/restriction commutation, row and column permutation behavior,
//! the descending filtration, and pattern-table counting.

use std::collections::BTreeSet;

use concurtop::dataset::{concurrence_frame, BinaryDataset, FilteredConcurrence};
use concurtop::pipeline::{analyze, AnalyzeOptions, FrameSelection, Grouping};
use concurtop::synth::SplitMix64;
use concurtop::{Simplex, SimplicialComplex, VertexId, DEFAULT_BUDGET};

fn random_dataset(rng: &mut SplitMix64, max_n: usize, max_t: usize) -> BinaryDataset {
    let n = 2 + (rng.next_u64() as usize) % (max_n - 1);
    let t = 1 + (rng.next_u64() as usize) % max_t;
    let names = (0..n).map(|i| format!("V{i}")).collect();
    let rows = (0..t)
        .map(|_| {
            // Keep supports sparse enough for interesting small complexes.
            let a = rng.next_u64();
            let b = rng.next_u64();
            a & b & ((1 << n) - 1)
        })
        .collect();
    BinaryDataset::from_rows(names, rows).unwrap()
}

/// Relabels a projected complex (original column ids) to restricted
/// positions so both sides of the commutation square are comparable.
fn relabel(projected: &SimplicialComplex, kept: &[usize]) -> SimplicialComplex {
    SimplicialComplex::closure(
        projected
            .facets()
            .iter()
            .map(|s| {
                Simplex::from_ids(s.vertices().iter().map(|v| {
                    kept.iter().position(|&k| k as u32 == v.0).unwrap() as u32
                }))
                .unwrap()
            })
            .collect(),
    )
}

#[test]
fn projection_commutes_with_restriction() {
    let mut rng = SplitMix64::new(501);
    for _ in 0..50 {
        let d = random_dataset(&mut rng, 10, 100);
        let kept: Vec<usize> = (0..d.n())
            .filter(|_| rng.next_u64() & 1 == 1)
            .collect();
        if kept.is_empty() {
            continue;
        }
        let keep_names: Vec<String> = kept.iter().map(|&i| d.names()[i].clone()).collect();
        let restricted = d.restrict(&keep_names).unwrap();
        let ids: BTreeSet<VertexId> = kept.iter().map(|&i| VertexId(i as u32)).collect();
        let max_f = FilteredConcurrence::new(&restricted, DEFAULT_BUDGET).max_frame();
        for f in 1..=max_f.min(4) {
            let lhs = concurrence_frame(&restricted, f, DEFAULT_BUDGET).unwrap();
            let rhs = relabel(
                &concurrence_frame(&d, f, DEFAULT_BUDGET).unwrap().project(&ids),
                &kept,
            );
            assert_eq!(lhs.facets(), rhs.facets(), "frame {f} of {:?}", d.rows());
        }
    }
}

#[test]
fn frames_descend_everywhere() {
    let mut rng = SplitMix64::new(502);
    for _ in 0..30 {
        let d = random_dataset(&mut rng, 10, 60);
        let fc = FilteredConcurrence::new(&d, DEFAULT_BUDGET);
        let mut prev: Option<SimplicialComplex> = None;
        for f in 1..=fc.max_frame() {
            let m = fc.frame(f).unwrap();
            if let Some(bigger) = prev {
                assert!(
                    m.subcomplex_of(&bigger).is_ok(),
                    "frame {f} escapes frame {}",
                    f - 1
                );
            }
            prev = Some(m);
        }
    }
}

#[test]
fn counts_match_row_scans_up_to_dim_3() {
    let mut rng = SplitMix64::new(503);
    for _ in 0..20 {
        let d = random_dataset(&mut rng, 10, 40);
        let fc = FilteredConcurrence::new(&d, DEFAULT_BUDGET);
        let n = d.n();
        for mask in 1u64..(1 << n) {
            if mask.count_ones() > 4 {
                continue;
            }
            let simplex = BinaryDataset::support(mask).unwrap();
            let brute = d.rows().iter().filter(|&&r| r & mask == mask).count() as u32;
            assert_eq!(fc.count(&simplex), brute);
        }
    }
}

fn grid_groups() -> Grouping {
    Grouping::new(
        vec!["V0".into(), "V1".into(), "V2".into()],
        vec!["V3".into(), "V4".into(), "V5".into()],
    )
    .unwrap()
}

fn random_grid_like(rng: &mut SplitMix64, t: usize) -> BinaryDataset {
    let names = (0..6).map(|i| format!("V{i}")).collect();
    let rows = (0..t).map(|_| rng.next_u64() & 0x3F).collect();
    BinaryDataset::from_rows(names, rows).unwrap()
}

#[test]
fn row_permutation_leaves_reports_unchanged() {
    let mut rng = SplitMix64::new(504);
    for _ in 0..15 {
        let t = 2 + (rng.next_u64() as usize) % 40;
        let d = random_grid_like(&mut rng, t);
        let mut rows = d.rows().to_vec();
        // Deterministic Fisher-Yates.
        for i in (1..rows.len()).rev() {
            let j = (rng.next_u64() as usize) % (i + 1);
            rows.swap(i, j);
        }
        let shuffled = BinaryDataset::from_rows(d.names().to_vec(), rows).unwrap();
        let options = AnalyzeOptions::default();
        let a = analyze(&d, grid_groups(), FrameSelection::All, options).unwrap();
        let b = analyze(&shuffled, grid_groups(), FrameSelection::All, options).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}

#[test]
fn column_permutation_within_groups_preserves_ranks() {
    let mut rng = SplitMix64::new(505);
    for _ in 0..15 {
        let t = 2 + (rng.next_u64() as usize) % 40;
        let d = random_grid_like(&mut rng, t);
        // Swap two columns inside group A and two inside group B by
        // permuting the bits of every row; names keep their column slots,
        // so this relabels variables without moving the grouping.
        let permuted_rows: Vec<u64> = d
            .rows()
            .iter()
            .map(|&r| {
                let bit = |i: u64| r >> i & 1;
                bit(1) | bit(2) << 1 | bit(0) << 2 | bit(4) << 3 | bit(3) << 4 | bit(5) << 5
            })
            .collect();
        let permuted = BinaryDataset::from_rows(d.names().to_vec(), permuted_rows).unwrap();
        let options = AnalyzeOptions::default();
        let a = analyze(&d, grid_groups(), FrameSelection::All, options).unwrap();
        let b = analyze(&permuted, grid_groups(), FrameSelection::All, options).unwrap();
        assert_eq!(a.frequency_lifespans, b.frequency_lifespans);
        for (fa, fb) in a.frames.iter().zip(&b.frames) {
            assert_eq!(fa.frame, fb.frame);
            assert_eq!(fa.status, fb.status);
            assert_eq!(fa.inclusion_ranks, fb.inclusion_ranks);
            assert_eq!(fa.betti_m, fb.betti_m);
            assert_eq!(fa.betti_k, fb.betti_k);
            assert_eq!(fa.betti_l, fb.betti_l);
            assert_eq!(fa.betti_join, fb.betti_join);
        }
    }
}

#[test]
fn zero_rows_are_reported_not_counted() {
    let d = BinaryDataset::from_rows(
        (0..6).map(|i| format!("V{i}")).collect(),
        vec![0b000111, 0, 0, 0b111000],
    )
    .unwrap();
    let report = analyze(
        &d,
        grid_groups(),
        FrameSelection::All,
        AnalyzeOptions::default(),
    )
    .unwrap();
    assert_eq!(report.summary.zero_rows, 2);
    assert_eq!(report.summary.t, 4);
    assert_eq!(report.summary.max_frame, 1);
}
