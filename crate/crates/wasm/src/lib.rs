//! Browser bindings for the demo page: string-in/string-out wrappers around
//! dataset synthesis, independence analysis, and the join calculator.
//!
//! Every export is an ordinary function on native targets, so the wrappers
//! are unit-tested on the host even though the page itself needs a
//! wasm32-unknown-unknown build.

use wasm_bindgen::prelude::*;

use concurtop::interchange::NamedComplex;
use concurtop::pipeline::kunneth_join_prediction;
use concurtop::synth::{cycle_pattern_spec, JointSpec};
use concurtop::{
    analyze, betti, AnalyzeOptions, BinaryDataset, FrameSelection, Grouping, Simplex,
    SimplicialComplex, DEFAULT_BUDGET,
};

/// Draws `rows` observations from two independent-to-coupled k-cycle groups
/// (variables A0.. and B0..) and returns them as CSV.
///
/// `lambda` dials the coupling: 1 is full independence, 0 couples the
/// groups perfectly on the diagonal.
#[wasm_bindgen]
pub fn demo_simulate(k: u32, rows: u32, seed: u32, lambda: f64) -> Result<String, String> {
    let names = |p: &str| (0..k).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let run = || -> concurtop::Result<String> {
        let a = cycle_pattern_spec(k as usize, names("A"))?;
        let b = cycle_pattern_spec(k as usize, names("B"))?;
        let joint = JointSpec::mixture(a, b, lambda)?;
        Ok(joint.sample(rows as usize, seed as u64)?.to_csv())
    };
    run().map_err(|e| e.to_string())
}

/// Full analysis of a CSV dataset; groups are comma-separated variable
/// names, `frames` is "all", one frame "3", or a range "1..5". Returns the
/// report as pretty JSON.
#[wasm_bindgen]
pub fn demo_analyze(csv: &str, group_a: &str, group_b: &str, frames: &str) -> Result<String, String> {
    let split = |text: &str| -> Vec<String> {
        text.split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect()
    };
    let run = || -> concurtop::Result<String> {
        let dataset = BinaryDataset::parse_csv(csv)?;
        let grouping = Grouping::new(split(group_a), split(group_b))?;
        let selection = FrameSelection::parse(frames)?;
        let report = analyze(&dataset, grouping, selection, AnalyzeOptions::default())?;
        Ok(serde_json::to_string_pretty(&report)?)
    };
    run().map_err(|e| e.to_string())
}

/// Betti numbers of two complexes (interchange JSON), of their join, and of
/// the Kunneth prediction computed from the factors alone. The sides are
/// relabelled internally, so their vertex names may overlap.
#[wasm_bindgen]
pub fn demo_join_betti(k_json: &str, l_json: &str) -> Result<String, String> {
    let run = || -> concurtop::Result<String> {
        let parse = |text: &str| -> concurtop::Result<NamedComplex> {
            let value: serde_json::Value = serde_json::from_str(text)?;
            Ok(NamedComplex::from_json(&value)?.0)
        };
        let k = parse(k_json)?;
        let l = parse(l_json)?;
        let offset = k.labels().len() as u32;
        let shifted = SimplicialComplex::closure(
            l.complex()
                .facets()
                .iter()
                .map(|f| Simplex::from_ids(f.vertices().iter().map(|v| v.0 + offset)))
                .collect::<concurtop::Result<Vec<_>>>()?,
        );
        let join = k.complex().join(&shifted)?;
        let bk = betti(k.complex(), false, DEFAULT_BUDGET)?;
        let bl = betti(&shifted, false, DEFAULT_BUDGET)?;
        let bj = betti(&join, false, DEFAULT_BUDGET)?;
        let prediction = kunneth_join_prediction(&bk, &bl)?.to_unreduced();
        let matches = bj.same_as(&prediction);
        Ok(serde_json::to_string_pretty(&serde_json::json!({
            "betti_k": bk.per_dim,
            "betti_l": bl.per_dim,
            "betti_join": bj.per_dim,
            "kunneth_prediction": prediction.per_dim,
            "matches": matches,
        }))?)
    };
    run().map_err(|e| e.to_string())
}
