//! Randomized property suites for the join/product homology identities:
//! exact Kunneth prediction for joins, the exact-sequence identity relating
//! join and product, the injectivity inequality, and cone vanishing of the
//! factor inclusions.

use serde::Serialize;

use crate::complex::{product_complex_default, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::betti;
use crate::interchange::NamedComplex;
use crate::persistence::inclusion_rank;
use crate::pipeline::kunneth_join_prediction;
use crate::simplex::Simplex;
use crate::synth::SplitMix64;

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    pub trials: usize,
    /// Vertex bound per side for the random complexes.
    pub max_vertices: usize,
    pub seed: u64,
    pub budget: usize,
    /// Negative control: drop a facet from each computed join before
    /// checking, so every trial must produce violations.
    pub inject_failure: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            trials: 200,
            max_vertices: 6,
            seed: 0,
            budget: crate::complex::DEFAULT_BUDGET,
            inject_failure: false,
        }
    }
}

/// One failed identity, with enough detail to reproduce by hand.
#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub property: String,
    pub detail: String,
}

/// A violating trial: the factor pair and the (possibly mutated) join,
/// in interchange format.
#[derive(Clone, Debug, Serialize)]
pub struct OracleFailure {
    pub trial: usize,
    pub violations: Vec<Violation>,
    pub k: serde_json::Value,
    pub l: serde_json::Value,
    pub join: serde_json::Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub trials: usize,
    pub max_vertices: usize,
    pub seed: u64,
    pub failures: Vec<OracleFailure>,
}

impl OracleReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random non-empty complex: 1..=max_vertices vertices at `id_offset`,
/// 1..=3 random non-empty facets.
pub fn random_complex(rng: &mut SplitMix64, max_vertices: usize, id_offset: u32) -> SimplicialComplex {
    let n = 1 + (rng.next_u64() as usize) % max_vertices;
    let facet_count = 1 + (rng.next_u64() as usize) % 3;
    let full = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let facets = (0..facet_count)
        .map(|_| {
            let mask = match rng.next_u64() & full {
                0 => 1,
                m => m,
            };
            Simplex::from_ids((0..n).filter(|i| mask >> i & 1 == 1).map(|i| id_offset + i as u32))
                .expect("mask bits are distinct vertex ids")
        })
        .collect();
    SimplicialComplex::closure(facets)
}

/// The join identity alone: reduced betti(K*L) must equal the Kunneth
/// prediction from the factors. Returns the violation, if any.
pub fn check_kunneth_join(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    budget: usize,
) -> Result<Option<Violation>> {
    let w = k.join(l)?;
    kunneth_violation(k, l, &w, budget)
}

fn kunneth_violation(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    w: &SimplicialComplex,
    budget: usize,
) -> Result<Option<Violation>> {
    let predicted = kunneth_join_prediction(&betti(k, false, budget)?, &betti(l, false, budget)?)?;
    let actual = betti(w, false, budget)?.to_reduced()?;
    if actual.same_as(&predicted) {
        Ok(None)
    } else {
        Ok(Some(Violation {
            property: "kunneth-join".into(),
            detail: format!(
                "reduced betti of join is {:?}, prediction {:?}",
                actual.per_dim, predicted.per_dim
            ),
        }))
    }
}

/// All identities against a claimed join `w` (the honest join in normal
/// runs, a mutated complex in negative controls).
pub fn check_pair_with_join(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    w: &SimplicialComplex,
    budget: usize,
) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    if let Some(v) = kunneth_violation(k, l, w, budget)? {
        out.push(v);
    }

    let bk = betti(k, false, budget)?;
    let bl = betti(l, false, budget)?;
    let bw = betti(w, false, budget)?;
    let product = product_complex_default(k, l, budget)?;
    let bp = betti(product.complex(), false, budget)?;

    let rk = bk.to_reduced()?;
    let rl = bl.to_reduced()?;
    let rw = bw.to_reduced()?;
    let rp = bp.to_reduced()?;
    let top = rw
        .per_dim
        .len()
        .max(rp.per_dim.len() + 1)
        .max(rk.per_dim.len())
        .max(rl.per_dim.len());
    for p in 0..top {
        let lhs = rw.get(p + 1) as i64;
        let rhs = rp.get(p) as i64 - rk.get(p) as i64 - rl.get(p) as i64;
        if lhs != rhs {
            out.push(Violation {
                property: "exact-sequence".into(),
                detail: format!(
                    "reduced b_{}(join) = {lhs} but b_{p}(product) - b_{p}(K) - b_{p}(L) = {rhs}",
                    p + 1
                ),
            });
        }
        if bw.get(p + 1) > bp.get(p) {
            out.push(Violation {
                property: "injectivity".into(),
                detail: format!(
                    "b_{}(join) = {} exceeds b_{p}(product) = {}",
                    p + 1,
                    bw.get(p + 1),
                    bp.get(p)
                ),
            });
        }
    }

    for (side, sub) in [("K", k), ("L", l)] {
        match inclusion_rank(sub, w, false, budget) {
            Ok(ranks) => {
                let cone_ok =
                    ranks.rank(0) == 1 && ranks.per_dim.iter().skip(1).all(|&r| r == 0);
                if !cone_ok {
                    out.push(Violation {
                        property: format!("cone-vanishing-{side}"),
                        detail: format!(
                            "inclusion ranks of {side} into the join are {:?}, expected [1]",
                            ranks.per_dim
                        ),
                    });
                }
            }
            Err(Error::NotSubcomplex { witness }) => {
                out.push(Violation {
                    property: format!("cone-vanishing-{side}"),
                    detail: format!("{side} is not contained in the claimed join (witness {witness:?})"),
                });
            }
            Err(other) => return Err(other),
        }
    }
    Ok(out)
}

/// All identities on an honestly computed join.
pub fn check_pair(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    budget: usize,
) -> Result<Vec<Violation>> {
    let w = k.join(l)?;
    check_pair_with_join(k, l, &w, budget)
}

fn witness_json(x: &SimplicialComplex) -> serde_json::Value {
    let max_id = x.vertex_set().iter().next_back().map_or(0, |v| v.0);
    let labels = (0..=max_id).map(|i| format!("v{i}")).collect();
    NamedComplex::new(labels, x.clone())
        .expect("generated labels cover all ids")
        .to_json()
}

/// Runs `trials` random pairs through every identity. Exit semantics are
/// the caller's: `all_passed` distinguishes clean runs.
pub fn run_trials(config: OracleConfig) -> Result<OracleReport> {
    if config.trials == 0 {
        return Err(Error::InvalidArgument("trials >= 1 required".into()));
    }
    if config.max_vertices == 0 {
        return Err(Error::InvalidArgument("max vertices must be at least 1".into()));
    }
    let mut rng = SplitMix64::new(config.seed);
    let offset = config.max_vertices as u32;
    let mut failures = Vec::new();
    for trial in 0..config.trials {
        let k = random_complex(&mut rng, config.max_vertices, 0);
        let l = random_complex(&mut rng, config.max_vertices, offset);
        let w = k.join(&l)?;
        let w = if config.inject_failure { drop_one_facet(&w) } else { w };
        let violations = check_pair_with_join(&k, &l, &w, config.budget)?;
        if !violations.is_empty() {
            failures.push(OracleFailure {
                trial,
                violations,
                k: witness_json(&k),
                l: witness_json(&l),
                join: witness_json(&w),
            });
        }
    }
    Ok(OracleReport {
        trials: config.trials,
        max_vertices: config.max_vertices,
        seed: config.seed,
        failures,
    })
}

/// Removes the first facet; a single-facet complex degrades to its boundary.
/// Join facets always have at least two vertices, so the result is nonempty.
fn drop_one_facet(w: &SimplicialComplex) -> SimplicialComplex {
    let facets = w.facets();
    if facets.len() > 1 {
        SimplicialComplex::closure(facets[1..].to_vec())
    } else {
        SimplicialComplex::closure(facets[0].boundary_faces())
    }
}
