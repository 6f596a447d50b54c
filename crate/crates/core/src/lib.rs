//! Concurrence-topology independence detection for binary multivariate data.
//!
//! The pipeline builds, for each frequency level f, the concurrence complex
//! M_f whose simplices are variable sets simultaneously active in at least f
//! observations, projects it to two variable groups, joins the projections,
//! and measures which homology classes of M_f survive into the join: classes
//! of the product form are a necessary signature of independence between the
//! groups. Everything is computed over Z/2 with sparse boundary reduction,
//! and the Kunneth-style identities for joins and products are available as
//! exact oracles.
//!
//! Entry points:
//! - [`dataset::BinaryDataset`] / [`dataset::FilteredConcurrence`]: ingestion
//!   and the frequency filtration.
//! - [`pipeline::analyze`]: the full per-frame independence report.
//! - [`homology::betti`], [`persistence::persistence`],
//!   [`persistence::inclusion_rank`]: the homology engine.
//! - [`synth`]: seeded generators for independent and coupled datasets.
//! - [`oracle`]: randomized checks of the join/product identities.

pub mod complex;
pub mod dataset;
pub mod error;
pub mod gf2;
pub mod homology;
pub mod interchange;
pub mod oracle;
pub mod persistence;
pub mod pipeline;
pub mod simplex;
pub mod synth;

pub use complex::{SimplicialComplex, DEFAULT_BUDGET};
pub use dataset::{BinaryDataset, FilteredConcurrence, PatternTable};
pub use error::{Error, Result};
pub use homology::{betti, BettiVector};
pub use persistence::{inclusion_rank, persistence, FiltrationOrder, Interval};
pub use pipeline::{
    analyze, analyze_frame, kunneth_join_prediction, kunneth_product_prediction, Analysis,
    AnalyzeOptions, FrameSelection, Grouping, IndependenceReport,
};
pub use simplex::{Simplex, VertexId};
