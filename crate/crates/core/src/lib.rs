//! Decision-analysis engine for multi-attribute group decision making
//! with interval-valued intuitionistic fuzzy assessments.
//!
//! The pipeline fuses per-expert assessment matrices with weighted
//! averaging, complements cost attributes, derives objective attribute
//! weights from distance entropy, and ranks alternatives with a
//! prospect-theory-modified EDAS. Four reference methods (weighted-average
//! scoring, TOPSIS, taxonomy, TODIM) consume the same inputs for
//! cross-method comparison, and a sweep harness re-scores the problem over
//! grids of the five risk-attitude parameters.
//!
//! With the default `parallel` feature, cell fusion, pairwise matrices,
//! and sweep grids run on the rayon pool; results are bit-identical to the
//! sequential build.

pub mod aggregation;
pub mod comparators;
pub mod edas;
pub mod error;
pub mod ivif;
mod par;
pub mod pipeline;
pub mod problem;
pub mod report;
pub mod scale;
pub mod weighting;

pub use aggregation::{
    aggregate_experts, ivifwa, ivifwg, normalize_matrix, AttributeKind, AttributeSpec,
    ExpertMatrix, GroupMatrix, IvifGrid, WeightVector,
};
pub use comparators::{
    ivifwa_rank, taxonomy, taxonomy_with, todim, topsis, topsis_with_form, IvifwaResult,
    TaxonomyOptions, TaxonomyResult, TodimResult, TopsisForm, TopsisResult,
};
pub use edas::{
    average_solution, branch_of, cpt_weight, crisp_average, crisp_edas, pda_nda, relative_weights,
    score_and_rank, Branch, CptParams, CrispEdasTrace, CrispMatrix, EdasTrace,
};
pub use error::{Error, Result};
pub use ivif::{HesitancyInterval, Ivifn, TIE_TOL};
pub use pipeline::{run, run_with_method, sweep, sweep_seq, sweep_to_csv, SweepParam, SweepPoint};
pub use problem::{load_problem, parse_problem, MethodId, Problem};
pub use report::{Metadata, Report, Table};
pub use scale::LinguisticScale;
pub use weighting::{
    entropy, entropy_distance_matrix, entropy_weights, entropy_weights_with, negative_ideal,
    normalize_distances, DistanceForm, EntropyBreakdown,
};
