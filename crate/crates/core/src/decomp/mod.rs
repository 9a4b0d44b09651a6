//! Decompositions of triangular matrix monoids into wreath products.

mod census;
mod induction;
mod pipeline;

pub use census::{binomial, depth_analysis, verify_census, CensusLevel, CensusReport, Comparison, DepthAnalysis, CENSUS_ISO_LIMIT};
pub use induction::{induction_step, InductionImage, InductionMap};
pub use pipeline::{
    field_pipeline, group_length, ring_pipeline, DecompositionPlan, NamedWitness, PlanRecord, PlanSummary, Tag, Term,
    TermRecord,
};
