//! Star complement engine: candidate neighbourhoods, pairwise compatibility,
//! star-set search and exact certification.

mod candidates;
mod context;
mod search;
mod verify;

pub use candidates::{CandidateVector, CompatLabel, UNTAGGED_MAX_ORDER};
pub use context::{complete_bipartite, make_context, StarContext};
pub use search::{
    assemble, dedupe_kind, multiplicity_cap, search_star_sets, RegularMode, SearchOptions, StarSolution,
};
pub use verify::{verify_star_pair, Certificate};
