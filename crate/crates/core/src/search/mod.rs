//! Exhaustive enumeration, branch and bound, and seeded sampling.

mod bitset;
mod diversity;
mod maximal;
mod sampling;

pub use diversity::{max_diversity_search, DiversityResult, SearchBudget};
pub use maximal::{for_each_maximal_intersecting, maximal_intersecting_families, within_guard};
pub use sampling::{
    instance_seed, rng_for, sample_cross_intersecting, sample_initial, sample_initial_within,
    sample_intersecting, sample_maximal_intersecting, CrossSpec,
};
