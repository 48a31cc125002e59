//! Uniform set families: intersecting-family statistics, shifting, lex
//! families, extremal constructions, and a registry of checkable claims.

pub mod binomial;
pub mod claims;
pub mod constructions;
mod error;
pub mod family;
pub mod json;
pub mod kset;
pub mod lex;
pub mod search;
pub mod shifting;

pub use binomial::{binom, binomial};
pub use constructions::{construct, ConstructionId, ConstructionName};
pub use error::{Error, Result};
pub use family::{are_cross_intersecting, are_cross_t_intersecting, FamilyStats, Rational, SetFamily};
pub use json::FamilyJson;
pub use kset::{enumerate_ksets, KSet, KSubsets, Mask};
pub use lex::{lex_family, max_compatible_size, LexFamilySpec};
pub use shifting::{shift_ad_extremis, shift_family, shift_ij, shift_to_initial, PropertyPredicate};
pub use claims::{check_claim, desk_suite, ClaimId, ClaimParams, ClaimReport, RunConfig, Verdict};
pub use search::{for_each_maximal_intersecting, max_diversity_search, DiversityResult, SearchBudget};
