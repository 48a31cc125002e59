//! Registry of checkable claims and the machinery that checks them.
//!
//! Every claim is checked in one of a few modes: exhaustive enumeration of
//! maximal families, scans over lex pairs (complete by Hilton's lemma),
//! exact arithmetic, seeded sampling, or direct inspection of a
//! construction. Sampled checks can refute a claim but never prove it, so a
//! clean sampled run is reported as inconclusive.

mod arithmetic;
mod audit;
mod constructions;
mod exhaustive;
mod lexscan;
mod params;
mod report;
mod sampled;
mod suite;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use audit::engine_audit;
pub use exhaustive::{count_extremal_intersecting, hilton_milner_maximum, NonStarMaximum};
pub use params::ClaimParams;
pub use report::{ClaimReport, Mode, Verdict};
pub use suite::{desk_suite, SuiteItem};

/// The registry entries, `C1` through `C26`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClaimId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
    C12,
    C13,
    C14,
    C15,
    C16,
    C17,
    C18,
    C19,
    C20,
    C21,
    C22,
    C23,
    C24,
    C25,
    C26,
}

impl ClaimId {
    pub const ALL: [ClaimId; 26] = [
        ClaimId::C1,
        ClaimId::C2,
        ClaimId::C3,
        ClaimId::C4,
        ClaimId::C5,
        ClaimId::C6,
        ClaimId::C7,
        ClaimId::C8,
        ClaimId::C9,
        ClaimId::C10,
        ClaimId::C11,
        ClaimId::C12,
        ClaimId::C13,
        ClaimId::C14,
        ClaimId::C15,
        ClaimId::C16,
        ClaimId::C17,
        ClaimId::C18,
        ClaimId::C19,
        ClaimId::C20,
        ClaimId::C21,
        ClaimId::C22,
        ClaimId::C23,
        ClaimId::C24,
        ClaimId::C25,
        ClaimId::C26,
    ];

    pub fn number(&self) -> usize {
        ClaimId::ALL.iter().position(|c| c == self).expect("listed") + 1
    }

    pub fn mode(&self) -> Mode {
        use ClaimId::*;
        match self {
            C1 | C2 => Mode::ExhaustiveMaximal,
            C3 | C23 => Mode::ExhaustiveMaximalSampled,
            C6 => Mode::ExhaustiveMaximalSampled,
            C4 => Mode::SampledViaShift,
            C5 | C7 | C8 | C10 | C14 | C15 | C16 | C17 | C19 => Mode::Sampled,
            C11 | C12 => Mode::EngineRun,
            C9 | C13 | C18 | C20 | C22 => Mode::LexScan,
            C21 => Mode::Arithmetic,
            C24 => Mode::Construction,
            C25 | C26 => Mode::Enumeration,
        }
    }

    /// One-line statement of what is checked.
    pub fn statement(&self) -> &'static str {
        use ClaimId::*;
        match self {
            C1 => "intersecting k-graphs with n >= 2k have at most C(n-1,k-1) members",
            C2 => "non-star intersecting k-graphs with n > 2k >= 4 have at most C(n-1,k-1)-C(n-k-1,k-1)+1 members",
            C3 => "Δ(F) <= Δ(A_r) (or γ(F) >= γ(A_r)) implies |F| <= |A_r| for n > 2k >= 4",
            C4 => "initial intersecting families with n > 3k-2 have γ <= C(n-3,k-2)",
            C5 => "for initial cross-intersecting F, G the families F(1̄), G(1̄) are cross 2-intersecting",
            C6 => "intersecting families with n > 36k have γ <= C(n-3,k-2)",
            C7 => "intersecting, n >= 2k and |F| >= 36 C(n-3,k-3) imply ρ > 1/2",
            C8 => "0 < ε <= 1/24, n >= k/ε and |F| >= 36 C(n-3,k-3) imply ρ > 2/3 - ε",
            C9 => "cross-intersecting ℓ-graphs on [m], m >= 2ℓ, both of size >= C(m-3,ℓ-3)+C(m-4,ℓ-3) have |A|+|B| <= 2 C(m-1,ℓ-1)",
            C10 => "cross t-intersecting A, B with |A| <= |B| have |B| <= C(n,k-t) or |A| <= C(n,k-t-1)",
            C11 => "non-trivial cross-intersecting pairs above the size thresholds shift ad extremis to initial pairs",
            C12 => "saturated non-initial pairs shifted ad extremis admit x1,x2,y1,y2 with conclusions (i)-(iii)",
            C13 => "|F(x,y)| >= C(n-3,k-3)+C(n-4,k-3)+C(n-6,k-4) implies |G(x̄,ȳ)| <= C(n-5,k-3)+C(n-6,k-3)",
            C14 => "for intersecting F the pair-link threshold C(n-3,k-3)+C(n-4,k-3)+C(n-6,k-4) implies ρ > 1/2",
            C15 => "initial families satisfy ∂F(1̄) ⊆ F(1)",
            C16 => "|F_R ∩ F_Q| <= max{3M + C(n-7,k-5)+C(n-8,k-5), 2M + 2C(n-5,k-3)} for disjoint pairs R, Q",
            C17 => "large cross-intersecting pairs have γ < C(n-u-1,k-u) and share a unique element of largest degree",
            C18 => "|F(x,y)| >= C(n-3,k-3)+C(n-4,k-3)+C(n-5,k-3)+C(n-7,k-4) implies |F(x̄,ȳ)| <= C(n-6,k-4)+C(n-7,k-4)",
            C19 => "ε <= 1/6, |F| >= 12 C(n-3,k-3), n >= k/ε and the pair-link threshold imply ρ > 2/3 - ε",
            C20 => "non-empty cross-intersecting A, B with a <= b, n >= a+b have |A|+|B| <= C(n,b)-C(n-a,b)+1",
            C21 => "C(n-1,a-1)+C(n-1,b-1) <= C(n,b)-C(n-a+1,b)+n-a+1 for 2 <= a <= b, n >= a+b",
            C22 => "the sharpened cross-intersecting sum bound under conditions (i), (ii) or (iii)",
            C23 => "intersecting, n > 2k >= 6 and γ(F) >= r bound |F|",
            C24 => "the Fano family attains ρ = 3/7 with |F| > C(n-3,k-3) at n > 100k",
            C25 => "|A_2(n,k)| = |A_3(n,k)| and the H(n,k) versus T(n,k) comparisons",
            C26 => "γ(A_r), Δ(A_r), |H̃|, ρ(H̃), ρ(Fano) formulas and 2^C(n-1,k-1) extremal families at n = 2k",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.number())
    }
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().strip_prefix(['C', 'c']).unwrap_or(s.trim());
        digits
            .parse::<usize>()
            .ok()
            .and_then(|i| i.checked_sub(1))
            .and_then(|i| ClaimId::ALL.get(i).copied())
            .ok_or_else(|| Error::InvalidParameters(format!("unknown claim {s:?}; expected C1..C26")))
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Run-wide settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub seed: u64,
    /// Worker threads for independent instances; results do not depend on it.
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { seed: 0, jobs: 1 }
    }
}

/// Checks one claim. Parameters outside the claim's hypotheses are rejected
/// with [`Error::HypothesisViolation`].
pub fn check_claim(claim: ClaimId, params: &ClaimParams, config: &RunConfig) -> Result<ClaimReport> {
    use ClaimId::*;
    let start = Instant::now();
    let (effective, tally) = match claim {
        C1 => exhaustive::c1(params)?,
        C2 => exhaustive::c2(params)?,
        C3 => exhaustive::c3(params, config)?,
        C4 => sampled::c4(params, config)?,
        C5 => sampled::c5(params, config)?,
        C6 => exhaustive::c6(params, config)?,
        C7 => sampled::c7(params, config)?,
        C8 => sampled::c8(params, config)?,
        C9 => lexscan::c9(params)?,
        C10 => sampled::c10(params, config)?,
        C11 => audit::c11(params, config)?,
        C12 => audit::c12(params, config)?,
        C13 => lexscan::c13(params)?,
        C14 => sampled::c14(params, config)?,
        C15 => sampled::c15(params, config)?,
        C16 => sampled::c16(params, config)?,
        C17 => sampled::c17(params, config)?,
        C18 => lexscan::c18(params)?,
        C19 => sampled::c19(params, config)?,
        C20 => lexscan::c20(params)?,
        C21 => arithmetic::c21(params)?,
        C22 => lexscan::c22(params)?,
        C23 => exhaustive::c23(params, config)?,
        C24 => constructions::c24(params)?,
        C25 => constructions::c25(params)?,
        C26 => constructions::c26(params)?,
    };
    Ok(tally.into_report(claim.to_string(), effective, claim.mode(), config.seed, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for id in ClaimId::ALL {
            assert_eq!(id.to_string().parse::<ClaimId>().unwrap(), id);
        }
        assert_eq!("c9".parse::<ClaimId>().unwrap(), ClaimId::C9);
        assert!("C27".parse::<ClaimId>().is_err());
        assert!("C0".parse::<ClaimId>().is_err());
        assert_eq!(serde_json::to_string(&ClaimId::C12).unwrap(), "\"C12\"");
    }
}
