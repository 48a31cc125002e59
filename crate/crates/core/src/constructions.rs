//! Named extremal families, built on the smallest labels.
//!
//! * `hilton_milner`: `{F : 1 ∈ F, F ∩ [2, k+1] ≠ ∅} ∪ {[2, k+1]}`
//! * `a_r`: `{1 ∈ A, A ∩ [2, r+1] ≠ ∅} ∪ {1 ∉ A, [2, r+1] ⊂ A}`
//! * `triangle`: `{|T ∩ [3]| >= 2}`
//! * `h_tilde`: `{|T ∩ [3]| = 2}`
//! * `fano`: `{F : F ∩ [7] is a Fano line}`
//! * `full_star`: all k-sets through one element
//! * `lex`: `L(n, k, m)`

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{ensure, Error, Result};
use crate::family::SetFamily;
use crate::kset::{KSet, KSubsets, Mask};
use crate::lex;

/// The seven lines of the Fano plane on `[7]`.
pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 3],
    [1, 4, 5],
    [1, 6, 7],
    [2, 4, 6],
    [2, 5, 7],
    [3, 5, 6],
    [3, 4, 7],
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum ConstructionId {
    HiltonMilner { n: usize, k: usize },
    AR { n: usize, k: usize, r: usize },
    Triangle { n: usize, k: usize },
    HTilde { n: usize, k: usize },
    Fano { n: usize, k: usize },
    FullStar { n: usize, k: usize, i: usize },
    Lex { n: usize, k: usize, m: usize },
}

/// Construction names as accepted on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionName {
    HiltonMilner,
    AR,
    Triangle,
    HTilde,
    Fano,
    FullStar,
    Lex,
}

impl ConstructionName {
    pub const ALL: [ConstructionName; 7] = [
        ConstructionName::HiltonMilner,
        ConstructionName::AR,
        ConstructionName::Triangle,
        ConstructionName::HTilde,
        ConstructionName::Fano,
        ConstructionName::FullStar,
        ConstructionName::Lex,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            ConstructionName::HiltonMilner => "hilton_milner",
            ConstructionName::AR => "a_r",
            ConstructionName::Triangle => "triangle",
            ConstructionName::HTilde => "h_tilde",
            ConstructionName::Fano => "fano",
            ConstructionName::FullStar => "full_star",
            ConstructionName::Lex => "lex",
        }
    }
}

impl fmt::Display for ConstructionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConstructionName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown construction {s:?}")))
    }
}

impl ConstructionId {
    pub fn name(&self) -> ConstructionName {
        match self {
            ConstructionId::HiltonMilner { .. } => ConstructionName::HiltonMilner,
            ConstructionId::AR { .. } => ConstructionName::AR,
            ConstructionId::Triangle { .. } => ConstructionName::Triangle,
            ConstructionId::HTilde { .. } => ConstructionName::HTilde,
            ConstructionId::Fano { .. } => ConstructionName::Fano,
            ConstructionId::FullStar { .. } => ConstructionName::FullStar,
            ConstructionId::Lex { .. } => ConstructionName::Lex,
        }
    }

    /// Assembles an id from loose parameters, naming whichever one is missing.
    pub fn from_parts(
        name: ConstructionName,
        n: usize,
        k: usize,
        r: Option<usize>,
        i: Option<usize>,
        m: Option<usize>,
    ) -> Result<ConstructionId> {
        let need = |v: Option<usize>, flag: &str| {
            v.ok_or_else(|| Error::InvalidParameters(format!("{name} needs --{flag}")))
        };
        Ok(match name {
            ConstructionName::HiltonMilner => ConstructionId::HiltonMilner { n, k },
            ConstructionName::AR => ConstructionId::AR { n, k, r: need(r, "r")? },
            ConstructionName::Triangle => ConstructionId::Triangle { n, k },
            ConstructionName::HTilde => ConstructionId::HTilde { n, k },
            ConstructionName::Fano => ConstructionId::Fano { n, k },
            ConstructionName::FullStar => ConstructionId::FullStar { n, k, i: need(i, "i")? },
            ConstructionName::Lex => ConstructionId::Lex { n, k, m: need(m, "m")? },
        })
    }
}

fn filtered(n: usize, k: usize, keep: impl Fn(Mask) -> bool) -> Result<SetFamily> {
    let sets = KSubsets::new(n, k)?.filter(|s| keep(s.mask())).collect();
    Ok(SetFamily::from_sorted_unchecked(n, k, sets))
}

fn interval(lo: usize, hi: usize) -> Mask {
    Mask::from_elements(lo..=hi)
}

pub fn construct(id: ConstructionId) -> Result<SetFamily> {
    match id {
        ConstructionId::HiltonMilner { n, k } => {
            ensure!(k >= 2 && n > 2 * k, InvalidParameters, "hilton_milner needs n > 2k >= 4 (n = {n}, k = {k})");
            let block = interval(2, k + 1);
            filtered(n, k, |m| (m.contains(1) && m.intersects(&block)) || m == block)
        }
        ConstructionId::AR { n, k, r } => {
            ensure!(r >= 2 && r <= k, InvalidParameters, "a_r needs 2 <= r <= k (r = {r}, k = {k})");
            ensure!(n >= 2 * k, InvalidParameters, "a_r needs n >= 2k (n = {n}, k = {k})");
            let block = interval(2, r + 1);
            filtered(n, k, |m| {
                if m.contains(1) {
                    m.intersects(&block)
                } else {
                    block.is_subset(&m)
                }
            })
        }
        ConstructionId::Triangle { n, k } => {
            ensure!(k >= 2 && n >= 2 * k, InvalidParameters, "triangle needs k >= 2 and n >= 2k (n = {n}, k = {k})");
            let core = interval(1, 3);
            filtered(n, k, |m| m.intersection_len(&core) >= 2)
        }
        ConstructionId::HTilde { n, k } => {
            ensure!(k >= 2 && n >= k + 1 && n >= 3, InvalidParameters, "h_tilde needs k >= 2 and n >= k + 1 (n = {n}, k = {k})");
            let core = interval(1, 3);
            filtered(n, k, |m| m.intersection_len(&core) == 2)
        }
        ConstructionId::Fano { n, k } => {
            ensure!(n >= 7 && k >= 3 && k <= n - 4, InvalidParameters, "fano needs n >= 7 and 3 <= k <= n - 4 (n = {n}, k = {k})");
            fano(n, k)
        }
        ConstructionId::FullStar { n, k, i } => {
            ensure!(i >= 1 && i <= n, InvalidParameters, "full_star needs 1 <= i <= n (i = {i}, n = {n})");
            ensure!(k >= 1 && k <= n, InvalidParameters, "full_star needs 1 <= k <= n (k = {k}, n = {n})");
            filtered(n, k, |m| m.contains(i))
        }
        ConstructionId::Lex { n, k, m } => lex::lex_family(n, k, m),
    }
}

/// Lines of the Fano plane extended by every `(k-3)`-subset of `[8, n]`.
fn fano(n: usize, k: usize) -> Result<SetFamily> {
    let mut masks = Vec::with_capacity(7 * binomial::count(n - 7, k - 3));
    for tail in KSubsets::new(n - 7, k - 3)? {
        let shifted = Mask::from_elements(tail.elements().map(|e| e + 7));
        for line in FANO_LINES {
            masks.push(shifted.or(&Mask::from_elements(line)));
        }
    }
    let sets: Vec<KSet> = masks.into_iter().map(|m| KSet::from_mask(n, m)).collect::<Result<_>>()?;
    SetFamily::new(n, k, sets)
}
