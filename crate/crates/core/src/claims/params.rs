use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::{format_ratio, Rational};

/// Free variables of a claim. Unset fields take per-claim defaults; the
/// report echoes the effective values.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClaimParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "opt_ratio")]
    pub eps: Option<Rational>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_min: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_max: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

fn opt_ratio<S: Serializer>(r: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&format_ratio(r)),
        None => s.serialize_none(),
    }
}

impl ClaimParams {
    pub fn new() -> Self {
        ClaimParams::default()
    }

    pub fn n(mut self, v: usize) -> Self {
        self.n = Some(v);
        self
    }

    pub fn k(mut self, v: usize) -> Self {
        self.k = Some(v);
        self
    }

    pub fn l(mut self, v: usize) -> Self {
        self.l = Some(v);
        self
    }

    pub fn m(mut self, v: usize) -> Self {
        self.m = Some(v);
        self
    }

    pub fn r(mut self, v: usize) -> Self {
        self.r = Some(v);
        self
    }

    pub fn u(mut self, v: usize) -> Self {
        self.u = Some(v);
        self
    }

    pub fn eps(mut self, v: Rational) -> Self {
        self.eps = Some(v);
        self
    }

    pub fn n_max(mut self, v: usize) -> Self {
        self.n_max = Some(v);
        self
    }

    pub fn k_max(mut self, v: usize) -> Self {
        self.k_max = Some(v);
        self
    }

    pub fn m_max(mut self, v: usize) -> Self {
        self.m_max = Some(v);
        self
    }

    pub fn samples(mut self, v: usize) -> Self {
        self.samples = Some(v);
        self
    }

    pub(crate) fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    /// `(n, k)` pairs: the given pair if both are set, otherwise `defaults`
    /// (filtered by the given one if only one is set).
    pub(crate) fn grid(&self, defaults: &[(usize, usize)]) -> Vec<(usize, usize)> {
        match (self.n, self.k) {
            (Some(n), Some(k)) => vec![(n, k)],
            (Some(n), None) => defaults.iter().copied().filter(|p| p.0 == n).collect(),
            (None, Some(k)) => defaults.iter().copied().filter(|p| p.1 == k).collect(),
            (None, None) => defaults.to_vec(),
        }
    }
}

pub(crate) fn hypothesis(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::HypothesisViolation(msg()))
    }
}
