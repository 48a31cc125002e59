use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::family::SetFamily;
use crate::json::{self, FamilyJson};

/// Counterexamples kept verbatim in a report; further ones are only counted.
const MAX_WITNESSES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    #[serde(rename = "exhaustive-maximal")]
    ExhaustiveMaximal,
    #[serde(rename = "exhaustive-maximal+sampled")]
    ExhaustiveMaximalSampled,
    #[serde(rename = "sampled-via-shift")]
    SampledViaShift,
    #[serde(rename = "sampled")]
    Sampled,
    #[serde(rename = "engine-run")]
    EngineRun,
    #[serde(rename = "lex-scan")]
    LexScan,
    #[serde(rename = "arithmetic")]
    Arithmetic,
    #[serde(rename = "construction")]
    Construction,
    #[serde(rename = "enumeration")]
    Enumeration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Refuted,
    /// Sampled checks that found nothing.
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub params: Value,
    pub mode: Mode,
    pub instances: u64,
    pub verdict: Verdict,
    pub counterexamples: Vec<Value>,
    pub elapsed_ms: u128,
    pub seed: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ClaimReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn summary_line(&self) -> String {
        format!(
            "{:<13} {:<12} instances={:<9} {:>8} ms  [{}]",
            self.claim,
            format!("{:?}", self.verdict).to_lowercase(),
            self.instances,
            self.elapsed_ms,
            serde_json::to_value(self.mode).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
        )
    }
}

/// Accumulates instances and violations while a claim is checked.
#[derive(Debug, Default)]
pub(crate) struct Tally {
    pub instances: u64,
    pub violations: u64,
    pub counterexamples: Vec<Value>,
    /// False once any part of the check was sampled.
    pub definitive: bool,
    pub mode: Option<Mode>,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn definitive() -> Self {
        Tally {
            definitive: true,
            ..Tally::default()
        }
    }

    pub fn sampled() -> Self {
        Tally::default()
    }

    pub fn instance(&mut self) {
        self.instances += 1;
    }

    pub fn violation(&mut self, witness: Value) {
        self.violations += 1;
        if self.counterexamples.len() < MAX_WITNESSES {
            self.counterexamples.push(witness);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn absorb(&mut self, other: Tally) {
        self.instances += other.instances;
        self.violations += other.violations;
        self.definitive &= other.definitive;
        for w in other.counterexamples {
            if self.counterexamples.len() < MAX_WITNESSES {
                self.counterexamples.push(w);
            }
        }
        self.notes.extend(other.notes);
    }

    pub fn verdict(&self) -> Verdict {
        if self.violations > 0 {
            Verdict::Refuted
        } else if self.definitive {
            Verdict::Holds
        } else {
            Verdict::Inconclusive
        }
    }

    pub fn into_report(mut self, claim: String, params: Value, mode: Mode, seed: u64, elapsed: Duration) -> ClaimReport {
        if self.violations as usize > self.counterexamples.len() {
            self.notes.push(format!(
                "{} violations in total; the first {} are listed",
                self.violations,
                self.counterexamples.len()
            ));
        }
        ClaimReport {
            verdict: self.verdict(),
            claim,
            params,
            mode: self.mode.unwrap_or(mode),
            instances: self.instances,
            counterexamples: self.counterexamples,
            elapsed_ms: elapsed.as_millis(),
            seed,
            notes: self.notes,
        }
    }
}

/// A replayable counterexample: the families, the instance seed if sampled,
/// and what went wrong.
pub(crate) fn witness(families: &[&SetFamily], seed: Option<u64>, detail: impl Into<String>) -> Value {
    let fams: Vec<FamilyJson> = families.iter().map(|f| FamilyJson::from(*f)).collect();
    let mut w = json!({ "families": fams, "detail": detail.into() });
    if let Some(s) = seed {
        w["seed"] = json!(s);
    }
    w
}

/// Double-entry check for sampled refutations: the witness families are
/// re-read from their JSON form and the violation is evaluated again.
pub(crate) fn confirmed<F>(families: &[&SetFamily], check: F) -> bool
where
    F: Fn(&[SetFamily]) -> Option<String>,
{
    let reread: Vec<SetFamily> = families
        .iter()
        .map(|f| json::from_value(json::to_value(f)).expect("canonical family re-reads"))
        .collect();
    check(&reread).is_some()
}
