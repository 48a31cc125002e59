//! The desk-scale acceptance suite: eleven criteria, each with a time limit.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::Serialize;

use super::audit::engine_audit;
use super::exhaustive::{count_extremal_intersecting, hilton_milner_maximum};
use super::report::{ClaimReport, Verdict};
use super::{check_claim, ClaimId, ClaimParams, RunConfig};
use crate::error::Result;
use crate::search::for_each_maximal_intersecting;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteItem {
    pub criterion: usize,
    pub title: &'static str,
    pub limit_ms: u128,
    pub elapsed_ms: u128,
    pub passed: bool,
    /// What was measured, in one line.
    pub detail: String,
    pub reports: Vec<ClaimReport>,
}

impl SuiteItem {
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:>2}  {}  {:<52} {:>8} ms (limit {} s)  {}",
            self.criterion,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed_ms,
            self.limit_ms / 1000,
            self.detail
        )
    }

    /// True when every report is definitive (no sampled part).
    pub fn definitive(&self) -> bool {
        self.reports.iter().all(|r| r.verdict == Verdict::Holds)
    }
}

/// Outcome of one criterion body: reports plus an extra pass condition.
struct Body {
    reports: Vec<ClaimReport>,
    ok: bool,
    detail: String,
}

fn run(criterion: usize, title: &'static str, limit: Duration, body: impl FnOnce() -> Result<Body>) -> SuiteItem {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let (passed, detail, reports) = match outcome {
        Ok(b) => {
            let clean = b.reports.iter().all(|r| r.verdict != Verdict::Refuted);
            (b.ok && clean, b.detail, b.reports)
        }
        Err(e) => (false, format!("error: {e}"), Vec::new()),
    };
    SuiteItem {
        criterion,
        title,
        limit_ms: limit.as_millis(),
        elapsed_ms: elapsed.as_millis(),
        passed: passed && elapsed <= limit,
        detail,
        reports,
    }
}

fn holds(r: &ClaimReport) -> bool {
    r.verdict == Verdict::Holds
}

fn tally_line(reports: &[ClaimReport]) -> String {
    reports
        .iter()
        .map(|r| format!("{} {:?} on {} instances", r.claim, r.verdict, r.instances).to_lowercase())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs every criterion. Sampled criteria pass when no counterexample is found.
pub fn desk_suite(config: &RunConfig) -> Vec<SuiteItem> {
    let secs = Duration::from_secs;
    let claim = |id: ClaimId, p: ClaimParams| check_claim(id, &p, config);
    vec![
        run(1, "extremal intersecting families at n = 2k", secs(10), || {
            let count = count_extremal_intersecting(6, 3)?;
            Ok(Body {
                ok: count == 1024,
                detail: format!("{count} intersecting families of size 10 at (6,3)"),
                reports: Vec::new(),
            })
        }),
        run(2, "largest non-star family at (7,3)", secs(60), || {
            let m = hilton_milner_maximum(7, 3)?;
            let r = claim(ClaimId::C2, ClaimParams::new().n(7).k(3))?;
            Ok(Body {
                ok: m.size == 13 && m.fano_seen && holds(&r),
                detail: format!(
                    "max {} over {} maximal families, Fano {}",
                    m.size,
                    m.families,
                    if m.fano_seen { "seen" } else { "missing" }
                ),
                reports: vec![r],
            })
        }),
        run(3, "initial intersecting families have small diversity", secs(300), || {
            let r = claim(ClaimId::C4, ClaimParams::new().samples(10_000))?;
            Ok(Body {
                ok: r.counterexamples.is_empty(),
                detail: tally_line(std::slice::from_ref(&r)),
                reports: vec![r],
            })
        }),
        run(4, "binomial inequality up to n = 60", secs(10), || {
            let r = claim(ClaimId::C21, ClaimParams::new().n_max(60))?;
            Ok(Body {
                ok: holds(&r),
                detail: tally_line(std::slice::from_ref(&r)),
                reports: vec![r],
            })
        }),
        run(5, "sharpened cross-intersecting sum bound", secs(600), || {
            let r = claim(ClaimId::C22, ClaimParams::new().n_max(12))?;
            Ok(Body {
                ok: holds(&r),
                detail: tally_line(std::slice::from_ref(&r)),
                reports: vec![r],
            })
        }),
        run(6, "cross-intersecting sum bound on [m]", secs(60), || {
            let r = claim(ClaimId::C9, ClaimParams::new().m_max(12))?;
            Ok(Body {
                ok: holds(&r),
                detail: tally_line(std::slice::from_ref(&r)),
                reports: vec![r],
            })
        }),
        run(7, "construction identities for n <= 14, k <= 5", secs(60), || {
            let p = ClaimParams::new().n_max(14).k_max(5);
            let reports = vec![claim(ClaimId::C25, p.clone())?, claim(ClaimId::C26, p)?];
            Ok(Body {
                ok: reports.iter().all(holds),
                detail: tally_line(&reports),
                reports,
            })
        }),
        run(8, "diversity of intersecting graphs at n = 75", secs(60), || {
            let r = claim(ClaimId::C6, ClaimParams::new().n(75).k(2))?;
            let mut best = 0;
            for_each_maximal_intersecting(75, 2, false, |f| {
                best = best.max(f.diversity());
                ControlFlow::Continue(())
            })?;
            Ok(Body {
                ok: holds(&r) && best == 1,
                detail: format!("max γ = {best} over {} maximal families", r.instances),
                reports: vec![r],
            })
        }),
        run(9, "large intersecting families have ρ above 1/2, 2/3 - ε", secs(600), || {
            let reports = vec![
                claim(ClaimId::C7, ClaimParams::new().n(20).k(3).samples(10_000))?,
                claim(ClaimId::C8, ClaimParams::new().k(3).samples(10_000))?,
            ];
            Ok(Body {
                ok: reports.iter().all(|r| r.counterexamples.is_empty()),
                detail: tally_line(&reports),
                reports,
            })
        }),
        run(10, "shifting engine audit", secs(300), || {
            let r = engine_audit(10_000, config)?;
            Ok(Body {
                ok: holds(&r),
                detail: tally_line(std::slice::from_ref(&r)),
                reports: vec![r],
            })
        }),
        run(11, "links and shadows of initial families", secs(300), || {
            let reports = vec![
                claim(ClaimId::C5, ClaimParams::new().n_max(10).samples(10_000))?,
                claim(ClaimId::C15, ClaimParams::new().n_max(10).samples(10_000))?,
            ];
            Ok(Body {
                ok: reports.iter().all(|r| r.counterexamples.is_empty()),
                detail: tally_line(&reports),
                reports,
            })
        }),
    ]
}
