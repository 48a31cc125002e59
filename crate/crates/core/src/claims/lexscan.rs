//! Claims about cross-intersecting pairs, checked over lex pairs.
//!
//! With `n >= a + b`, any cross-intersecting `A ⊂ C([n], a)`, `B ⊂ C([n], b)`
//! can be replaced by the lex families of the same sizes, so the largest
//! `|B|` for a given `|A| = p` is `compatible_profile(n, a, b)[p]` and a scan
//! over `p` covers every pair.

use serde_json::{json, Value};

use super::params::hypothesis;
use super::report::{witness, Tally};
use super::sampled::bc;
use super::ClaimParams;
use crate::error::Result;
use crate::family::SetFamily;
use crate::kset::Mask;
use crate::lex::{compatible_profile, lex_family};

fn lex_pair(n: usize, a: usize, b: usize, p: usize, q: usize) -> (SetFamily, SetFamily) {
    (
        lex_family(n, a, p).expect("p is in range"),
        lex_family(n, b, q).expect("q is in range"),
    )
}

pub(crate) fn c9(params: &ClaimParams) -> Result<(Value, Tally)> {
    let (m_lo, m_hi) = match params.m {
        Some(m) => (m, m),
        None => (2, params.m_max.unwrap_or(12)),
    };
    if let (Some(m), Some(l)) = (params.m, params.l) {
        hypothesis(l >= 1 && m >= 2 * l, || format!("needs m >= 2ℓ >= 2, got m = {m}, ℓ = {l}"))?;
    }
    hypothesis(m_hi <= 20, || format!("m_max = {m_hi} is too large for a lex scan (at most 20)"))?;
    let mut tally = Tally::definitive();
    for m in m_lo..=m_hi {
        let ls: Vec<usize> = match params.l {
            Some(l) => vec![l],
            None => (1..=m / 2).collect(),
        };
        for l in ls {
            if l == 0 || m < 2 * l {
                continue;
            }
            let (mi, li) = (m as i64, l as i64);
            let floor = ((bc(mi - 3, li - 3) + bc(mi - 4, li - 3)) as usize).max(1);
            let bound = 2 * bc(mi - 1, li - 1) as usize;
            let profile = compatible_profile(m, l, l)?;
            for (p, &mc) in profile.iter().enumerate().skip(floor) {
                if mc < floor {
                    // the profile is non-increasing
                    break;
                }
                tally.instance();
                if p + mc > bound {
                    let (a, b) = lex_pair(m, l, l, p, mc);
                    tally.violation(witness(
                        &[&a, &b],
                        None,
                        format!("m = {m}, ℓ = {l}: |A| + |B| = {} exceeds {bound}", p + mc),
                    ));
                }
            }
        }
    }
    Ok((json!({ "m_min": m_lo, "m_max": m_hi, "l": params.l }), tally))
}

/// Scans `|F(x, y)| = p >= threshold` against the largest compatible
/// `|G(x̄, ȳ)|`, both living on `[n - 2]` with `(x, y) = (n - 1, n)`.
struct PairLinkScan {
    name: &'static str,
    threshold: fn(i64, i64) -> usize,
    bound: fn(i64, i64) -> usize,
    /// Both sides come from one intersecting family.
    single_family: bool,
}

fn pair_link_scan(params: &ClaimParams, scan: PairLinkScan) -> Result<(Value, Tally)> {
    let ks: Vec<usize> = match params.k {
        Some(k) => {
            hypothesis(k >= 3, || format!("needs k >= 3, got k = {k}"))?;
            vec![k]
        }
        None => (4..=params.k_max.unwrap_or(6)).collect(),
    };
    let n_max = params.n.or(params.n_max).unwrap_or(16);
    hypothesis(n_max <= 24, || format!("n = {n_max} is too large for a lex scan (at most 24)"))?;
    let mut tally = Tally::definitive();
    let mut cells = Vec::new();
    for &k in &ks {
        let ns: Vec<usize> = match params.n {
            Some(n) => {
                hypothesis(n >= 2 * k, || format!("needs n >= 2k, got n = {n}, k = {k}"))?;
                vec![n]
            }
            None => (2 * k..=n_max).collect(),
        };
        for n in ns {
            cells.push((n, k));
            let (ni, ki) = (n as i64, k as i64);
            let theta = (scan.threshold)(ni, ki);
            let bound = (scan.bound)(ni, ki);
            let profile = compatible_profile(n - 2, k - 2, k)?;
            for (p, &mc) in profile.iter().enumerate().skip(theta.max(1)) {
                tally.instance();
                if mc <= bound {
                    continue;
                }
                let (link, rest) = lex_pair(n - 2, k - 2, k, p, mc);
                let lifted = lift(&link, n, k);
                let rest = SetFamily::from_masks(n, k, rest.masks()).expect("k-sets of [n-2] live in [n]");
                let detail = format!(
                    "n = {n}, k = {k}: |{}(x,y)| = {p} >= {theta} allows |{}(x̄,ȳ)| = {mc} > {bound}",
                    "F",
                    if scan.single_family { "F" } else { "G" }
                );
                if !scan.single_family {
                    tally.violation(witness(&[&lifted, &rest], None, detail));
                    continue;
                }
                // one family: the far side must also intersect itself
                let through_one = SetFamily::from_masks(n, k, rest.masks().filter(|s| s.contains(1)))?;
                if through_one.len() > bound {
                    let union = SetFamily::from_masks(n, k, lifted.masks().chain(through_one.masks()))?;
                    debug_assert!(union.is_intersecting());
                    let detail = format!("{detail}; intersecting witness has |F(x̄,ȳ)| = {}", through_one.len());
                    tally.violation(witness(&[&union], None, detail));
                } else {
                    tally.definitive = false;
                    tally.note(format!(
                        "{}: n = {n}, k = {k}, p = {p}: the lex bound {mc} exceeds {bound} but no intersecting lift was found",
                        scan.name
                    ));
                }
            }
        }
    }
    Ok((json!({ "cells": cells }), tally))
}

/// `{A ∪ {n-1, n}}` for `A` in a `(k-2)`-family on `[n-2]`.
fn lift(link: &SetFamily, n: usize, k: usize) -> SetFamily {
    let pair = Mask::EMPTY.with(n - 1).with(n);
    SetFamily::from_masks(n, k, link.masks().map(|m| m.or(&pair))).expect("lifted sets have size k")
}

pub(crate) fn c13(params: &ClaimParams) -> Result<(Value, Tally)> {
    pair_link_scan(
        params,
        PairLinkScan {
            name: "cross pair",
            threshold: |n, k| (bc(n - 3, k - 3) + bc(n - 4, k - 3) + bc(n - 6, k - 4)) as usize,
            bound: |n, k| (bc(n - 5, k - 3) + bc(n - 6, k - 3)) as usize,
            single_family: false,
        },
    )
}

pub(crate) fn c18(params: &ClaimParams) -> Result<(Value, Tally)> {
    pair_link_scan(
        params,
        PairLinkScan {
            name: "intersecting family",
            threshold: |n, k| (bc(n - 3, k - 3) + bc(n - 4, k - 3) + bc(n - 5, k - 3) + bc(n - 7, k - 4)) as usize,
            bound: |n, k| (bc(n - 6, k - 4) + bc(n - 7, k - 4)) as usize,
            single_family: true,
        },
    )
}

/// `(n, a, b)` with `1 <= a <= b`, `n >= a + b`, up to `n_max`, or the single given triple.
fn cross_shapes(params: &ClaimParams, ordered: bool) -> Result<Vec<(usize, usize, usize)>> {
    let n_max = params.n.or(params.n_max).unwrap_or(12);
    hypothesis(n_max <= 16, || format!("n = {n_max} is too large for a lex scan (at most 16)"))?;
    let mut out = Vec::new();
    let ns: Vec<usize> = params.n.map_or_else(|| (2..=n_max).collect(), |n| vec![n]);
    for n in ns {
        for a in 1..n {
            for b in 1..n {
                if a + b > n || (ordered && a > b) {
                    continue;
                }
                if params.a.is_some_and(|x| x != a) || params.b.is_some_and(|x| x != b) {
                    continue;
                }
                out.push((n, a, b));
            }
        }
    }
    if let (Some(a), Some(b)) = (params.a, params.b) {
        hypothesis(a >= 1 && b >= 1 && (!ordered || a <= b), || format!("needs 1 <= a <= b, got a = {a}, b = {b}"))?;
        if let Some(n) = params.n {
            hypothesis(n >= a + b, || format!("needs n >= a + b, got n = {n}, a = {a}, b = {b}"))?;
        }
    }
    Ok(out)
}

pub(crate) fn c20(params: &ClaimParams) -> Result<(Value, Tally)> {
    let shapes = cross_shapes(params, true)?;
    let mut tally = Tally::definitive();
    for &(n, a, b) in &shapes {
        let (ni, ai, bi) = (n as i64, a as i64, b as i64);
        let bound = (bc(ni, bi) - bc(ni - ai, bi) + 1) as usize;
        let profile = compatible_profile(n, a, b)?;
        for (p, &mc) in profile.iter().enumerate().skip(1) {
            if mc == 0 {
                break;
            }
            tally.instance();
            if p + mc > bound {
                let (x, y) = lex_pair(n, a, b, p, mc);
                tally.violation(witness(
                    &[&x, &y],
                    None,
                    format!("n = {n}, a = {a}, b = {b}: |A| + |B| = {} exceeds {bound}", p + mc),
                ));
            }
        }
    }
    Ok((json!({ "n_max": params.n.or(params.n_max).unwrap_or(12), "shapes": shapes.len() }), tally))
}

pub(crate) fn c22(params: &ClaimParams) -> Result<(Value, Tally)> {
    let shapes = cross_shapes(params, false)?;
    let mut tally = Tally::definitive();
    for &(n, a, b) in &shapes {
        let (ni, ai, bi) = (n as i64, a as i64, b as i64);
        let profile = compatible_profile(n, a, b)?;
        let base = bc(ni, bi) - bc(ni - ai + 1, bi);
        let rs: Vec<usize> = params.r.map_or_else(|| (1..=n - a + 1).collect(), |r| vec![r]);
        for r in rs {
            hypothesis(r >= 1 && r <= n - a + 1, || format!("needs 1 <= r <= n - a + 1, got r = {r}"))?;
            let ri = r as i64;
            let bound = if r < b {
                base + bc(ni - ai - ri + 1, bi - ri) + r as u128
            } else {
                base + (n - a + 1) as u128
            };
            // least admissible |B|
            let b_floor = match a.cmp(&b) {
                std::cmp::Ordering::Less => 0,
                std::cmp::Ordering::Equal => r as u128,
                std::cmp::Ordering::Greater => bc(ni, bi) - bc(ni - ai + bi, bi) + r as u128,
            };
            for (p, &mc) in profile.iter().enumerate().skip(r) {
                if (mc as u128) < b_floor {
                    break;
                }
                tally.instance();
                if (p + mc) as u128 > bound {
                    let (x, y) = lex_pair(n, a, b, p, mc);
                    tally.violation(witness(
                        &[&x, &y],
                        None,
                        format!("n = {n}, a = {a}, b = {b}, r = {r}: |A| + |B| = {} exceeds {bound}", p + mc),
                    ));
                }
            }
        }
    }
    Ok((json!({ "n_max": params.n.or(params.n_max).unwrap_or(12), "shapes": shapes.len() }), tally))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::Verdict;
    use crate::family::are_cross_intersecting;

    #[test]
    fn c9_small_grid_holds() {
        let (_, t) = c9(&ClaimParams::new().m_max(9)).unwrap();
        assert_eq!(t.verdict(), Verdict::Holds);
        assert!(t.instances > 0);
    }

    #[test]
    fn c13_at_k3_has_a_genuine_counterexample() {
        let (_, t) = c13(&ClaimParams::new().n(7).k(3)).unwrap();
        assert_eq!(t.verdict(), Verdict::Refuted);
        let fams = &t.counterexamples[0]["families"];
        let f = crate::json::from_value(fams[0].clone()).unwrap();
        let g = crate::json::from_value(fams[1].clone()).unwrap();
        assert!(are_cross_intersecting(&f, &g));
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn c13_c18_hold_from_k4() {
        for check in [c13, c18] {
            let (_, t) = check(&ClaimParams::new().n_max(12)).unwrap();
            assert_eq!(t.verdict(), Verdict::Holds);
        }
    }

    #[test]
    fn c18_at_k3_gives_an_intersecting_witness() {
        let (_, t) = c18(&ClaimParams::new().n(9).k(3)).unwrap();
        assert_eq!(t.verdict(), Verdict::Refuted);
        let f = crate::json::from_value(t.counterexamples[0]["families"][0].clone()).unwrap();
        assert!(f.is_intersecting());
    }

    #[test]
    fn c20_c22_hold_on_small_ground_sets() {
        for check in [c20, c22] {
            let (_, t) = check(&ClaimParams::new().n_max(8)).unwrap();
            assert_eq!(t.verdict(), Verdict::Holds);
        }
    }

    #[test]
    fn hypotheses_are_enforced() {
        assert!(c9(&ClaimParams::new().m(5).l(3)).is_err());
        assert!(c13(&ClaimParams::new().n(7).k(4)).is_err());
    }
}
