//! Claims checked on every maximal intersecting family at small `(n, k)`.
//!
//! Size and diversity can only grow when a family is extended, so a bound on
//! `|F|` that is conditioned on `γ(F)` being large holds for all intersecting
//! families as soon as it holds for the maximal ones.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use serde::Serialize;
use serde_json::{json, Value};

use super::params::hypothesis;
use super::report::{witness, Mode, Tally};
use super::sampled::{bc, c6_sampled, judge, sample_cell};
use super::{ClaimParams, RunConfig};
use crate::binomial::count;
use crate::constructions::{construct, ConstructionId};
use crate::error::{ensure, Result};
use crate::family::SetFamily;
use crate::kset::{enumerate_ksets, Mask};
use crate::search::{for_each_maximal_intersecting, rng_for, sample_maximal_intersecting};

fn cells(params: &ClaimParams, defaults: &[(usize, usize)], ok: impl Fn(usize, usize) -> bool, what: &str) -> Result<Vec<(usize, usize)>> {
    let grid = params.grid(defaults);
    for &(n, k) in &grid {
        hypothesis(ok(n, k), || format!("needs {what}, got n = {n}, k = {k}"))?;
    }
    Ok(grid)
}

fn each_maximal(n: usize, k: usize, mut visit: impl FnMut(SetFamily)) -> Result<()> {
    for_each_maximal_intersecting(n, k, false, |f| {
        visit(f);
        ControlFlow::Continue(())
    })
}

pub(crate) fn c1(params: &ClaimParams) -> Result<(Value, Tally)> {
    let mut defaults: Vec<(usize, usize)> = (4..=12).map(|n| (n, 2)).collect();
    defaults.extend([(6, 3), (7, 3)]);
    let grid = cells(params, &defaults, |n, k| k >= 1 && n >= 2 * k, "n >= 2k > 0")?;
    let mut tally = Tally::definitive();
    for &(n, k) in &grid {
        let bound = bc(n as i64 - 1, k as i64 - 1) as usize;
        let mut best = 0;
        each_maximal(n, k, |f| {
            tally.instance();
            best = best.max(f.len());
            if f.len() > bound {
                tally.violation(witness(&[&f], None, format!("|F| = {} exceeds C(n-1,k-1) = {bound}", f.len())));
            }
        })?;
        tally.note(format!("n = {n}, k = {k}: largest maximal family has {best} members (bound {bound})"));
    }
    Ok((json!({ "grid": grid }), tally))
}

/// Largest non-star maximal intersecting family at `(n, k)`.
#[derive(Debug, Clone, Serialize)]
pub struct NonStarMaximum {
    pub n: usize,
    pub k: usize,
    pub size: usize,
    #[serde(serialize_with = "crate::json::serialize_family")]
    pub witness: SetFamily,
    /// Number of maximal families streamed.
    pub families: u64,
    /// Whether the Fano family (only defined for `n >= 7`, `k >= 3`) was among them.
    pub fano_seen: bool,
}

pub fn hilton_milner_maximum(n: usize, k: usize) -> Result<NonStarMaximum> {
    ensure!(k >= 2 && n > 2 * k, HypothesisViolation, "needs n > 2k >= 4, got n = {n}, k = {k}");
    let fano = (k >= 3 && k + 4 <= n).then(|| construct(ConstructionId::Fano { n, k })).transpose()?;
    let mut best: Option<SetFamily> = None;
    let mut families = 0;
    let mut fano_seen = false;
    each_maximal(n, k, |f| {
        families += 1;
        fano_seen |= fano.as_ref() == Some(&f);
        if !f.is_star() && best.as_ref().map_or(true, |b| f.len() > b.len()) {
            best = Some(f);
        }
    })?;
    let witness = best.ok_or_else(|| crate::error::Error::SamplingFailure("no non-star maximal family".into()))?;
    Ok(NonStarMaximum {
        n,
        k,
        size: witness.len(),
        witness,
        families,
        fano_seen,
    })
}

pub(crate) fn c2(params: &ClaimParams) -> Result<(Value, Tally)> {
    let mut defaults: Vec<(usize, usize)> = (5..=12).map(|n| (n, 2)).collect();
    defaults.push((7, 3));
    let grid = cells(params, &defaults, |n, k| k >= 2 && n > 2 * k, "n > 2k >= 4")?;
    let mut tally = Tally::definitive();
    for &(n, k) in &grid {
        let (ni, ki) = (n as i64, k as i64);
        let bound = (bc(ni - 1, ki - 1) - bc(ni - ki - 1, ki - 1) + 1) as usize;
        let mut best = 0;
        each_maximal(n, k, |f| {
            if f.is_star() {
                return;
            }
            tally.instance();
            best = best.max(f.len());
            if f.len() > bound {
                tally.violation(witness(&[&f], None, format!("non-star |F| = {} exceeds {bound}", f.len())));
            }
        })?;
        tally.note(format!("n = {n}, k = {k}: largest non-star maximal family has {best} members (bound {bound})"));
    }
    Ok((json!({ "grid": grid }), tally))
}

/// `(|A_r|, Δ(A_r), γ(A_r))`.
fn a_r_stats(n: usize, k: usize, r: usize) -> Result<(usize, usize, usize)> {
    let a = construct(ConstructionId::AR { n, k, r })?;
    Ok((a.len(), a.max_degree().0, a.diversity()))
}

/// Strips sets through high-degree elements until `Δ <= cap`; `random` picks
/// removals at random instead of greedily.
fn thin_to_degree(f: &SetFamily, cap: usize, floor: usize, random: Option<u64>) -> SetFamily {
    let mut sets: Vec<Mask> = f.masks().collect();
    let mut rng = random.map(rng_for);
    loop {
        let g = SetFamily::from_masks(f.n(), f.k(), sets.iter().copied()).expect("subfamily keeps shape");
        let degrees = g.degrees();
        let (delta, _) = g.max_degree();
        if delta <= cap || sets.len() <= floor {
            return g;
        }
        let heavy = |m: &Mask| m.elements().any(|e| degrees[e - 1] > cap);
        let idx = match rng.as_mut() {
            Some(rng) => {
                let options: Vec<usize> = (0..sets.len()).filter(|&i| heavy(&sets[i])).collect();
                *options.choose(rng).expect("some set has a heavy element")
            }
            None => (0..sets.len())
                .filter(|&i| heavy(&sets[i]))
                .max_by_key(|&i| sets[i].elements().map(|e| degrees[e - 1]).sum::<usize>())
                .expect("some set has a heavy element"),
        };
        sets.swap_remove(idx);
    }
}

pub(crate) fn c3(params: &ClaimParams, config: &RunConfig) -> Result<(Value, Tally)> {
    let grid = cells(
        params,
        &[(5, 2), (6, 2), (7, 2), (8, 2), (7, 3)],
        |n, k| k >= 2 && n > 2 * k,
        "n > 2k >= 4",
    )?;
    let mut gamma_form = Tally::definitive();
    let mut delta_form = Tally::sampled();
    for &(n, k) in &grid {
        let rs: Vec<usize> = params.r.map_or_else(|| (2..=k).collect(), |r| vec![r]);
        for &r in &rs {
            hypothesis((2..=k).contains(&r), || format!("needs 2 <= r <= k, got r = {r}"))?;
        }
        let stats: Vec<(usize, (usize, usize, usize))> =
            rs.iter().map(|&r| a_r_stats(n, k, r).map(|s| (r, s))).collect::<Result<_>>()?;
        let mut index = 0u64;
        each_maximal(n, k, |f| {
            let gamma = f.diversity();
            for &(r, (size, delta, gamma_a)) in &stats {
                gamma_form.instance();
                if gamma >= gamma_a && f.len() > size {
                    gamma_form.violation(witness(
                        &[&f],
                        None,
                        format!("r = {r}: γ = {gamma} >= {gamma_a} but |F| = {} > |A_r| = {size}", f.len()),
                    ));
                }
                if f.len() <= size {
                    continue;
                }
                // look for a subfamily with small maximum degree that is still too big
                let seeds = [None, Some(index), Some(index ^ config.seed.rotate_left(7))];
                for seed in seeds {
                    let g = thin_to_degree(&f, delta, size, seed);
                    delta_form.instance();
                    if g.max_degree().0 <= delta && g.len() > size {
                        delta_form.violation(witness(
                            &[&g],
                            seed,
                            format!("r = {r}: Δ = {} <= {delta} but |F| = {} > |A_r| = {size}", g.max_degree().0, g.len()),
                        ));
                    }
                }
            }
            index += 1;
        })?;
    }
    gamma_form.note("the γ-conditioned form was checked on every maximal family");
    delta_form.note("the Δ-conditioned form was checked on greedy and random subfamilies of large maximal families");
    gamma_form.absorb(delta_form);
    Ok((json!({ "grid": grid, "r": params.r }), gamma_form))
}

pub(crate) fn c6(params: &ClaimParams, config: &RunConfig) -> Result<(Value, Tally)> {
    let k = params.k.unwrap_or(2);
    let n = params.n.unwrap_or(if k == 2 { 75 } else { 36 * k + 1 });
    hypothesis(k >= 2 && n > 36 * k, || format!("needs n > 36k, got n = {n}, k = {k}"))?;
    let bound = bc(n as i64 - 3, k as i64 - 2) as usize;
    if k == 2 {
        let mut tally = Tally::definitive();
        tally.mode = Some(Mode::ExhaustiveMaximal);
        let mut best = 0;
        each_maximal(n, k, |f| {
            tally.instance();
            best = best.max(f.diversity());
            if f.diversity() > bound {
                tally.violation(witness(&[&f], None, format!("γ = {} exceeds {bound}", f.diversity())));
            }
        })?;
        tally.note(format!("largest diversity over maximal families: {best}"));
        return Ok((json!({ "n": n, "k": k }), tally));
    }
    let samples = params.samples_or(200);
    let mut tally = Tally::sampled();
    tally.mode = Some(Mode::Sampled);
    c6_sampled(&mut tally, config, n, k, samples)?;
    Ok((json!({ "n": n, "k": k, "samples": samples }), tally))
}

fn c23_bound(n: usize, k: usize, r: usize) -> usize {
    let (n, k, r) = (n as i64, k as i64, r as i64);
    let base = bc(n - 1, k - 1) - bc(n - k, k - 1);
    (if r <= k - 2 { base + bc(n - k - r, k - r - 1) + r as u128 } else { base + (n - k) as u128 }) as usize
}

fn c23_check(fs: &[SetFamily]) -> Option<String> {
    let f = &fs[0];
    let (n, k) = (f.n(), f.k());
    let gamma = f.diversity();
    (1..=gamma.min(n - k)).find_map(|r| {
        let bound = c23_bound(n, k, r);
        (f.len() > bound).then(|| format!("γ = {gamma} >= r = {r} but |F| = {} > {bound}", f.len()))
    })
}

pub(crate) fn c23(params: &ClaimParams, config: &RunConfig) -> Result<(Value, Tally)> {
    let ok = |n: usize, k: usize| k >= 3 && n > 2 * k;
    let exhaustive = match (params.n, params.k) {
        (None, None) => vec![(7, 3)],
        _ => cells(params, &[(7, 3)], ok, "n > 2k >= 6")?,
    };
    let sampled_cells = match (params.n, params.k) {
        (None, None) => vec![(9, 3), (10, 4)],
        (Some(n), Some(k)) if !crate::search::within_guard(n, k) => {
            hypothesis(ok(n, k), || format!("needs n > 2k >= 6, got n = {n}, k = {k}"))?;
            vec![(n, k)]
        }
        _ => Vec::new(),
    };
    let exhaustive: Vec<_> = exhaustive.into_iter().filter(|&(n, k)| crate::search::within_guard(n, k)).collect();
    let mut tally = Tally::definitive();
    for &(n, k) in &exhaustive {
        each_maximal(n, k, |f| {
            tally.instance();
            if let Some(detail) = c23_check(std::slice::from_ref(&f)) {
                tally.violation(witness(&[&f], None, detail));
            }
        })?;
    }
    let samples = params.samples_or(300);
    for (cell, &(n, k)) in sampled_cells.iter().enumerate() {
        tally.definitive = false;
        sample_cell(&mut tally, config, 2300 + cell as u64, samples, |seed| {
            let f = sample_maximal_intersecting(n, k, seed)?;
            Ok(judge(&[&f], seed, c23_check))
        })?;
    }
    if !sampled_cells.is_empty() {
        tally.mode = Some(Mode::ExhaustiveMaximalSampled);
    } else {
        tally.mode = Some(Mode::ExhaustiveMaximal);
    }
    Ok((json!({ "exhaustive": exhaustive, "sampled": sampled_cells, "samples": samples }), tally))
}

/// Number of intersecting families of size exactly `C(n-1, k-1)`, by scanning
/// every candidate subfamily of that size.
pub fn count_extremal_intersecting(n: usize, k: usize) -> Result<u64> {
    ensure!(k >= 1 && n >= 2 * k, HypothesisViolation, "needs n >= 2k > 0, got n = {n}, k = {k}");
    let vertices = enumerate_ksets(n, k)?;
    let v = vertices.len();
    let m = count(n - 1, k - 1);
    ensure!(v <= 63, ResourceGuard, "C({n},{k}) = {v} sets is too many for a subset scan");
    let candidates = bc(v as i64, m as i64);
    ensure!(candidates <= 50_000_000, ResourceGuard, "{candidates} candidate subfamilies is too many to scan");
    // bit j of disjoint[i]: sets i and j are disjoint
    let disjoint: Vec<u64> = vertices
        .iter()
        .map(|a| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, b)| !a.intersects(b))
                .fold(0u64, |acc, (j, _)| acc | 1 << j)
        })
        .collect();
    if m == 0 {
        return Ok(1);
    }
    let limit = 1u64 << v;
    let mut subset = (1u64 << m) - 1;
    let mut found = 0;
    while subset < limit {
        let mut rest = subset;
        let mut clean = true;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            if disjoint[i] & subset != 0 {
                clean = false;
                break;
            }
            rest &= rest - 1;
        }
        found += clean as u64;
        // next subset of the same size (Gosper)
        let low = subset & subset.wrapping_neg();
        let ripple = subset + low;
        subset = (((ripple ^ subset) >> 2) / low) | ripple;
    }
    Ok(found)
}
