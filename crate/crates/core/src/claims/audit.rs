//! Claims about the output of shifting ad extremis, and a self-audit of the engine.

use std::time::Instant;

use rand::Rng;
use serde_json::{json, Value};

use super::params::hypothesis;
use super::report::{witness, ClaimReport, Mode, Tally};
use super::sampled::{bc, judge, sample_cell, Outcome};
use super::{ClaimParams, RunConfig};
use crate::constructions::{construct, ConstructionId};
use crate::error::{Error, Result};
use crate::family::{are_cross_intersecting, SetFamily};
use crate::kset::Mask;
use crate::search::{rng_for, sample_cross_intersecting, CrossSpec};
use crate::shifting::{
    audit_ad_extremis, is_saturated, saturate_pair, shift_ad_extremis, shift_ad_extremis_traced, shift_family, shift_ij,
    Atom, PropertyPredicate,
};

const MAX_ROUNDS: usize = 1000;

fn non_trivial(f: &SetFamily) -> bool {
    f.covering_number().is_some_and(|t| t >= 2)
}

/// Alternates shifting ad extremis (keeping both families non-trivial) with
/// saturation until the pair is both saturated and shifted ad extremis.
fn extremize(f: &SetFamily, g: &SetFamily) -> Result<(SetFamily, SetFamily)> {
    let predicate = PropertyPredicate::non_trivial();
    let (mut f, mut g) = (f.clone(), g.clone());
    for _ in 0..MAX_ROUNDS {
        let run = shift_ad_extremis(&[f, g], &predicate)?;
        let [f2, g2]: [SetFamily; 2] = run.families.try_into().expect("pair in, pair out");
        if is_saturated(&f2, &g2) {
            return Ok((f2, g2));
        }
        (f, g) = saturate_pair(&f2, &g2)?;
    }
    Err(Error::ResourceGuard(format!("no fixed point after {MAX_ROUNDS} rounds")))
}

fn triples(params: &ClaimParams, defaults: &[(usize, usize, usize)]) -> Result<Vec<(usize, usize, usize)>> {
    let grid = match (params.n, params.k, params.l) {
        (Some(n), Some(k), Some(l)) => vec![(n, k, l)],
        (Some(n), Some(k), None) => vec![(n, k, k)],
        _ => defaults.to_vec(),
    };
    for &(n, k, l) in &grid {
        hypothesis(k >= 2 && l >= 2 && n > k + l, || format!("needs n > k + ℓ and k, ℓ >= 2, got n = {n}, k = {k}, ℓ = {l}"))?;
        hypothesis(n <= 12, || format!("n = {n} is too large for engine runs (at most 12)"))?;
    }
    Ok(grid)
}

fn size_thresholds(n: usize, k: usize, l: usize) -> (usize, usize) {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    let f = bc(n - 2, k - 2) + bc(n - 4, k - 2) - bc(n - l - 4, k - 2);
    let g = bc(n - 2, l - 2) + bc(n - 4, l - 2) - bc(n - k - 4, l - 2);
    (f as usize, g as usize)
}

fn c11_check(thresholds: (usize, usize)) -> impl Fn(&[SetFamily]) -> Option<String> + Sync + Send + Copy {
    move |fs: &[SetFamily]| {
        let (f, g) = (&fs[0], &fs[1]);
        if f.len() <= thresholds.0 || g.len() <= thresholds.1 || !non_trivial(f) || !non_trivial(g) {
            return Some("input outside the hypothesis".to_owned());
        }
        match extremize(f, g) {
            Ok((f2, g2)) if f2.is_initial() && g2.is_initial() => None,
            Ok((f2, g2)) => Some(format!(
                "fixed point of sizes ({}, {}) is not initial: F initial = {}, G initial = {}",
                f2.len(),
                g2.len(),
                f2.is_initial(),
                g2.is_initial()
            )),
            Err(e) => Some(format!("engine failed: {e}")),
        }
    }
}

pub(crate) fn c11(params: &ClaimParams, config: &RunConfig) -> Result<(Value, Tally)> {
    let grid = triples(params, &[(9, 3, 3), (10, 3, 3), (10, 3, 4)])?;
    let samples = params.samples_or(200);
    let mut tally = Tally::sampled();
    for (cell, &(n, k, l)) in grid.iter().enumerate() {
        let thresholds = size_thresholds(n, k, l);
        let check = c11_check(thresholds);
        // named non-trivial families, each paired with itself
        if k == l {
            let mut ids = vec![ConstructionId::Triangle { n, k }, ConstructionId::HiltonMilner { n, k }];
            ids.extend((2..=k).map(|r| ConstructionId::AR { n, k, r }));
            for id in ids {
                let f = construct(id)?;
                if f.len() > thresholds.0 && f.len() > thresholds.1 && non_trivial(&f) {
                    tally.instance();
                    if let Some(detail) = check(&[f.clone(), f.clone()]) {
                        tally.violation(witness(&[&f, &f], None, format!("{id:?}: {detail}")));
                    }
                }
            }
        }
        let spec = CrossSpec {
            min_f: thresholds.0 + 1,
            min_g: thresholds.1 + 1,
            ..CrossSpec::new(n, k, l, 1)
        };
        sample_cell(&mut tally, config, 1100 + cell as u64, samples, |seed| {
            let (f, g) = sample_cross_intersecting(spec, seed)?;
            if !(non_trivial(&f) && non_trivial(&g)) {
                return Ok(Outcome::Skip);
            }
            Ok(judge(&[&f, &g], seed, check))
        })?;
    }
    Ok((json!({ "grid": grid, "samples": samples }), tally))
}

/// Quadruples `x1 < x2`, `y1 < y2`, `x1 < y1`, all distinct.
fn quadruples(n: usize) -> impl Iterator<Item = [usize; 4]> {
    (1..=n).flat_map(move |x1| {
        (x1 + 1..=n).flat_map(move |x2| {
            (x1 + 1..=n).flat_map(move |y1| {
                (y1 + 1..=n)
                    .filter(move |&y2| y1 != x2 && y2 != x2)
                    .map(move |y2| [x1, x2, y1, y2])
            })
        })
    })
}

fn condition_i(j: &SetFamily, [x1, x2, y1, y2]: [usize; 4]) -> bool {
    [(x1, y1), (x1, y2), (x2, y1), (x2, y2)]
        .iter()
        .all(|&(a, b)| shift_family(j, a.min(b), a.max(b)).is_ok_and(|s| s.is_star()))
}

fn condition_ii(j: &SetFamily, [x1, x2, y1, y2]: [usize; 4]) -> bool {
    let avoids = |a: usize, b: usize| j.masks().any(|m| !m.contains(a) && !m.contains(b));
    avoids(x1, x2) && avoids(y1, y2)
}

fn condition_iii(j: &SetFamily, [x1, x2, y1, y2]: [usize; 4]) -> bool {
    let full = |a: usize, b: usize| j.is_full(&[a, b]).unwrap_or(false);
    !(full(x1, x2) && full(y1, y2))
}

/// For every `(|J| - 3)`-set `R` outside `Z`, at most two 3-subsets `S` of `Z`
/// have `R ∪ S ∈ J`. Returns an offending `R`.
fn at_most_two_triples(j: &SetFamily, z: [usize; 4]) -> Option<Mask> {
    let zm = Mask::from_elements(z);
    let mut counts: std::collections::HashMap<Mask, usize> = std::collections::HashMap::new();
    for m in j.masks() {
        if m.and(&zm).len() == 3 {
            *counts.entry(m.and_not(&zm)).or_default() += 1;
        }
    }
    counts
        .into_iter()
        .filter(|&(_, c)| c > 2)
        .map(|(r, _)| r)
        .min_by(|a, b| a.lex_cmp(b))
}

fn c12_check(fs: &[SetFamily]) -> Option<String> {
    let (f, g) = (&fs[0], &fs[1]);
    let Ok((f2, g2)) = extremize(f, g) else {
        return Some("engine failed".to_owned());
    };
    if f2.is_initial() && g2.is_initial() {
        return None;
    }
    let mut found = false;
    for (name, j) in [("F", &f2), ("G", &g2)] {
        for z in quadruples(j.n()) {
            if !condition_i(j, z) {
                continue;
            }
            if let Some(r) = at_most_two_triples(j, z) {
                return Some(format!("{name}, Z = {z:?}: R = {r:?} completes three 3-subsets of Z"));
            }
            found |= condition_ii(j, z) && condition_iii(j, z);
        }
    }
    (!found).then(|| {
        format!(
            "fixed point F = {:?}, G = {:?}: no x1, x2, y1, y2 satisfy (i), (ii) and (iii) in either family",
            f2.to_lists(),
            g2.to_lists()
        )
    })
}

pub(crate) fn c12(params: &ClaimParams, config: &RunConfig) -> Result<(Value, Tally)> {
    // With a 2-uniform side the conclusions can fail (see the tests), so the
    // default grid keeps both uniformities at least 3.
    let grid = triples(params, &[(8, 3, 3), (9, 3, 3), (9, 3, 4), (10, 4, 3)])?;
    let samples = params.samples_or(200);
    let mut tally = Tally::sampled();
    for (cell, &(n, k, l)) in grid.iter().enumerate() {
        let spec = CrossSpec {
            saturated: true,
            ..CrossSpec::new(n, k, l, 1)
        };
        sample_cell(&mut tally, config, 1200 + cell as u64, samples, |seed| {
            let (f, g) = sample_cross_intersecting(spec, seed)?;
            if !(non_trivial(&f) && non_trivial(&g)) {
                return Ok(Outcome::Skip);
            }
            let (f2, g2) = extremize(&f, &g)?;
            if f2.is_initial() && g2.is_initial() {
                return Ok(Outcome::Skip);
            }
            Ok(judge(&[&f, &g], seed, c12_check))
        })?;
    }
    if tally.instances == 0 {
        tally.note("no sampled pair ended at a non-initial fixed point, so nothing was audited");
    }
    Ok((json!({ "grid": grid, "samples": samples }), tally))
}

fn tuple_weight(t: &[SetFamily]) -> u64 {
    t.iter().map(SetFamily::weight).sum()
}

fn audit_one(seed: u64, traced: bool) -> Result<Outcome> {
    let mut rng = rng_for(seed);
    let n = rng.gen_range(4..=10);
    let k = rng.gen_range(1..n);
    let l = rng.gen_range(1..n);
    let (f, g) = sample_cross_intersecting(CrossSpec::new(n, k, l, 1), seed)?;
    let tuple = [f, g];
    let i = rng.gen_range(1..n);
    let j = rng.gen_range(i + 1..=n);
    let shifted = shift_ij(&tuple, i, j)?;
    let changed = shifted != tuple;
    let (w0, w1) = (tuple_weight(&tuple), tuple_weight(&shifted));
    let mut problems = Vec::new();
    if !are_cross_intersecting(&shifted[0], &shifted[1]) {
        problems.push(format!("S_{i},{j} broke cross-intersection"));
    }
    if shifted[0].len() != tuple[0].len() || shifted[1].len() != tuple[1].len() {
        problems.push(format!("S_{i},{j} changed sizes"));
    }
    if changed != (w1 < w0) || w1 > w0 {
        problems.push(format!("S_{i},{j}: changed = {changed}, weight {w0} -> {w1}"));
    }
    if traced {
        let mut predicate = PropertyPredicate::True;
        if tuple.iter().all(non_trivial) {
            predicate = predicate.and(PropertyPredicate::non_trivial());
        }
        let atom = match rng.gen_range(0..3) {
            0 => tuple[0].rho().ok().map(Atom::RhoAtMost),
            1 => Some(Atom::GammaAtLeast(tuple[0].diversity())),
            _ => None,
        };
        if let Some(atom) = atom {
            predicate = predicate.and(PropertyPredicate::on(0, atom));
        }
        let mut steps = Vec::new();
        let run = shift_ad_extremis_traced(&tuple, &predicate, |s| steps.push(*s))?;
        let mut w = w0;
        for s in &steps {
            if s.w_before != w || s.w_after >= s.w_before {
                problems.push(format!("trace step {s:?} does not continue from weight {w}"));
                break;
            }
            w = s.w_after;
        }
        if tuple_weight(&run.families) != w || run.weight_drop != w0 - w || run.shifts_applied != steps.len() {
            problems.push("run summary disagrees with its trace".to_owned());
        }
        if audit_ad_extremis(&run.families, &predicate).is_err() {
            problems.push(format!("result is not shifted ad extremis for {predicate}"));
        }
        if !predicate.holds(&run.families) || !are_cross_intersecting(&run.families[0], &run.families[1]) {
            problems.push(format!("result lost {predicate} or cross-intersection"));
        }
    }
    if problems.is_empty() {
        return Ok(Outcome::Clean);
    }
    let refs: Vec<&SetFamily> = tuple.iter().collect();
    Ok(Outcome::Violation(witness(&refs, Some(seed), problems.join("; "))))
}

/// Random simultaneous shifts on sampled cross-intersecting pairs (every tenth
/// one also run ad extremis with a traced, randomly chosen predicate), checking
/// the invariants the shifting engine promises.
pub fn engine_audit(samples: usize, config: &RunConfig) -> Result<ClaimReport> {
    let start = Instant::now();
    let mut tally = Tally::definitive();
    sample_cell(&mut tally, config, 9000, samples, |seed| {
        let traced = seed % 10 == 0;
        audit_one(seed, traced)
    })?;
    Ok(tally.into_report(
        "engine-audit".to_owned(),
        json!({ "samples": samples }),
        Mode::EngineRun,
        config.seed,
        start.elapsed(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::Verdict;

    #[test]
    fn quadruple_order() {
        let q: Vec<_> = quadruples(4).collect();
        assert_eq!(q, vec![[1, 2, 3, 4], [1, 3, 2, 4], [1, 4, 2, 3]]);
    }

    #[test]
    fn two_uniform_fixed_point_defeats_the_conclusions() {
        // A 4-cycle against its two diagonals: saturated, τ = 2 on both sides,
        // shifted ad extremis, not initial. Only F admits a quadruple with (i),
        // and there both pairs of Z are members of F, so (iii) fails.
        let f = SetFamily::from_lists(7, 2, &[&[1, 3], &[2, 4]]).unwrap();
        let g = SetFamily::from_lists(7, 2, &[&[1, 2], &[1, 4], &[2, 3], &[3, 4]]).unwrap();
        assert_eq!(extremize(&f, &g).unwrap(), (f.clone(), g.clone()));
        assert!(is_saturated(&f, &g) && !f.is_initial());
        assert!(c12_check(&[f, g]).is_some());
        let (_, t) = c12(&ClaimParams::new().n(7).k(2).l(2).samples(100), &RunConfig::default()).unwrap();
        assert_eq!(t.verdict(), Verdict::Refuted);
    }

    #[test]
    fn thresholds() {
        // (9,3,3): C(7,1) + C(5,1) - C(2,1)
        assert_eq!(size_thresholds(9, 3, 3), (10, 10));
    }

    #[test]
    fn triangle_pair_is_extremized_to_an_initial_pair() {
        let t = construct(ConstructionId::Triangle { n: 9, k: 3 }).unwrap();
        let (f, g) = extremize(&t, &t).unwrap();
        assert!(f.is_initial() && g.is_initial());
        assert!(non_trivial(&f) && non_trivial(&g));
    }

    #[test]
    fn engine_audit_is_clean() {
        let r = engine_audit(300, &RunConfig::default()).unwrap();
        assert_eq!(r.verdict, Verdict::Holds, "{:?}", r.counterexamples);
        assert_eq!(r.instances, 300);
    }
}
