//! Seeded random families for the sampled checks.
//!
//! Intersecting families are grown in two phases: a short random seed
//! (optionally biased toward a star, a covering pair, or a triangle core),
//! then a completion pass that adds every k-set meeting all members, which
//! makes the family maximal. Random deletions then bring the size down to a
//! random target no smaller than the requested minimum.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::binomial;
use crate::error::{ensure, Error, Result};
use crate::family::SetFamily;
use crate::kset::{KSubsets, Mask};

const MAX_ATTEMPTS: usize = 64;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed of instance `index` in a run seeded with `seed`.
pub fn instance_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 of the pair keeps neighbouring instances uncorrelated
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(0x6A09_E667_F3BC_C909);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_set(rng: &mut impl Rng, n: usize, k: usize, forced: &[usize]) -> Mask {
    let mut m = Mask::from_elements(forced.iter().copied());
    while m.len() < k {
        m.insert(rng.gen_range(1..=n));
    }
    m
}

fn distinct(rng: &mut impl Rng, n: usize, count: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, n, count)
        .into_iter()
        .map(|e| e + 1)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bias {
    Uniform,
    Star,
    Pair,
    Triangle,
}

fn pick_bias(rng: &mut impl Rng, k: usize) -> Bias {
    match rng.gen_range(0..4) {
        0 => Bias::Uniform,
        1 => Bias::Star,
        2 => Bias::Pair,
        _ if k >= 2 => Bias::Triangle,
        _ => Bias::Uniform,
    }
}

fn biased_set(rng: &mut impl Rng, n: usize, k: usize, bias: Bias, core: &[usize], strength: f64) -> Mask {
    if bias == Bias::Uniform || !rng.gen_bool(strength) {
        return random_set(rng, n, k, &[]);
    }
    match bias {
        Bias::Star => random_set(rng, n, k, &core[..1]),
        Bias::Pair => {
            let e = core[rng.gen_range(0..2)];
            random_set(rng, n, k, &[e])
        }
        Bias::Triangle => {
            let skip = rng.gen_range(0..3);
            let two: Vec<usize> = core.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &e)| e).collect();
            random_set(rng, n, k, &two)
        }
        Bias::Uniform => unreachable!(),
    }
}

/// Members indexed by element: `rows[e][w]` has bit `b` set when member
/// `64 w + b` contains `e`. A candidate meets every member iff the union of
/// its elements' rows is full.
struct MemberIndex {
    rows: Vec<Vec<u64>>,
    len: usize,
}

impl MemberIndex {
    fn new(n: usize, members: &[Mask]) -> Self {
        let mut idx = MemberIndex {
            rows: vec![Vec::new(); n + 1],
            len: 0,
        };
        for m in members {
            idx.push(m);
        }
        idx
    }

    fn push(&mut self, m: &Mask) {
        if self.len % 64 == 0 {
            for row in &mut self.rows {
                row.push(0);
            }
        }
        let (w, b) = (self.len / 64, self.len % 64);
        for e in m.elements() {
            self.rows[e][w] |= 1 << b;
        }
        self.len += 1;
    }

    fn meets_all(&self, cand: &Mask, elems: &mut Vec<usize>) -> bool {
        elems.clear();
        elems.extend(cand.elements());
        let words = self.len.div_ceil(64);
        (0..words).all(|w| {
            let full = if w + 1 == words && self.len % 64 != 0 {
                (1u64 << (self.len % 64)) - 1
            } else {
                u64::MAX
            };
            elems.iter().fold(0u64, |acc, &e| acc | self.rows[e][w]) == full
        })
    }
}

/// Every k-set meeting all members is added, scanning only sets that meet
/// the first member.
fn complete_intersecting(n: usize, k: usize, members: &mut Vec<Mask>) {
    let Some(&anchor) = members.first() else {
        return;
    };
    let mut present: HashSet<Mask> = members.iter().copied().collect();
    let mut index = MemberIndex::new(n, members);
    let mut scratch = Vec::with_capacity(k);
    let anchor_elems: Vec<usize> = anchor.elements().collect();
    for (idx, &e) in anchor_elems.iter().enumerate() {
        // sets whose smallest anchor element is e
        let excluded = Mask::from_elements(anchor_elems[..=idx].iter().copied());
        let rest: Vec<usize> = (1..=n).filter(|x| !excluded.contains(*x)).collect();
        if rest.len() < k - 1 {
            continue;
        }
        for sub in KSubsets::new(rest.len(), k - 1).expect("k - 1 <= rest") {
            let mut cand = Mask::EMPTY.with(e);
            for p in sub.elements() {
                cand.insert(rest[p - 1]);
            }
            if !present.contains(&cand) && index.meets_all(&cand, &mut scratch) {
                members.push(cand);
                index.push(&cand);
                present.insert(cand);
            }
        }
    }
}

fn maximal_intersecting(rng: &mut impl Rng, n: usize, k: usize) -> Vec<Mask> {
    let bias = pick_bias(rng, k);
    let core = distinct(rng, n, 3.min(n));
    let strength = rng.gen_range(0.3..1.0);
    let draws = rng.gen_range(1..=4 * k + 4);
    let mut members: Vec<Mask> = Vec::new();
    for _ in 0..draws {
        let cand = biased_set(rng, n, k, bias, &core, strength);
        if !members.contains(&cand) && members.iter().all(|m| m.intersects(&cand)) {
            members.push(cand);
        }
    }
    complete_intersecting(n, k, &mut members);
    members
}

fn thin(rng: &mut impl Rng, mut members: Vec<Mask>, min_size: usize) -> Vec<Mask> {
    let target = rng.gen_range(min_size..=members.len());
    members.shuffle(rng);
    members.truncate(target);
    members
}

fn check_dims(n: usize, k: usize) -> Result<()> {
    ensure!(k >= 1 && n >= 2 * k, InvalidParameters, "sampling needs n >= 2k >= 2 (n = {n}, k = {k})");
    ensure!(n <= crate::kset::MAX_N, InvalidParameters, "n = {n} too large");
    Ok(())
}

/// A random intersecting family with at least `min_size` members, deterministic per seed.
pub fn sample_intersecting(n: usize, k: usize, min_size: usize, seed: u64) -> Result<SetFamily> {
    check_dims(n, k)?;
    let cap = binomial::count(n - 1, k - 1);
    ensure!(min_size <= cap, InvalidParameters, "min_size = {min_size} exceeds C(n-1, k-1) = {cap}");
    let mut rng = rng_for(seed);
    for _ in 0..MAX_ATTEMPTS {
        let members = maximal_intersecting(&mut rng, n, k);
        if members.len() >= min_size.max(1) {
            let kept = thin(&mut rng, members, min_size.max(1));
            return Ok(SetFamily::from_masks_unchecked(n, k, kept));
        }
    }
    Err(Error::SamplingFailure(format!(
        "no intersecting family with at least {min_size} sets after {MAX_ATTEMPTS} attempts (n = {n}, k = {k}, seed = {seed})"
    )))
}

/// A random maximal intersecting family (no deletions).
pub fn sample_maximal_intersecting(n: usize, k: usize, seed: u64) -> Result<SetFamily> {
    check_dims(n, k)?;
    let mut rng = rng_for(seed);
    let members = maximal_intersecting(&mut rng, n, k);
    Ok(SetFamily::from_masks_unchecked(n, k, members))
}

/// Shape of a sampled cross-intersecting pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossSpec {
    pub n: usize,
    pub k: usize,
    pub l: usize,
    pub t: usize,
    pub min_f: usize,
    pub min_g: usize,
    /// Skip the deletion step, leaving a saturated pair.
    pub saturated: bool,
}

impl CrossSpec {
    pub fn new(n: usize, k: usize, l: usize, t: usize) -> Self {
        CrossSpec {
            n,
            k,
            l,
            t,
            min_f: 1,
            min_g: 1,
            saturated: false,
        }
    }
}

fn meets_all(c: &Mask, side: &[Mask], t: usize) -> bool {
    side.iter().all(|m| m.intersection_len(c) >= t)
}

/// A random cross t-intersecting pair with the requested minimum sizes.
pub fn sample_cross_intersecting(spec: CrossSpec, seed: u64) -> Result<(SetFamily, SetFamily)> {
    let CrossSpec { n, k, l, t, min_f, min_g, saturated } = spec;
    ensure!(t >= 1 && k >= t && l >= t, InvalidParameters, "need k, l >= t >= 1");
    ensure!(n >= k.max(l) && n <= crate::kset::MAX_N, InvalidParameters, "bad ground set size {n}");
    let mut rng = rng_for(seed);
    for _ in 0..MAX_ATTEMPTS {
        let core_size = rng.gen_range(t..=(t + 2).min(k.min(l)));
        let core = distinct(&mut rng, n, core_size.min(n));
        let strength = rng.gen_range(0.0..1.0);
        let mut f: Vec<Mask> = Vec::new();
        let mut g: Vec<Mask> = Vec::new();
        for round in 0..rng.gen_range(2..=6 * (k + l)) {
            let (size, side, other) = if round % 2 == 0 { (k, &mut f, &g) } else { (l, &mut g, &f) };
            let forced: Vec<usize> = if rng.gen_bool(strength) {
                let take = rng.gen_range(t.min(core.len())..=core.len());
                core[..take].to_vec()
            } else {
                Vec::new()
            };
            let cand = random_set(&mut rng, n, size, &forced);
            if !side.contains(&cand) && meets_all(&cand, other, t) {
                side.push(cand);
            }
        }
        // alternate completion passes until neither side grows
        let mut order = [true, false];
        if rng.gen_bool(0.5) {
            order.reverse();
        }
        loop {
            let mut grew = false;
            for &fill_f in &order {
                let (size, side, other) = if fill_f { (k, &mut f, &g) } else { (l, &mut g, &f) };
                for c in KSubsets::new(n, size)? {
                    let cm = c.mask();
                    if !side.contains(&cm) && meets_all(&cm, other, t) {
                        side.push(cm);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        if f.len() < min_f || g.len() < min_g {
            continue;
        }
        if !saturated {
            f = thin(&mut rng, f, min_f);
            g = thin(&mut rng, g, min_g);
        }
        return Ok((
            SetFamily::from_masks_unchecked(n, k, f),
            SetFamily::from_masks_unchecked(n, l, g),
        ));
    }
    Err(Error::SamplingFailure(format!(
        "no cross {t}-intersecting pair with sizes >= ({min_f}, {min_g}) after {MAX_ATTEMPTS} attempts (seed = {seed})"
    )))
}

/// Down-closure under the shifting order of a few random generators; always initial.
pub fn sample_initial(n: usize, k: usize, seed: u64) -> Result<SetFamily> {
    ensure!(k <= n, InvalidParameters, "k = {k} exceeds n = {n}");
    let mut rng = rng_for(seed);
    let all = crate::kset::enumerate_ksets(n, k)?;
    let gens: Vec<_> = (0..rng.gen_range(1..=4)).map(|_| *all.choose(&mut rng).unwrap()).collect();
    let sets = all.into_iter().filter(|a| gens.iter().any(|g| a.precedes(g))).collect::<Vec<_>>();
    SetFamily::new(n, k, sets)
}

/// A random initial subfamily of an initial family `within`.
pub fn sample_initial_within(within: &SetFamily, seed: u64) -> SetFamily {
    if within.is_empty() {
        return within.clone();
    }
    let mut rng = rng_for(seed);
    let gens: Vec<_> = (0..rng.gen_range(1..=4))
        .map(|_| *within.sets().choose(&mut rng).unwrap())
        .collect();
    let sets: Vec<_> = within
        .iter()
        .filter(|a| gens.iter().any(|g| a.precedes(g)))
        .copied()
        .collect();
    SetFamily::new(within.n(), within.k(), sets).expect("subfamily keeps shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::are_cross_t_intersecting;

    #[test]
    fn intersecting_samples() {
        for seed in 0..200 {
            let f = sample_intersecting(6, 2, 1, seed).unwrap();
            assert!(!f.is_empty() && f.is_intersecting());
        }
        assert_eq!(sample_intersecting(9, 3, 5, 42).unwrap(), sample_intersecting(9, 3, 5, 42).unwrap());
        assert!(sample_intersecting(6, 3, 11, 0).is_err());
    }

    #[test]
    fn large_samples_reach_minimum() {
        let mut failures = 0;
        for seed in 0..1000 {
            match sample_intersecting(20, 3, 36, seed) {
                Ok(f) => assert!(f.len() >= 36 && f.is_intersecting()),
                Err(Error::SamplingFailure(_)) => failures += 1,
                Err(e) => panic!("{e}"),
            }
        }
        assert_eq!(failures, 0);
    }

    #[test]
    fn maximal_samples_are_maximal() {
        for seed in 0..50 {
            let f = sample_maximal_intersecting(8, 3, seed).unwrap();
            assert!(f.is_intersecting());
            for c in KSubsets::new(8, 3).unwrap() {
                if !f.contains(&c) {
                    assert!(f.iter().any(|s| !s.intersects(&c)));
                }
            }
        }
    }

    #[test]
    fn cross_samples() {
        for seed in 0..100 {
            let spec = CrossSpec::new(8, 3, 2, 1);
            let (f, g) = sample_cross_intersecting(spec, seed).unwrap();
            assert!(are_cross_t_intersecting(&f, &g, 1).unwrap());
            let spec = CrossSpec { saturated: true, ..CrossSpec::new(9, 4, 4, 2) };
            let (f, g) = sample_cross_intersecting(spec, seed).unwrap();
            assert!(are_cross_t_intersecting(&f, &g, 2).unwrap());
        }
    }

    #[test]
    fn initial_samples() {
        for seed in 0..100 {
            let f = sample_initial(8, 3, seed).unwrap();
            assert!(f.is_initial() && !f.is_empty());
            let g = sample_initial_within(&f, seed + 1);
            assert!(g.is_initial() && g.is_subfamily_of(&f));
        }
    }

    #[test]
    fn instance_seeds_differ() {
        let seeds: HashSet<u64> = (0..1000).map(|i| instance_seed(7, i)).collect();
        assert_eq!(seeds.len(), 1000);
    }
}
