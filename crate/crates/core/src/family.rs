//! Canonical k-uniform families and their statistics.

use std::collections::HashSet;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::binomial;
use crate::error::{ensure, Error, Result};
use crate::kset::{KSet, KSubsets, Mask, MAX_N};

/// Exact rational used for ρ and every threshold compared against it.
pub type Rational = Ratio<i64>;

/// A k-uniform family on `[n]`, members distinct and in ascending lex order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    n: usize,
    k: usize,
    sets: Vec<KSet>,
}

impl SetFamily {
    pub fn empty(n: usize, k: usize) -> Result<SetFamily> {
        check_shape(n, k)?;
        Ok(SetFamily {
            n,
            k,
            sets: Vec::new(),
        })
    }

    /// Builds a family, sorting and removing duplicate members.
    pub fn new<I: IntoIterator<Item = KSet>>(n: usize, k: usize, sets: I) -> Result<SetFamily> {
        check_shape(n, k)?;
        let mut v: Vec<KSet> = sets.into_iter().collect();
        for s in &v {
            ensure!(
                s.n() == n && s.k() == k,
                InvalidParameters,
                "member {s} has shape ({}, {}), family expects ({n}, {k})",
                s.n(),
                s.k()
            );
        }
        v.sort_unstable();
        v.dedup();
        Ok(SetFamily { n, k, sets: v })
    }

    pub fn from_masks<I: IntoIterator<Item = Mask>>(n: usize, k: usize, masks: I) -> Result<SetFamily> {
        let sets = masks
            .into_iter()
            .map(|m| KSet::from_mask(n, m))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(n, k, sets)
    }

    pub fn from_lists(n: usize, k: usize, lists: &[&[usize]]) -> Result<SetFamily> {
        let sets = lists
            .iter()
            .map(|l| KSet::new(n, l))
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(n, k, sets)
    }

    /// All of `C([n], k)`.
    pub fn complete(n: usize, k: usize) -> Result<SetFamily> {
        Ok(SetFamily {
            n,
            k,
            sets: KSubsets::new(n, k)?.collect(),
        })
    }

    /// Caller guarantees canonical order and uniform shape.
    pub(crate) fn from_sorted_unchecked(n: usize, k: usize, sets: Vec<KSet>) -> SetFamily {
        debug_assert!(sets.windows(2).all(|w| w[0] < w[1]));
        SetFamily { n, k, sets }
    }

    pub(crate) fn from_masks_unchecked(n: usize, k: usize, masks: impl IntoIterator<Item = Mask>) -> SetFamily {
        let mut sets: Vec<KSet> = masks
            .into_iter()
            .map(|m| KSet::from_mask_unchecked(n, m))
            .collect();
        sets.sort_unstable();
        sets.dedup();
        SetFamily { n, k, sets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[KSet] {
        &self.sets
    }

    pub fn iter(&self) -> std::slice::Iter<'_, KSet> {
        self.sets.iter()
    }

    pub fn masks(&self) -> impl Iterator<Item = Mask> + '_ {
        self.sets.iter().map(KSet::mask)
    }

    pub fn contains(&self, set: &KSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    pub fn contains_mask(&self, mask: &Mask) -> bool {
        self.sets
            .binary_search_by(|s| s.mask().lex_cmp(mask))
            .is_ok()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.n == other.n && self.k == other.k && self.sets.iter().all(|s| other.contains(s))
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(KSet::to_vec).collect()
    }

    /// `|F(i)|` for every `i`, indexed by `i - 1`.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for s in &self.sets {
            for e in s.elements() {
                deg[e - 1] += 1;
            }
        }
        deg
    }

    pub fn degree(&self, element: usize) -> usize {
        self.sets.iter().filter(|s| s.contains(element)).count()
    }

    /// `Δ(F)` with the smallest maximizing element; `(0, None)` when `n = 0`.
    pub fn max_degree(&self) -> (usize, Option<usize>) {
        let deg = self.degrees();
        let mut best = (0, None);
        for (i, &d) in deg.iter().enumerate() {
            if best.1.is_none() || d > best.0 {
                best = (d, Some(i + 1));
            }
        }
        best
    }

    /// `γ(F) = min_i |F(ī)| = |F| - Δ(F)`.
    pub fn diversity(&self) -> usize {
        self.len() - self.max_degree().0
    }

    /// `ρ(F) = Δ(F) / |F|`.
    pub fn rho(&self) -> Result<Rational> {
        if self.is_empty() {
            return Err(Error::EmptyFamily);
        }
        Ok(Rational::new(self.max_degree().0 as i64, self.len() as i64))
    }

    /// A member set contains a common element (τ ≤ 1 on a nonempty family).
    pub fn is_star(&self) -> bool {
        !self.is_empty() && self.max_degree().0 == self.len()
    }

    /// `w(F) = Σ_F Σ_{i∈F} i`.
    pub fn weight(&self) -> u64 {
        self.sets
            .iter()
            .map(|s| s.elements().map(|e| e as u64).sum::<u64>())
            .sum()
    }

    pub fn is_t_intersecting(&self, t: usize) -> Result<bool> {
        ensure!(t >= 1, InvalidParameters, "t must be at least 1");
        if self.k < t && !self.is_empty() {
            return Ok(false);
        }
        let masks: Vec<Mask> = self.masks().collect();
        for (idx, a) in masks.iter().enumerate() {
            for b in &masks[idx + 1..] {
                if a.intersection_len(b) < t {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_intersecting(&self) -> bool {
        let masks: Vec<Mask> = self.masks().collect();
        if self.k == 0 {
            return masks.is_empty();
        }
        masks
            .iter()
            .enumerate()
            .all(|(idx, a)| masks[idx + 1..].iter().all(|b| a.intersects(b)))
    }

    pub fn is_cross_t_intersecting(&self, other: &SetFamily, t: usize) -> Result<bool> {
        are_cross_t_intersecting(self, other, t)
    }

    /// `F(P, Q) = {F \ Q : F ∩ Q = P}` on the relabeled ground set `[n] \ Q`.
    pub fn restriction(&self, p: &[usize], q: &[usize]) -> Result<Restricted> {
        let pm = self.label_mask(p)?;
        let qm = self.label_mask(q)?;
        ensure!(pm.is_subset(&qm), InvalidParameters, "P = {p:?} is not a subset of Q = {q:?}");
        ensure!(pm.len() <= self.k, InvalidParameters, "P = {p:?} is larger than the uniformity {}", self.k);
        Ok(self.restrict_masks(pm, qm))
    }

    pub(crate) fn restrict_masks(&self, p: Mask, q: Mask) -> Restricted {
        let kept: Vec<usize> = (1..=self.n).filter(|&e| !q.contains(e)).collect();
        let mut relabel = vec![0usize; self.n + 1];
        for (idx, &e) in kept.iter().enumerate() {
            relabel[e] = idx + 1;
        }
        let n2 = kept.len();
        let k2 = self.k - p.len();
        let sets = self
            .sets
            .iter()
            .filter(|s| s.mask().and(&q) == p)
            .map(|s| {
                let mut m = Mask::EMPTY;
                for e in s.elements() {
                    if !q.contains(e) {
                        m.insert(relabel[e]);
                    }
                }
                KSet::from_mask_unchecked(n2, m)
            })
            .collect::<Vec<_>>();
        // relabeling is order preserving, and removing the common part P keeps lex order
        Restricted {
            family: SetFamily::from_sorted_unchecked(n2, k2, sets),
            kept,
        }
    }

    /// `F(i)`.
    pub fn link(&self, element: usize) -> Result<SetFamily> {
        Ok(self.restriction(&[element], &[element])?.family)
    }

    /// `F(ī)`.
    pub fn avoiding(&self, element: usize) -> Result<SetFamily> {
        Ok(self.restriction(&[], &[element])?.family)
    }

    /// Number of members `F` with `F ∩ Q = P`, without building the restriction.
    pub fn restriction_count(&self, p: Mask, q: Mask) -> usize {
        self.sets.iter().filter(|s| s.mask().and(&q) == p).count()
    }

    /// `F_P = {F ∈ F : F ∩ P ≠ ∅}` for a 2-set `P`.
    pub fn restriction_to_pair(&self, pair: &[usize]) -> Result<SetFamily> {
        let pm = self.label_mask(pair)?;
        ensure!(pm.len() == 2, InvalidParameters, "P = {pair:?} must have exactly two elements");
        let sets = self
            .sets
            .iter()
            .filter(|s| s.mask().intersects(&pm))
            .copied()
            .collect();
        Ok(SetFamily::from_sorted_unchecked(self.n, self.k, sets))
    }

    /// `∂F`, the (k−1)-sets covered by some member.
    pub fn shadow(&self) -> Result<SetFamily> {
        ensure!(self.k >= 1, InvalidParameters, "shadow of a 0-uniform family is undefined");
        let mut out: HashSet<Mask> = HashSet::new();
        for s in &self.sets {
            for e in s.elements() {
                out.insert(s.mask().without(e));
            }
        }
        Ok(SetFamily::from_masks_unchecked(self.n, self.k - 1, out))
    }

    /// `T^(t)(F)`: all t-subsets of `[n]` meeting every member.
    pub fn transversals(&self, t: usize) -> Result<SetFamily> {
        ensure!(t <= self.n, InvalidParameters, "t = {t} exceeds n = {}", self.n);
        let masks: Vec<Mask> = self.masks().collect();
        let sets = KSubsets::new(self.n, t)?
            .filter(|c| masks.iter().all(|m| m.intersects(&c.mask())))
            .collect();
        Ok(SetFamily::from_sorted_unchecked(self.n, t, sets))
    }

    /// `τ(F)`; `Some(0)` for the empty family and `None` when no transversal exists.
    pub fn covering_number(&self) -> Option<usize> {
        if self.is_empty() {
            return Some(0);
        }
        if self.k == 0 {
            return None;
        }
        let masks: Vec<Mask> = self.masks().collect();
        (1..=self.n).find(|&t| has_cover(&masks, Mask::EMPTY, t))
    }

    /// `F(D)` is all of `C([n] \ D, k - |D|)`.
    pub fn is_full(&self, d: &[usize]) -> Result<bool> {
        let dm = self.label_mask(d)?;
        ensure!(
            dm.len() <= self.k,
            InvalidParameters,
            "|D| = {} exceeds k = {}",
            dm.len(),
            self.k
        );
        Ok(self.is_full_mask(dm))
    }

    pub(crate) fn is_full_mask(&self, d: Mask) -> bool {
        let dl = d.len();
        self.restriction_count(d, d) == binomial::count(self.n - dl, self.k - dl)
    }

    /// Closed downward under the shifting partial order.
    ///
    /// Checked through single replacements `j -> i` with `i < j`, which
    /// generate the componentwise order.
    pub fn is_initial(&self) -> bool {
        self.sets.iter().all(|s| {
            let m = s.mask();
            m.elements().all(|j| {
                (1..j)
                    .filter(|&i| !m.contains(i))
                    .all(|i| self.contains_mask(&m.without(j).with(i)))
            })
        })
    }

    pub fn stats(&self) -> Result<FamilyStats> {
        let rho = self.rho()?;
        let degrees = self.degrees();
        let (max_degree, argmax) = self.max_degree();
        Ok(FamilyStats {
            size: self.len(),
            max_degree,
            argmax_element: argmax.unwrap_or(0),
            rho,
            diversity: self.len() - max_degree,
            covering_number: self.covering_number(),
            degrees,
        })
    }

    fn label_mask(&self, labels: &[usize]) -> Result<Mask> {
        let mut m = Mask::EMPTY;
        for &e in labels {
            ensure!(e >= 1 && e <= self.n, InvalidParameters, "label {e} outside [1, {}]", self.n);
            m.insert(e);
        }
        Ok(m)
    }
}

impl std::fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SetFamily(n={}, k={}, ", self.n, self.k)?;
        f.debug_list().entries(self.sets.iter()).finish()?;
        write!(f, ")")
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a KSet;
    type IntoIter = std::slice::Iter<'a, KSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    ensure!(k <= n, InvalidParameters, "k = {k} exceeds n = {n}");
    ensure!(n <= MAX_N, InvalidParameters, "n = {n} exceeds the supported maximum {MAX_N}");
    Ok(())
}

fn has_cover(masks: &[Mask], chosen: Mask, budget: usize) -> bool {
    let Some(unhit) = masks.iter().find(|m| !m.intersects(&chosen)) else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    unhit
        .elements()
        .any(|e| has_cover(masks, chosen.with(e), budget - 1))
}

/// Result of [`SetFamily::restriction`]: the family on `[n] \ Q` plus the relabeling.
#[derive(Debug, Clone)]
pub struct Restricted {
    pub family: SetFamily,
    /// `kept[i - 1]` is the original label of new element `i`.
    pub kept: Vec<usize>,
}

pub fn are_cross_t_intersecting(f: &SetFamily, g: &SetFamily, t: usize) -> Result<bool> {
    ensure!(t >= 1, InvalidParameters, "t must be at least 1");
    ensure!(
        f.n == g.n,
        InvalidParameters,
        "ground sets differ: {} vs {}",
        f.n,
        g.n
    );
    Ok(f
        .masks()
        .all(|a| g.masks().all(|b| a.intersection_len(&b) >= t)))
}

pub fn are_cross_intersecting(f: &SetFamily, g: &SetFamily) -> bool {
    f.n == g.n && f.masks().all(|a| g.masks().all(|b| a.intersects(&b)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyStats {
    pub size: usize,
    pub degrees: Vec<usize>,
    pub max_degree: usize,
    pub argmax_element: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub rho: Rational,
    pub diversity: usize,
    pub covering_number: Option<usize>,
}

/// `p/q` with both parts always printed.
pub fn format_ratio(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn serialize_ratio<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_ratio(r))
}

/// Parses `p/q` or an integer; decimals are rejected.
pub fn parse_ratio(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let p: i64 = p
        .parse()
        .map_err(|_| Error::InvalidParameters(format!("bad rational numerator in {text:?}")))?;
    let q: i64 = q
        .parse()
        .map_err(|_| Error::InvalidParameters(format!("bad rational denominator in {text:?}")))?;
    ensure!(q != 0, InvalidParameters, "zero denominator in {text:?}");
    Ok(Rational::new(p, q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, k: usize, lists: &[&[usize]]) -> SetFamily {
        SetFamily::from_lists(n, k, lists).unwrap()
    }

    fn fano() -> SetFamily {
        fam(
            7,
            3,
            &[&[1, 2, 3], &[1, 4, 5], &[1, 6, 7], &[2, 4, 6], &[2, 5, 7], &[3, 5, 6], &[3, 4, 7]],
        )
    }

    fn triangle(n: usize) -> SetFamily {
        fam(n, 2, &[&[1, 2], &[1, 3], &[2, 3]])
    }

    #[test]
    fn canonical_order_and_dedup() {
        let f = fam(4, 2, &[&[2, 3], &[1, 4], &[2, 3]]);
        assert_eq!(f.to_lists(), vec![vec![1, 4], vec![2, 3]]);
        assert!(SetFamily::from_lists(4, 2, &[&[1, 2, 3]]).is_err());
    }

    #[test]
    fn intersecting_checks() {
        assert!(triangle(3).is_t_intersecting(1).unwrap());
        assert!(!fam(4, 2, &[&[1, 2], &[3, 4]]).is_t_intersecting(1).unwrap());
        assert!(fano().is_t_intersecting(1).unwrap());
        assert!(!fano().is_t_intersecting(2).unwrap());
        assert!(SetFamily::empty(5, 2).unwrap().is_t_intersecting(3).unwrap());
        assert!(fano().is_t_intersecting(0).is_err());
    }

    #[test]
    fn cross_intersecting_checks() {
        let star = SetFamily::new(
            6,
            3,
            KSubsets::new(6, 3).unwrap().filter(|s| s.contains(1)),
        )
        .unwrap();
        assert!(are_cross_t_intersecting(&star, &star, 1).unwrap());
        let a = fam(6, 3, &[&[1, 2, 3]]);
        let b = fam(6, 3, &[&[4, 5, 6]]);
        assert!(!are_cross_t_intersecting(&a, &b, 1).unwrap());
        let other = fam(7, 3, &[&[1, 2, 3]]);
        assert!(are_cross_t_intersecting(&a, &other, 1).is_err());
        let mixed = fam(6, 2, &[&[1, 4]]);
        assert!(are_cross_t_intersecting(&a, &mixed, 1).unwrap());
    }

    #[test]
    fn restrictions() {
        let t = triangle(3);
        let r = t.restriction(&[1], &[1]).unwrap();
        assert_eq!(r.family.to_lists(), vec![vec![1], vec![2]]);
        assert_eq!(r.kept, vec![2, 3]);
        let r = t.restriction(&[], &[1]).unwrap();
        assert_eq!(r.family.to_lists(), vec![vec![1, 2]]);
        assert_eq!(r.kept, vec![2, 3]);
        assert!(t.restriction(&[1], &[2]).is_err());
    }

    #[test]
    fn pair_restrictions() {
        assert_eq!(triangle(3).restriction_to_pair(&[1, 2]).unwrap().len(), 3);
        let f = fam(6, 3, &[&[1, 2, 3], &[4, 5, 6]]);
        assert_eq!(f.restriction_to_pair(&[1, 4]).unwrap().len(), 2);
        let lines = fano().restriction_to_pair(&[1, 2]).unwrap();
        assert_eq!(lines.len(), 5);
        assert!(!lines.contains(&KSet::new(7, &[3, 5, 6]).unwrap()));
        assert!(!lines.contains(&KSet::new(7, &[3, 4, 7]).unwrap()));
        assert!(f.restriction_to_pair(&[1]).is_err());
    }

    #[test]
    fn stats_of_star_and_fano() {
        let star = SetFamily::new(6, 3, KSubsets::new(6, 3).unwrap().filter(|s| s.contains(1))).unwrap();
        let s = star.stats().unwrap();
        assert_eq!((s.size, s.max_degree, s.diversity), (10, 10, 0));
        assert_eq!(s.rho, Rational::from_integer(1));
        assert_eq!(s.covering_number, Some(1));

        let embedded = SetFamily::new(
            8,
            3,
            fano().iter().map(|s| KSet::new(8, &s.to_vec()).unwrap()),
        )
        .unwrap();
        let s = embedded.stats().unwrap();
        assert_eq!(s.rho, Rational::new(3, 7));
        assert_eq!(s.diversity, 4);
        assert_eq!(s.covering_number, Some(3));
        assert_eq!(s.argmax_element, 1);
        assert_eq!(SetFamily::empty(3, 1).unwrap().stats(), Err(Error::EmptyFamily));
    }

    #[test]
    fn shadows() {
        let f = fam(3, 3, &[&[1, 2, 3]]);
        assert_eq!(f.shadow().unwrap().to_lists(), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        let all = SetFamily::complete(4, 2).unwrap();
        assert_eq!(all.shadow().unwrap().len(), 4);
        assert!(SetFamily::complete(3, 0).unwrap().shadow().is_err());
    }

    #[test]
    fn transversal_families() {
        let f = fam(2, 2, &[&[1, 2]]);
        assert_eq!(f.transversals(1).unwrap().to_lists(), vec![vec![1], vec![2]]);
        assert!(triangle(5).transversals(1).unwrap().is_empty());
        assert_eq!(triangle(5).covering_number(), Some(2));
        assert!(fano().transversals(2).unwrap().is_empty());
        assert_eq!(fano().transversals(3).unwrap(), fano());
        assert_eq!(SetFamily::empty(4, 2).unwrap().covering_number(), Some(0));
        assert_eq!(SetFamily::complete(3, 0).unwrap().covering_number(), None);
    }

    #[test]
    fn full_sets() {
        let f = SetFamily::new(
            6,
            3,
            KSubsets::new(6, 3).unwrap().filter(|s| s.contains(1) && s.contains(2)),
        )
        .unwrap();
        assert!(f.is_full(&[1, 2]).unwrap());
        assert!(!fam(6, 3, &[&[1, 2, 3]]).is_full(&[1]).unwrap());
        assert!(f.is_full(&[1, 2, 3, 4]).is_err());
    }

    #[test]
    fn weights() {
        assert_eq!(fam(3, 3, &[&[1, 2, 3]]).weight(), 6);
        assert_eq!(SetFamily::empty(3, 2).unwrap().weight(), 0);
        assert_eq!(fam(5, 2, &[&[1, 2], &[1, 3], &[1, 4], &[1, 5]]).weight(), 18);
    }

    #[test]
    fn initial_families() {
        assert!(!fam(3, 2, &[&[2, 3]]).is_initial());
        assert!(fam(3, 2, &[&[1, 2], &[1, 3], &[2, 3]]).is_initial());
        assert!(SetFamily::empty(4, 2).unwrap().is_initial());
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("2/3").unwrap(), Rational::new(2, 3));
        assert_eq!(parse_ratio("4/6").unwrap(), Rational::new(2, 3));
        assert_eq!(parse_ratio("1").unwrap(), Rational::from_integer(1));
        assert!(parse_ratio("0.5").is_err());
        assert!(parse_ratio("1/0").is_err());
        assert_eq!(format_ratio(&Rational::from_integer(1)), "1/1");
    }
}
