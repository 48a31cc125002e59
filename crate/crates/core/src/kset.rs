//! Bit masks over the ground set `[n]` and the `KSet` built on them.
//!
//! Element `i` (1-based) lives in bit `i - 1`. Masks are fixed width so that
//! they stay `Copy` and allocation free in the hot loops of enumeration and
//! shifting; [`MAX_N`] bounds the ground set.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{ensure, Result};

const WORDS: usize = 8;

/// Largest supported ground-set size.
pub const MAX_N: usize = WORDS * 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mask([u64; WORDS]);

impl Mask {
    pub const EMPTY: Mask = Mask([0; WORDS]);

    /// Mask of `{1, ..., n}`.
    pub fn full(n: usize) -> Mask {
        let mut m = Mask::EMPTY;
        for w in 0..WORDS {
            let lo = w * 64;
            if n >= lo + 64 {
                m.0[w] = u64::MAX;
            } else if n > lo {
                m.0[w] = (1u64 << (n - lo)) - 1;
            }
        }
        m
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Mask {
        let mut m = Mask::EMPTY;
        for e in elements {
            m.insert(e);
        }
        m
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        debug_assert!(element >= 1 && element <= MAX_N);
        let b = element - 1;
        self.0[b / 64] >> (b % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, element: usize) {
        debug_assert!(element >= 1 && element <= MAX_N);
        let b = element - 1;
        self.0[b / 64] |= 1 << (b % 64);
    }

    #[inline]
    pub fn remove(&mut self, element: usize) {
        let b = element - 1;
        self.0[b / 64] &= !(1 << (b % 64));
    }

    #[inline]
    pub fn with(mut self, element: usize) -> Mask {
        self.insert(element);
        self
    }

    #[inline]
    pub fn without(mut self, element: usize) -> Mask {
        self.remove(element);
        self
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn and(&self, other: &Mask) -> Mask {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(other.0.iter()) {
            *a &= b;
        }
        r
    }

    #[inline]
    pub fn or(&self, other: &Mask) -> Mask {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(other.0.iter()) {
            *a |= b;
        }
        r
    }

    #[inline]
    pub fn and_not(&self, other: &Mask) -> Mask {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(other.0.iter()) {
            *a &= !b;
        }
        r
    }

    #[inline]
    pub fn intersects(&self, other: &Mask) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }

    #[inline]
    pub fn intersection_len(&self, other: &Mask) -> usize {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    #[inline]
    pub fn is_subset(&self, other: &Mask) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }

    /// Smallest element, if any.
    pub fn min_element(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize + 1)
    }

    /// Largest element, if any.
    pub fn max_element(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + 64 - w.leading_zeros() as usize)
    }

    /// Elements in ascending order, 1-based.
    pub fn elements(&self) -> Elements {
        Elements {
            words: self.0,
            word: 0,
        }
    }

    /// Lexicographic comparison: `A < B` iff `min(A \ B) < min(B \ A)`.
    ///
    /// For sets of equal size this is the usual lex order of sorted tuples.
    #[inline]
    pub fn lex_cmp(&self, other: &Mask) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            let d = a ^ b;
            if d != 0 {
                let low = d & d.wrapping_neg();
                return if a & low != 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Mask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

pub struct Elements {
    words: [u64; WORDS],
    word: usize,
}

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        while self.word < WORDS {
            let w = self.words[self.word];
            if w != 0 {
                let t = w.trailing_zeros() as usize;
                self.words[self.word] = w & (w - 1);
                return Some(self.word * 64 + t + 1);
            }
            self.word += 1;
        }
        None
    }
}

/// A `k`-subset of `[n]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct KSet {
    mask: Mask,
    n: u16,
    k: u16,
}

impl KSet {
    pub fn new(n: usize, elements: &[usize]) -> Result<KSet> {
        ensure!(n <= MAX_N, InvalidParameters, "n = {n} exceeds the supported maximum {MAX_N}");
        let mut mask = Mask::EMPTY;
        for &e in elements {
            ensure!(e >= 1 && e <= n, InvalidParameters, "element {e} outside [1, {n}]");
            ensure!(!mask.contains(e), InvalidParameters, "element {e} repeated");
            mask.insert(e);
        }
        Ok(KSet::from_mask_unchecked(n, mask))
    }

    pub fn from_mask(n: usize, mask: Mask) -> Result<KSet> {
        ensure!(n <= MAX_N, InvalidParameters, "n = {n} exceeds the supported maximum {MAX_N}");
        ensure!(
            mask.is_subset(&Mask::full(n)),
            InvalidParameters,
            "mask {mask:?} has elements outside [1, {n}]"
        );
        Ok(KSet::from_mask_unchecked(n, mask))
    }

    #[inline]
    pub(crate) fn from_mask_unchecked(n: usize, mask: Mask) -> KSet {
        KSet {
            mask,
            n: n as u16,
            k: mask.len() as u16,
        }
    }

    #[inline]
    pub fn mask(&self) -> Mask {
        self.mask
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn contains(&self, element: usize) -> bool {
        element >= 1 && element <= self.n() && self.mask.contains(element)
    }

    pub fn elements(&self) -> Elements {
        self.mask.elements()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.elements().collect()
    }

    #[inline]
    pub fn intersects(&self, other: &KSet) -> bool {
        self.mask.intersects(&other.mask)
    }

    #[inline]
    pub fn intersection_len(&self, other: &KSet) -> usize {
        self.mask.intersection_len(&other.mask)
    }

    /// Componentwise order on sorted tuples: `(a_1..a_k) ≼ (b_1..b_k)` iff `a_i <= b_i` for all `i`.
    pub fn precedes(&self, other: &KSet) -> bool {
        self.k == other.k && self.elements().zip(other.elements()).all(|(a, b)| a <= b)
    }
}

impl Ord for KSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.mask
            .lex_cmp(&other.mask)
            .then(self.n.cmp(&other.n))
            .then(self.k.cmp(&other.k))
    }
}

impl PartialOrd for KSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.mask)
    }
}

impl fmt::Display for KSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (idx, e) in self.elements().enumerate() {
            if idx > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Lazy generator of the `k`-subsets of `[n]` in ascending lex order.
pub struct KSubsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl KSubsets {
    pub fn new(n: usize, k: usize) -> Result<KSubsets> {
        ensure!(k <= n, InvalidParameters, "k = {k} exceeds n = {n}");
        ensure!(n <= MAX_N, InvalidParameters, "n = {n} exceeds the supported maximum {MAX_N}");
        Ok(KSubsets {
            n,
            current: Some((1..=k).collect()),
        })
    }
}

impl Iterator for KSubsets {
    type Item = KSet;

    fn next(&mut self) -> Option<KSet> {
        let cur = self.current.as_mut()?;
        let out = KSet::from_mask_unchecked(self.n, Mask::from_elements(cur.iter().copied()));
        let k = cur.len();
        // advance to the lex successor
        let mut pos = k;
        while pos > 0 && cur[pos - 1] == self.n - (k - pos) {
            pos -= 1;
        }
        if pos == 0 {
            self.current = None;
        } else {
            cur[pos - 1] += 1;
            for q in pos..k {
                cur[q] = cur[q - 1] + 1;
            }
        }
        Some(out)
    }
}

/// All `C(n, k)` k-subsets of `[n]`, ascending lex order.
pub fn enumerate_ksets(n: usize, k: usize) -> Result<Vec<KSet>> {
    Ok(KSubsets::new(n, k)?.collect())
}

/// Number of k-subsets of `[n]` preceding `set` in lex order.
pub fn lex_rank(set: &KSet) -> u128 {
    let n = set.n() as u64;
    let k = set.k() as u64;
    let mut rank: u128 = 0;
    let mut prev = 0u64;
    for (idx, e) in set.elements().enumerate() {
        let e = e as u64;
        let remaining = k - idx as u64 - 1;
        for v in prev + 1..e {
            rank += crate::binomial::binomial_u128(n - v, remaining).expect("rank overflow");
        }
        prev = e;
    }
    rank
}

/// Inverse of [`lex_rank`].
pub fn lex_unrank(n: usize, k: usize, mut rank: u128) -> Result<KSet> {
    let total = crate::binomial::binomial_u128(n as u64, k as u64);
    ensure!(
        total.is_some_and(|t| rank < t),
        InvalidParameters,
        "rank {rank} out of range for C({n}, {k})"
    );
    let mut mask = Mask::EMPTY;
    let mut v = 1u64;
    for idx in 0..k as u64 {
        let remaining = k as u64 - idx - 1;
        loop {
            let block = crate::binomial::binomial_u128(n as u64 - v, remaining).unwrap();
            if rank < block {
                break;
            }
            rank -= block;
            v += 1;
        }
        mask.insert(v as usize);
        v += 1;
    }
    Ok(KSet::from_mask_unchecked(n, mask))
}
