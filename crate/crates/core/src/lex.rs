//! Lex order, lex-initial families `L(n, k, m)`, and the cross-intersection
//! scans that Hilton's lemma reduces extremal questions to.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::binomial;
use crate::error::{ensure, Result};
use crate::family::SetFamily;
use crate::kset::{KSet, KSubsets, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexFamilySpec {
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

impl LexFamilySpec {
    pub fn build(&self) -> Result<SetFamily> {
        lex_family(self.n, self.k, self.m)
    }
}

pub fn lex_cmp(a: &KSet, b: &KSet) -> Result<Ordering> {
    ensure!(
        a.n() == b.n() && a.k() == b.k(),
        InvalidParameters,
        "cannot compare a ({}, {})-set with a ({}, {})-set",
        a.n(),
        a.k(),
        b.n(),
        b.k()
    );
    Ok(a.mask().lex_cmp(&b.mask()))
}

/// The first `m` k-subsets of `[n]` in lex order.
pub fn lex_family(n: usize, k: usize, m: usize) -> Result<SetFamily> {
    let total = binomial::count(n, k);
    ensure!(m <= total, InvalidParameters, "m = {m} exceeds C({n}, {k}) = {total}");
    let sets = KSubsets::new(n, k)?.take(m).collect();
    Ok(SetFamily::from_sorted_unchecked(n, k, sets))
}

fn check_hilton(n: usize, a: usize, b: usize) -> Result<()> {
    ensure!(
        n >= a + b,
        HypothesisViolation,
        "lex reduction needs n >= a + b, got n = {n}, a = {a}, b = {b}"
    );
    Ok(())
}

/// Largest `m` such that `L(n, a, p)` and `L(n, b, m)` are cross-intersecting.
///
/// Under `n >= a + b` this is the largest `|B|` over all cross-intersecting
/// pairs with `|A| = p`.
pub fn max_compatible_size(n: usize, a: usize, b: usize, p: usize) -> Result<usize> {
    check_hilton(n, a, b)?;
    let a_side: Vec<Mask> = lex_family(n, a, p)?.masks().collect();
    Ok(KSubsets::new(n, b)?
        .take_while(|s| a_side.iter().all(|m| m.intersects(&s.mask())))
        .count())
}

/// `max_compatible_size(n, a, b, p)` for every `p` in `0..=C(n, a)`.
///
/// Grows the a-side one set at a time and advances a cutoff over the b-side,
/// which is what the lex scans iterate over.
pub fn compatible_profile(n: usize, a: usize, b: usize) -> Result<Vec<usize>> {
    check_hilton(n, a, b)?;
    let b_side: Vec<Mask> = KSubsets::new(n, b)?.map(|s| s.mask()).collect();
    let mut out = Vec::with_capacity(binomial::count(n, a) + 1);
    let mut cutoff = b_side.len();
    out.push(cutoff);
    for a_set in KSubsets::new(n, a)? {
        let am = a_set.mask();
        if let Some(pos) = b_side[..cutoff].iter().position(|m| !m.intersects(&am)) {
            cutoff = pos;
        }
        out.push(cutoff);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(n: usize, e: &[usize]) -> KSet {
        KSet::new(n, e).unwrap()
    }

    #[test]
    fn comparisons() {
        assert_eq!(lex_cmp(&ks(9, &[1, 2, 9]), &ks(9, &[1, 3, 4])).unwrap(), Ordering::Less);
        assert_eq!(lex_cmp(&ks(9, &[1, 2, 9]), &ks(9, &[1, 2, 9])).unwrap(), Ordering::Equal);
        assert_eq!(lex_cmp(&ks(4, &[2, 3]), &ks(4, &[1, 4])).unwrap(), Ordering::Greater);
        assert!(lex_cmp(&ks(4, &[2, 3]), &ks(5, &[1, 4])).is_err());
        assert!(lex_cmp(&ks(4, &[2, 3]), &ks(4, &[1])).is_err());
    }

    #[test]
    fn lex_families() {
        let l = lex_family(6, 2, 9).unwrap();
        assert_eq!(
            l.to_lists(),
            vec![
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![1, 5],
                vec![1, 6],
                vec![2, 3],
                vec![2, 4],
                vec![2, 5],
                vec![2, 6]
            ]
        );
        assert!(lex_family(5, 3, 0).unwrap().is_empty());
        assert_eq!(lex_family(4, 2, 6).unwrap(), SetFamily::complete(4, 2).unwrap());
        assert!(lex_family(4, 2, 7).is_err());
    }

    #[test]
    fn compatible_sizes() {
        assert_eq!(max_compatible_size(6, 2, 2, 5).unwrap(), 5);
        assert_eq!(max_compatible_size(6, 2, 2, 1).unwrap(), 9);
        assert_eq!(max_compatible_size(7, 3, 2, 0).unwrap(), 21);
        assert!(max_compatible_size(5, 3, 3, 1).is_err());
    }

    #[test]
    fn profile_agrees_with_direct_scan() {
        for n in 2..=9 {
            for a in 1..n {
                for b in 1..=n - a {
                    let prof = compatible_profile(n, a, b).unwrap();
                    assert_eq!(prof.len(), binomial::count(n, a) + 1);
                    for (p, &m) in prof.iter().enumerate() {
                        assert_eq!(m, max_compatible_size(n, a, b, p).unwrap(), "n={n} a={a} b={b} p={p}");
                    }
                    assert!(prof.windows(2).all(|w| w[0] >= w[1]));
                }
            }
        }
    }
}
