//! Maximal intersecting families as maximal cliques of the intersection
//! graph on `C([n], k)`, enumerated by Bron–Kerbosch with Tomita pivoting.

use std::ops::ControlFlow;

use super::bitset::Bits;
use crate::error::{ensure, Result};
use crate::family::SetFamily;
use crate::kset::{enumerate_ksets, KSet};

/// Default feasibility guard for exhaustive enumeration.
pub fn within_guard(n: usize, k: usize) -> bool {
    (k == 2 && n <= 100) || (k == 3 && n <= 7) || k == 1
}

/// The intersection graph on all k-subsets of `[n]`.
pub(crate) struct IntersectionGraph {
    pub vertices: Vec<KSet>,
    pub adj: Vec<Bits>,
}

impl IntersectionGraph {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let vertices = enumerate_ksets(n, k)?;
        let len = vertices.len();
        let mut adj = vec![Bits::empty(len); len];
        for a in 0..len {
            for b in a + 1..len {
                if vertices[a].intersects(&vertices[b]) {
                    adj[a].set(b);
                    adj[b].set(a);
                }
            }
        }
        Ok(IntersectionGraph { vertices, adj })
    }

    pub fn family(&self, n: usize, k: usize, clique: &[usize]) -> SetFamily {
        let mut idx = clique.to_vec();
        idx.sort_unstable();
        SetFamily::from_sorted_unchecked(n, k, idx.into_iter().map(|i| self.vertices[i]).collect())
    }

    /// Tomita pivot: the vertex of `P ∪ X` with most neighbours in `P`.
    pub fn pivot(&self, p: &Bits, x: &Bits) -> usize {
        p.or(x)
            .iter()
            .max_by_key(|&u| (self.adj[u].and_count(p), std::cmp::Reverse(u)))
            .expect("P ∪ X nonempty")
    }
}

fn check(n: usize, k: usize, allow_large: bool) -> Result<()> {
    ensure!(k >= 1 && n >= 2 * k, InvalidParameters, "maximal enumeration needs n >= 2k >= 2 (n = {n}, k = {k})");
    ensure!(
        allow_large || within_guard(n, k),
        ResourceGuard,
        "(n, k) = ({n}, {k}) is outside the exhaustive range (k = 2, n <= 100) or (k = 3, n <= 7); override to proceed"
    );
    Ok(())
}

/// Streams every maximal intersecting k-uniform family on `[n]` exactly once.
/// The visitor may stop the stream early with `ControlFlow::Break`.
pub fn for_each_maximal_intersecting<F>(n: usize, k: usize, allow_large: bool, mut visit: F) -> Result<()>
where
    F: FnMut(SetFamily) -> ControlFlow<()>,
{
    check(n, k, allow_large)?;
    let g = IntersectionGraph::new(n, k)?;
    let len = g.vertices.len();
    let mut r = Vec::new();
    let _ = expand(&g, n, k, &mut r, Bits::full(len), Bits::empty(len), &mut visit);
    Ok(())
}

fn expand<F>(g: &IntersectionGraph, n: usize, k: usize, r: &mut Vec<usize>, mut p: Bits, mut x: Bits, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(SetFamily) -> ControlFlow<()>,
{
    if p.is_empty() {
        if x.is_empty() {
            return visit(g.family(n, k, r));
        }
        return ControlFlow::Continue(());
    }
    let u = g.pivot(&p, &x);
    let candidates: Vec<usize> = p.and_not(&g.adj[u]).iter().collect();
    for v in candidates {
        r.push(v);
        let flow = expand(g, n, k, r, p.and(&g.adj[v]), x.and(&g.adj[v]), visit);
        r.pop();
        flow?;
        p.clear(v);
        x.set(v);
    }
    ControlFlow::Continue(())
}

/// Collects the maximal stream.
pub fn maximal_intersecting_families(n: usize, k: usize, allow_large: bool) -> Result<Vec<SetFamily>> {
    let mut out = Vec::new();
    for_each_maximal_intersecting(n, k, allow_large, |f| {
        out.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct, ConstructionId};
    use crate::error::Error;
    use crate::kset::KSubsets;
    use std::collections::HashSet;

    fn is_maximal(f: &SetFamily) -> bool {
        KSubsets::new(f.n(), f.k())
            .unwrap()
            .all(|c| f.contains(&c) || f.iter().any(|s| !s.intersects(&c)))
    }

    #[test]
    fn five_two_has_stars_and_triangles() {
        let all = maximal_intersecting_families(5, 2, false).unwrap();
        assert_eq!(all.len(), 15);
        assert_eq!(all.iter().filter(|f| f.is_star()).count(), 5);
        assert_eq!(all.iter().filter(|f| f.len() == 3 && !f.is_star()).count(), 10);
        let distinct: HashSet<_> = all.iter().map(|f| f.to_lists()).collect();
        assert_eq!(distinct.len(), 15);
    }

    #[test]
    fn brute_force_agreement_on_pairs() {
        // all 2^10 families of pairs on [5]
        let pairs = enumerate_ksets(5, 2).unwrap();
        let mut brute = HashSet::new();
        for bits in 0u32..1 << pairs.len() {
            let f = SetFamily::new(5, 2, (0..pairs.len()).filter(|i| bits >> i & 1 == 1).map(|i| pairs[i])).unwrap();
            if f.is_intersecting() && !f.is_empty() && is_maximal(&f) {
                brute.insert(f.to_lists());
            }
        }
        let streamed: HashSet<_> = maximal_intersecting_families(5, 2, false).unwrap().iter().map(|f| f.to_lists()).collect();
        assert_eq!(brute, streamed);
    }

    #[test]
    fn six_three_all_extremal() {
        let all = maximal_intersecting_families(6, 3, false).unwrap();
        assert_eq!(all.len(), 1024);
        for f in &all {
            assert_eq!(f.len(), 10);
            assert!(f.is_intersecting());
            // exactly one of each complementary pair
            for s in f.iter() {
                let c = crate::kset::Mask::full(6).and_not(&s.mask());
                assert!(!f.contains_mask(&c));
            }
        }
    }

    #[test]
    fn seven_three_contains_fano() {
        let fano = construct(ConstructionId::Fano { n: 7, k: 3 }).unwrap();
        assert!(is_maximal(&fano));
        let mut found = false;
        for_each_maximal_intersecting(7, 3, false, |f| {
            assert!(is_maximal(&f));
            if f == fano {
                found = true;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(found);
    }

    #[test]
    fn guard() {
        assert!(matches!(maximal_intersecting_families(8, 3, false), Err(Error::ResourceGuard(_))));
        assert!(matches!(maximal_intersecting_families(5, 3, true), Err(Error::InvalidParameters(_))));
    }
}
