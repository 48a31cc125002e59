//! Branch and bound for the most diverse intersecting family.
//!
//! The search walks the maximal-clique tree of the intersection graph. Any
//! family reachable from a node is contained in `R ∪ P`, and diversity is
//! monotone under inclusion, so `γ(R ∪ P)` bounds the whole subtree.

use std::time::{Duration, Instant};

use serde::Serialize;

use super::bitset::Bits;
use super::maximal::IntersectionGraph;
use crate::error::{ensure, Result};
use crate::family::SetFamily;
use crate::json::FamilyJson;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: Option<u64>,
    pub time: Option<Duration>,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn time(limit: Duration) -> Self {
        SearchBudget {
            max_nodes: None,
            time: Some(limit),
        }
    }

    pub fn nodes(limit: u64) -> Self {
        SearchBudget {
            max_nodes: Some(limit),
            time: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DiversityResult {
    pub n: usize,
    pub k: usize,
    pub best_gamma: usize,
    #[serde(serialize_with = "as_json")]
    pub witness: SetFamily,
    /// The search closed: `best_gamma` is the true maximum.
    pub optimal: bool,
    pub nodes: u64,
    pub elapsed_ms: u128,
}

fn as_json<S: serde::Serializer>(f: &SetFamily, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&FamilyJson::from(f), s)
}

struct Search<'a> {
    g: &'a IntersectionGraph,
    n: usize,
    k: usize,
    /// `by_element[i - 1]`: vertices containing element i.
    by_element: Vec<Bits>,
    best: Option<(usize, Vec<usize>)>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    exhausted: bool,
}

impl Search<'_> {
    fn gamma(&self, members: &Bits) -> usize {
        let size = members.count();
        let max_deg = self.by_element.iter().map(|e| e.and_count(members)).max().unwrap_or(0);
        size - max_deg
    }

    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        let over_nodes = self.budget.max_nodes.is_some_and(|m| self.nodes >= m);
        // the clock is read sparingly
        let over_time = self.nodes % 256 == 0 && self.budget.time.is_some_and(|t| self.start.elapsed() >= t);
        self.exhausted = over_nodes || over_time;
        self.exhausted
    }

    fn expand(&mut self, r: &mut Vec<usize>, mut p: Bits, mut x: Bits) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        let mut r_bits = Bits::empty(self.g.vertices.len());
        for &v in r.iter() {
            r_bits.set(v);
        }
        let best_gamma = self.best.as_ref().map(|b| b.0);
        if let Some(b) = best_gamma {
            if self.gamma(&r_bits.or(&p)) <= b {
                return;
            }
        }
        if p.is_empty() {
            if x.is_empty() {
                let gamma = self.gamma(&r_bits);
                if best_gamma.map_or(true, |b| gamma > b) {
                    self.best = Some((gamma, r.clone()));
                }
            }
            return;
        }
        let u = self.g.pivot(&p, &x);
        let candidates: Vec<usize> = p.and_not(&self.g.adj[u]).iter().collect();
        for v in candidates {
            r.push(v);
            let (np, nx) = (p.and(&self.g.adj[v]), x.and(&self.g.adj[v]));
            self.expand(r, np, nx);
            r.pop();
            if self.exhausted {
                return;
            }
            p.clear(v);
            x.set(v);
        }
    }
}

/// Maximizes γ over intersecting k-uniform families on `[n]` within `budget`.
pub fn max_diversity_search(n: usize, k: usize, budget: SearchBudget) -> Result<DiversityResult> {
    ensure!(k >= 1 && n >= 2 * k, InvalidParameters, "diversity search needs n >= 2k >= 2 (n = {n}, k = {k})");
    ensure!(n <= 24, ResourceGuard, "n = {n}: the intersection graph on C(n, k) is too large to build");
    let g = IntersectionGraph::new(n, k)?;
    let len = g.vertices.len();
    let by_element = (1..=n)
        .map(|e| {
            let mut b = Bits::empty(len);
            for (idx, s) in g.vertices.iter().enumerate() {
                if s.contains(e) {
                    b.set(idx);
                }
            }
            b
        })
        .collect();
    let mut search = Search {
        g: &g,
        n,
        k,
        by_element,
        best: None,
        nodes: 0,
        budget,
        start: Instant::now(),
        exhausted: false,
    };
    search.expand(&mut Vec::new(), Bits::full(len), Bits::empty(len));
    let (best_gamma, clique) = search.best.clone().unwrap_or((0, vec![0]));
    Ok(DiversityResult {
        n,
        k,
        best_gamma,
        witness: g.family(search.n, search.k, &clique),
        optimal: !search.exhausted,
        nodes: search.nodes,
        elapsed_ms: search.start.elapsed().as_millis(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::maximal_intersecting_families;

    #[test]
    fn pairs_have_diversity_one() {
        for n in 4..=8 {
            let r = max_diversity_search(n, 2, SearchBudget::unlimited()).unwrap();
            assert!(r.optimal);
            assert_eq!(r.best_gamma, 1);
            assert_eq!(r.witness.len(), 3);
            assert!(!r.witness.is_star() && r.witness.is_intersecting());
        }
    }

    #[test]
    fn agrees_with_exhaustive_maximal() {
        for (n, k) in [(6, 3), (7, 3), (6, 2)] {
            let exact = maximal_intersecting_families(n, k, false)
                .unwrap()
                .iter()
                .map(SetFamily::diversity)
                .max()
                .unwrap();
            let r = max_diversity_search(n, k, SearchBudget::unlimited()).unwrap();
            assert!(r.optimal);
            assert_eq!(r.best_gamma, exact, "(n, k) = ({n}, {k})");
            assert_eq!(r.witness.diversity(), exact);
            assert!(r.witness.is_intersecting());
        }
    }

    #[test]
    fn budget_degrades_gracefully() {
        let r = max_diversity_search(11, 3, SearchBudget::nodes(500)).unwrap();
        assert!(!r.optimal);
        assert!(r.witness.is_intersecting());
        assert_eq!(r.witness.diversity(), r.best_gamma);
    }
}
