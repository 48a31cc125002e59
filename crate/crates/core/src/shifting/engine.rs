//! Shifting ad extremis.
//!
//! Pairs `(i, j)` are swept in lex order. The first shift that changes the
//! tuple and keeps the predicate is applied, then the sweep restarts from
//! `(1, 2)`. A full sweep without an applicable shift ends the run. Every
//! applied shift lowers the total weight, so the run terminates.

use serde::Serialize;

use super::{shift_tuple_unchecked, PropertyPredicate};
use crate::error::{ensure, Error, Result};
use crate::family::{are_cross_intersecting, SetFamily};
use crate::json::FamilyJson;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShiftStep {
    pub i: usize,
    pub j: usize,
    pub w_before: u64,
    pub w_after: u64,
}

/// Pairs whose shift would move the tuple but break the predicate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftResistGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
    /// `min(ν, 3)`.
    pub matching_number_capped: usize,
}

impl ShiftResistGraph {
    pub fn from_edges(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        let matching_number_capped = capped_matching(&edges, 0, 0, 3);
        ShiftResistGraph {
            n,
            edges,
            matching_number_capped,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

fn capped_matching(edges: &[(usize, usize)], used: u128, depth: usize, cap: usize) -> usize {
    if depth == cap {
        return depth;
    }
    let mut best = depth;
    for (idx, &(a, b)) in edges.iter().enumerate() {
        let bits = (1u128 << (a % 128)) | (1u128 << (b % 128));
        if used & bits != 0 || a >= 128 || b >= 128 {
            continue;
        }
        best = best.max(capped_matching(&edges[idx + 1..], used | bits, depth + 1, cap));
        if best == cap {
            break;
        }
    }
    best
}

#[derive(Debug, Clone, Serialize)]
pub struct AdExtremisResult {
    #[serde(serialize_with = "serialize_tuple")]
    pub families: Vec<SetFamily>,
    pub resistant: ShiftResistGraph,
    pub sweeps: usize,
    pub shifts_applied: usize,
    pub weight_drop: u64,
}

fn serialize_tuple<S: serde::Serializer>(t: &[SetFamily], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for f in t {
        seq.serialize_element(&FamilyJson::from(f))?;
    }
    seq.end()
}

fn total_weight(tuple: &[SetFamily]) -> u64 {
    tuple.iter().map(SetFamily::weight).sum()
}

fn check_base_property(tuple: &[SetFamily]) -> Result<()> {
    ensure!(!tuple.is_empty(), InvalidParameters, "empty tuple");
    let n = tuple[0].n();
    ensure!(
        tuple.iter().all(|f| f.n() == n),
        InvalidParameters,
        "families in a tuple must share the ground set"
    );
    if tuple.len() == 1 {
        ensure!(tuple[0].is_intersecting(), PreconditionViolation, "family is not intersecting");
    } else {
        for (a, f) in tuple.iter().enumerate() {
            for g in &tuple[a + 1..] {
                ensure!(
                    are_cross_intersecting(f, g),
                    PreconditionViolation,
                    "families are not cross-intersecting"
                );
            }
        }
    }
    Ok(())
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

pub fn shift_ad_extremis(tuple: &[SetFamily], predicate: &PropertyPredicate) -> Result<AdExtremisResult> {
    shift_ad_extremis_traced(tuple, predicate, |_| {})
}

/// As [`shift_ad_extremis`], reporting every applied shift.
pub fn shift_ad_extremis_traced(
    tuple: &[SetFamily],
    predicate: &PropertyPredicate,
    mut on_step: impl FnMut(&ShiftStep),
) -> Result<AdExtremisResult> {
    check_base_property(tuple)?;
    ensure!(
        predicate.holds(tuple),
        PreconditionViolation,
        "predicate {predicate} fails on the input"
    );
    let n = tuple[0].n();
    let w_initial = total_weight(tuple);
    let mut current = tuple.to_vec();
    let mut sweeps = 0;
    let mut shifts_applied = 0;
    'sweep: loop {
        sweeps += 1;
        for (i, j) in pairs(n) {
            let Some(next) = shift_tuple_unchecked(&current, i, j) else {
                continue;
            };
            if !predicate.holds(&next) {
                continue;
            }
            let step = ShiftStep {
                i,
                j,
                w_before: total_weight(&current),
                w_after: total_weight(&next),
            };
            debug_assert!(step.w_after < step.w_before);
            on_step(&step);
            current = next;
            shifts_applied += 1;
            continue 'sweep;
        }
        break;
    }
    let resistant = resistant_edges(&current, predicate);
    let weight_drop = w_initial - total_weight(&current);
    Ok(AdExtremisResult {
        families: current,
        resistant: ShiftResistGraph::from_edges(n, resistant),
        sweeps,
        shifts_applied,
        weight_drop,
    })
}

fn resistant_edges(tuple: &[SetFamily], predicate: &PropertyPredicate) -> Vec<(usize, usize)> {
    pairs(tuple[0].n())
        .filter(|&(i, j)| shift_tuple_unchecked(tuple, i, j).is_some_and(|next| !predicate.holds(&next)))
        .collect()
}

/// Re-checks the ad extremis condition: every pair either fixes the tuple or
/// its shift violates the predicate. Returns the first offending pair.
pub fn audit_ad_extremis(
    tuple: &[SetFamily],
    predicate: &PropertyPredicate,
) -> std::result::Result<(), (usize, usize)> {
    let Some(first) = tuple.first() else {
        return Ok(());
    };
    for (i, j) in pairs(first.n()) {
        if let Some(next) = shift_tuple_unchecked(tuple, i, j) {
            if predicate.holds(&next) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// The shift-resistant graph of a tuple that is already shifted ad extremis.
pub fn resistant_graph(tuple: &[SetFamily], predicate: &PropertyPredicate) -> Result<ShiftResistGraph> {
    ensure!(!tuple.is_empty(), InvalidParameters, "empty tuple");
    if let Err((i, j)) = audit_ad_extremis(tuple, predicate) {
        return Err(Error::PreconditionViolation(format!(
            "tuple is not shifted ad extremis: S_{i},{j} moves it and keeps {predicate}"
        )));
    }
    Ok(ShiftResistGraph::from_edges(tuple[0].n(), resistant_edges(tuple, predicate)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{construct, ConstructionId};
    use crate::family::Rational;
    use crate::kset::KSubsets;
    use crate::shifting::{shift_family, Atom};

    #[test]
    fn matching_numbers() {
        assert_eq!(ShiftResistGraph::from_edges(4, vec![]).matching_number_capped, 0);
        assert_eq!(ShiftResistGraph::from_edges(4, vec![(1, 2)]).matching_number_capped, 1);
        assert_eq!(
            ShiftResistGraph::from_edges(6, vec![(1, 2), (3, 4), (5, 6)]).matching_number_capped,
            3
        );
        assert_eq!(
            ShiftResistGraph::from_edges(8, vec![(1, 2), (1, 3), (1, 4), (2, 3)]).matching_number_capped,
            2
        );
        assert_eq!(
            ShiftResistGraph::from_edges(8, vec![(1, 2), (1, 3), (1, 4)]).matching_number_capped,
            1
        );
        assert_eq!(
            ShiftResistGraph::from_edges(10, vec![(1, 2), (3, 4), (5, 6), (7, 8), (9, 10)]).matching_number_capped,
            3
        );
    }

    #[test]
    fn star_becomes_initial_with_no_resistance() {
        let star = SetFamily::new(6, 3, KSubsets::new(6, 3).unwrap().filter(|s| s.contains(4))).unwrap();
        let p = PropertyPredicate::all(Atom::CoveringAtLeast(1));
        let r = shift_ad_extremis(&[star.clone()], &p).unwrap();
        assert!(r.families[0].is_initial());
        assert!(r.resistant.is_empty());
        assert_eq!(r.resistant.matching_number_capped, 0);
        assert!(r.weight_drop > 0);
        assert_eq!(r.families[0].len(), star.len());
    }

    #[test]
    fn h_tilde_under_rho_bound() {
        let h = construct(ConstructionId::HTilde { n: 6, k: 3 }).unwrap();
        let bound = Rational::new(2, 3);
        let p = PropertyPredicate::all(Atom::RhoAtMost(bound));
        let r = shift_ad_extremis(&[h], &p).unwrap();
        let f = &r.families[0];
        assert!(f.rho().unwrap() <= bound);
        assert!(audit_ad_extremis(&r.families, &p).is_ok());
        // exhaustive re-scan: resistant edges are exactly the moving pairs pushing ρ over 2/3
        let mut expected = Vec::new();
        for j in 2..=6 {
            for i in 1..j {
                let g = shift_family(f, i, j).unwrap();
                if g != *f {
                    assert!(g.rho().unwrap() > bound);
                    expected.push((i, j));
                }
            }
        }
        expected.sort_unstable();
        assert_eq!(r.resistant.edges, expected);
        assert_eq!(resistant_graph(&r.families, &p).unwrap(), r.resistant);
    }

    #[test]
    fn preconditions() {
        let disjoint = SetFamily::from_lists(4, 2, &[&[1, 2], &[3, 4]]).unwrap();
        assert!(matches!(
            shift_ad_extremis(&[disjoint], &PropertyPredicate::True),
            Err(Error::PreconditionViolation(_))
        ));
        let star = SetFamily::from_lists(4, 2, &[&[1, 2], &[1, 3]]).unwrap();
        assert!(matches!(
            shift_ad_extremis(&[star.clone()], &PropertyPredicate::non_trivial()),
            Err(Error::PreconditionViolation(_))
        ));
        let moved = SetFamily::from_lists(4, 2, &[&[2, 3], &[2, 4]]).unwrap();
        assert!(matches!(
            resistant_graph(&[moved], &PropertyPredicate::True),
            Err(Error::PreconditionViolation(_))
        ));
        assert!(resistant_graph(&[star], &PropertyPredicate::True).unwrap().is_empty());
    }

    #[test]
    fn trace_reports_strict_weight_drops() {
        let f = SetFamily::from_lists(7, 3, &[&[3, 5, 7], &[4, 5, 6], &[5, 6, 7]]).unwrap();
        let mut steps = Vec::new();
        let r = shift_ad_extremis_traced(&[f.clone()], &PropertyPredicate::True, |s| steps.push(*s)).unwrap();
        assert!(!steps.is_empty());
        assert!(steps.iter().all(|s| s.w_after < s.w_before));
        assert!(steps.windows(2).all(|w| w[0].w_after == w[1].w_before));
        assert_eq!(steps.first().unwrap().w_before - steps.last().unwrap().w_after, r.weight_drop);
        assert_eq!(r.shifts_applied, steps.len());
        assert!(r.families[0].is_initial());
        assert!((r.sweeps as u64) <= f.weight() + 1);
    }
}
