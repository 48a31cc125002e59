//! The shifting operation `S_ij` and everything built on it.

mod engine;
mod predicate;
mod saturate;

pub use engine::{
    audit_ad_extremis, resistant_graph, shift_ad_extremis, shift_ad_extremis_traced, AdExtremisResult,
    ShiftResistGraph, ShiftStep,
};
pub use predicate::{Atom, PropertyPredicate, Target};
pub use saturate::{is_saturated, saturate_pair};

use crate::error::{ensure, Result};
use crate::family::SetFamily;
use crate::kset::KSet;

/// `S_ij(F)`: replace `j` by `i` in every member where the result is new.
pub fn shift_family(family: &SetFamily, i: usize, j: usize) -> Result<SetFamily> {
    ensure!(i < j, InvalidParameters, "shift needs i < j, got ({i}, {j})");
    ensure!(j <= family.n(), InvalidParameters, "j = {j} exceeds n = {}", family.n());
    ensure!(i >= 1, InvalidParameters, "labels start at 1");
    Ok(shift_unchecked(family, i, j).unwrap_or_else(|| family.clone()))
}

/// `None` when the shift fixes the family.
pub(crate) fn shift_unchecked(family: &SetFamily, i: usize, j: usize) -> Option<SetFamily> {
    let mut changed = false;
    let sets: Vec<KSet> = family
        .iter()
        .map(|s| {
            let m = s.mask();
            if m.contains(j) && !m.contains(i) {
                let moved = m.without(j).with(i);
                if !family.contains_mask(&moved) {
                    changed = true;
                    return KSet::from_mask_unchecked(family.n(), moved);
                }
            }
            *s
        })
        .collect();
    if !changed {
        return None;
    }
    Some(SetFamily::new(family.n(), family.k(), sets).expect("shift preserves shape"))
}

/// Applies `S_ij` to every family of the tuple at once.
pub fn shift_ij(tuple: &[SetFamily], i: usize, j: usize) -> Result<Vec<SetFamily>> {
    ensure!(!tuple.is_empty(), InvalidParameters, "empty tuple");
    let n = tuple[0].n();
    ensure!(
        tuple.iter().all(|f| f.n() == n),
        InvalidParameters,
        "families in a tuple must share the ground set"
    );
    tuple.iter().map(|f| shift_family(f, i, j)).collect()
}

pub(crate) fn shift_tuple_unchecked(tuple: &[SetFamily], i: usize, j: usize) -> Option<Vec<SetFamily>> {
    let shifted: Vec<Option<SetFamily>> = tuple.iter().map(|f| shift_unchecked(f, i, j)).collect();
    if shifted.iter().all(Option::is_none) {
        return None;
    }
    Some(
        shifted
            .into_iter()
            .zip(tuple)
            .map(|(s, f)| s.unwrap_or_else(|| f.clone()))
            .collect(),
    )
}

/// Shifts until no `S_ij` changes the family; the result is initial.
pub fn shift_to_initial(family: &SetFamily) -> SetFamily {
    let n = family.n();
    let mut current = family.clone();
    loop {
        let mut changed = false;
        for j in 2..=n {
            for i in 1..j {
                if let Some(next) = shift_unchecked(&current, i, j) {
                    current = next;
                    changed = true;
                }
            }
        }
        if !changed {
            return current;
        }
    }
}
