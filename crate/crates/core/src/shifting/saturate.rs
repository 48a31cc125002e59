use crate::error::{ensure, Result};
use crate::family::{are_cross_intersecting, SetFamily};
use crate::kset::{KSet, KSubsets, Mask};

/// Grows a cross-intersecting pair until no set can join either side.
///
/// Sides alternate starting with `F`; each turn adds, in lex order, every
/// candidate meeting all members of the other side. Stops when a full
/// round adds nothing.
pub fn saturate_pair(f: &SetFamily, g: &SetFamily) -> Result<(SetFamily, SetFamily)> {
    ensure!(f.n() == g.n(), InvalidParameters, "ground sets differ: {} vs {}", f.n(), g.n());
    ensure!(
        are_cross_intersecting(f, g),
        PreconditionViolation,
        "families are not cross-intersecting"
    );
    let mut sides = [f.clone(), g.clone()];
    let mut idle_turns = 0;
    let mut turn = 0;
    while idle_turns < 2 {
        let (grown, added) = fill_side(&sides[turn], &sides[1 - turn]);
        sides[turn] = grown;
        idle_turns = if added { 0 } else { idle_turns + 1 };
        turn = 1 - turn;
    }
    let [f2, g2] = sides;
    Ok((f2, g2))
}

fn fill_side(side: &SetFamily, other: &SetFamily) -> (SetFamily, bool) {
    let other_masks: Vec<Mask> = other.masks().collect();
    let extra: Vec<KSet> = KSubsets::new(side.n(), side.k())
        .expect("family shape is valid")
        .filter(|c| !side.contains(c) && other_masks.iter().all(|m| m.intersects(&c.mask())))
        .collect();
    if extra.is_empty() {
        return (side.clone(), false);
    }
    let all = side.iter().copied().chain(extra);
    (SetFamily::new(side.n(), side.k(), all).expect("same shape"), true)
}

/// No absent set can be added to either side without breaking cross-intersection.
pub fn is_saturated(f: &SetFamily, g: &SetFamily) -> bool {
    let blocked = |side: &SetFamily, other: &SetFamily| {
        let om: Vec<Mask> = other.masks().collect();
        KSubsets::new(side.n(), side.k())
            .expect("family shape is valid")
            .filter(|c| !side.contains(c))
            .all(|c| om.iter().any(|m| !m.intersects(&c.mask())))
    };
    are_cross_intersecting(f, g) && blocked(f, g) && blocked(g, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn stars_are_saturated() {
        let star = SetFamily::new(6, 2, KSubsets::new(6, 2).unwrap().filter(|s| s.contains(1))).unwrap();
        assert!(is_saturated(&star, &star));
        let (f, g) = saturate_pair(&star, &star).unwrap();
        assert_eq!((f, g), (star.clone(), star));
    }

    #[test]
    fn empty_pair_fills_first_side() {
        let e = SetFamily::empty(5, 2).unwrap();
        let (f, g) = saturate_pair(&e, &e).unwrap();
        assert_eq!(f, SetFamily::complete(5, 2).unwrap());
        assert!(g.is_empty());
        assert!(is_saturated(&f, &g));
    }

    #[test]
    fn small_pair_saturates_with_witness() {
        let f = SetFamily::from_lists(6, 3, &[&[1, 2, 3]]).unwrap();
        let g = SetFamily::from_lists(6, 3, &[&[1, 4, 5]]).unwrap();
        let (f2, g2) = saturate_pair(&f, &g).unwrap();
        assert!(f.is_subfamily_of(&f2) && g.is_subfamily_of(&g2));
        assert!(are_cross_intersecting(&f2, &g2));
        assert!(is_saturated(&f2, &g2));
    }

    #[test]
    fn rejects_non_cross_intersecting() {
        let f = SetFamily::from_lists(6, 3, &[&[1, 2, 3]]).unwrap();
        let g = SetFamily::from_lists(6, 3, &[&[4, 5, 6]]).unwrap();
        assert!(matches!(saturate_pair(&f, &g), Err(Error::PreconditionViolation(_))));
    }
}
