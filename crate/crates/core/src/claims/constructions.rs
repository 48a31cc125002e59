//! Claims about the named constructions themselves.

use serde_json::{json, Value};

use super::exhaustive::count_extremal_intersecting;
use super::params::hypothesis;
use super::report::{witness, Tally};
use super::sampled::bc;
use super::ClaimParams;
use crate::constructions::{construct, ConstructionId};
use crate::error::Result;
use crate::family::{format_ratio, Rational, SetFamily};

fn expect(tally: &mut Tally, ok: bool, families: &[&SetFamily], detail: impl FnOnce() -> String) {
    tally.instance();
    if !ok {
        tally.violation(witness(families, None, detail()));
    }
}

pub(crate) fn c24(params: &ClaimParams) -> Result<(Value, Tally)> {
    let k = params.k.unwrap_or(3);
    let n = params.n.unwrap_or(100 * k + 1);
    hypothesis(k >= 3 && n > 100 * k, || format!("needs n > 100k and k >= 3, got n = {n}, k = {k}"))?;
    let binoms = bc(n as i64 - 7, k as i64 - 3).saturating_mul(7);
    hypothesis(binoms <= 2_000_000, || format!("the Fano family at n = {n}, k = {k} has {binoms} members, too many to build"))?;
    let f = construct(ConstructionId::Fano { n, k })?;
    let mut tally = Tally::definitive();
    expect(&mut tally, f.is_intersecting(), &[&f], || "not intersecting".into());
    let rho = f.rho()?;
    expect(&mut tally, rho == Rational::new(3, 7), &[&f], || format!("ρ = {}", format_ratio(&rho)));
    let floor = bc(n as i64 - 3, k as i64 - 3);
    expect(&mut tally, f.len() as u128 > floor, &[&f], || format!("|F| = {} is not above C(n-3,k-3) = {floor}", f.len()));
    Ok((json!({ "n": n, "k": k, "size": f.len(), "rho": format_ratio(&rho) }), tally))
}

fn small_grid(params: &ClaimParams, k_min: usize) -> Result<Vec<(usize, usize)>> {
    let n_max = params.n.or(params.n_max).unwrap_or(14);
    let k_max = params.k.or(params.k_max).unwrap_or(5);
    hypothesis(n_max <= 18, || format!("n = {n_max} is too large for explicit constructions (at most 18)"))?;
    if let (Some(n), Some(k)) = (params.n, params.k) {
        hypothesis(k >= k_min && n >= 2 * k, || format!("needs n >= 2k and k >= {k_min}, got n = {n}, k = {k}"))?;
    }
    let mut grid = Vec::new();
    for k in params.k.map_or(k_min, |k| k)..=k_max {
        for n in params.n.map_or(2 * k, |n| n)..=n_max {
            grid.push((n, k));
        }
    }
    Ok(grid)
}

fn degree_profile(f: &SetFamily) -> Vec<usize> {
    let mut d = f.degrees();
    d.sort_unstable();
    d
}

pub(crate) fn c25(params: &ClaimParams) -> Result<(Value, Tally)> {
    let grid = small_grid(params, 2)?;
    let mut tally = Tally::definitive();
    for &(n, k) in &grid {
        let a2 = construct(ConstructionId::AR { n, k, r: 2 })?;
        let t = construct(ConstructionId::Triangle { n, k })?;
        expect(&mut tally, a2 == t, &[&a2, &t], || format!("n = {n}, k = {k}: A_2 differs from the triangle family"));
        if k >= 3 {
            let a3 = construct(ConstructionId::AR { n, k, r: 3 })?;
            expect(&mut tally, a2.len() == a3.len(), &[&a2, &a3], || {
                format!("n = {n}, k = {k}: |A_2| = {} but |A_3| = {}", a2.len(), a3.len())
            });
        }
        if n == 2 * k {
            continue;
        }
        let h = construct(ConstructionId::HiltonMilner { n, k })?;
        let ak = construct(ConstructionId::AR { n, k, r: k })?;
        expect(&mut tally, h == ak, &[&h, &ak], || format!("n = {n}, k = {k}: A_k differs from the Hilton-Milner family"));
        match k {
            2 => expect(&mut tally, h == t, &[&h, &t], || format!("n = {n}: H(n,2) differs from T(n,2)")),
            3 => {
                expect(&mut tally, h.len() == t.len(), &[&h, &t], || {
                    format!("n = {n}: |H(n,3)| = {} but |T(n,3)| = {}", h.len(), t.len())
                });
                // equal sizes, different degree sequences
                expect(&mut tally, degree_profile(&h) != degree_profile(&t), &[&h, &t], || {
                    format!("n = {n}: H(n,3) and T(n,3) have the same degree sequence")
                });
            }
            _ => expect(&mut tally, h.len() > t.len(), &[&h, &t], || {
                format!("n = {n}, k = {k}: |H| = {} is not above |T| = {}", h.len(), t.len())
            }),
        }
    }
    Ok((json!({ "grid": grid.len(), "n_max": grid.iter().map(|g| g.0).max(), "k_max": grid.iter().map(|g| g.1).max() }), tally))
}

pub(crate) fn c26(params: &ClaimParams) -> Result<(Value, Tally)> {
    let grid = small_grid(params, 2)?;
    let mut tally = Tally::definitive();
    for &(n, k) in &grid {
        let (ni, ki) = (n as i64, k as i64);
        for r in 2..=k {
            let a = construct(ConstructionId::AR { n, k, r })?;
            let ri = r as i64;
            let gamma = bc(ni - ri - 1, ki - ri) as usize;
            expect(&mut tally, a.diversity() == gamma, &[&a], || {
                format!("n = {n}, k = {k}, r = {r}: γ = {} but C(n-r-1,k-r) = {gamma}", a.diversity())
            });
            let delta = (bc(ni - 1, ki - 1) - bc(ni - ri - 1, ki - 1)) as usize;
            let (max, _) = a.max_degree();
            expect(&mut tally, max == delta && a.degree(1) == max, &[&a], || {
                format!("n = {n}, k = {k}, r = {r}: Δ = {max}, degree of 1 = {}, formula {delta}", a.degree(1))
            });
        }
        let h = construct(ConstructionId::HTilde { n, k })?;
        let size = 3 * bc(ni - 3, ki - 2) as usize;
        expect(&mut tally, h.len() == size, &[&h], || format!("n = {n}, k = {k}: |H̃| = {} but 3C(n-3,k-2) = {size}", h.len()));
        let rho = h.rho()?;
        expect(&mut tally, rho == Rational::new(2, 3), &[&h], || format!("n = {n}, k = {k}: ρ(H̃) = {}", format_ratio(&rho)));
    }
    if params.k.map_or(true, |k| k == 3) {
        for n in [7, 301] {
            let f = construct(ConstructionId::Fano { n, k: 3 })?;
            let rho = f.rho()?;
            expect(&mut tally, rho == Rational::new(3, 7), &[&f], || format!("n = {n}: ρ(Fano) = {}", format_ratio(&rho)));
        }
    }
    let mut counts = Vec::new();
    for (n, k) in [(4, 2), (6, 3)] {
        if !grid.contains(&(n, k)) {
            continue;
        }
        let found = count_extremal_intersecting(n, k)?;
        let expected = 1u64 << bc(n as i64 - 1, k as i64 - 1);
        counts.push(json!({ "n": n, "k": k, "count": found }));
        tally.instance();
        if found != expected {
            tally.violation(json!({ "n": n, "k": k, "detail": format!("{found} extremal families, expected {expected}") }));
        }
    }
    Ok((json!({ "grid": grid.len(), "counts": counts }), tally))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claims::Verdict;

    #[test]
    fn fano_at_scale() {
        let (v, t) = c24(&ClaimParams::new()).unwrap();
        assert_eq!(t.verdict(), Verdict::Holds);
        assert_eq!(v["rho"], "3/7");
    }

    #[test]
    fn identities_on_a_small_grid() {
        for check in [c25, c26] {
            let (_, t) = check(&ClaimParams::new().n_max(9).k_max(4)).unwrap();
            assert_eq!(t.verdict(), Verdict::Holds, "{:?}", t.counterexamples);
        }
    }
}
