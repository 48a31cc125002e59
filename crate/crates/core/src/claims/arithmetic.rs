use serde_json::{json, Value};

use super::params::hypothesis;
use super::report::Tally;
use super::ClaimParams;
use crate::binomial::binom;
use crate::error::Result;

/// `C(n-1,a-1) + C(n-1,b-1) <= C(n,b) - C(n-a+1,b) + n - a + 1`, exactly.
pub(crate) fn c21(params: &ClaimParams) -> Result<(Value, Tally)> {
    let n_min = params.n.or(params.n_min).unwrap_or(4);
    let n_max = params.n.or(params.n_max).unwrap_or(60);
    hypothesis(n_min <= n_max, || format!("empty range n in {n_min}..={n_max}"))?;
    hypothesis(n_max <= 2000, || format!("n_max = {n_max} is too large (at most 2000)"))?;
    let mut tally = Tally::definitive();
    for n in n_min.max(4)..=n_max {
        let ni = n as i64;
        for a in 2..=n / 2 {
            if params.a.is_some_and(|x| x != a) {
                continue;
            }
            for b in a..=n - a {
                if params.b.is_some_and(|x| x != b) {
                    continue;
                }
                let (ai, bi) = (a as i64, b as i64);
                let lhs = binom(ni - 1, ai - 1) + binom(ni - 1, bi - 1);
                // C(n-a+1, b) <= C(n, b), so the right side stays non-negative
                let rhs = binom(ni, bi) - binom(ni - ai + 1, bi) + (n - a + 1) as u64;
                tally.instance();
                if lhs > rhs {
                    tally.violation(json!({
                        "n": n, "a": a, "b": b,
                        "detail": format!("left side {lhs} exceeds right side {rhs}"),
                    }));
                }
            }
        }
    }
    Ok((json!({ "n_min": n_min, "n_max": n_max }), tally))
}
