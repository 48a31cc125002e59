use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::family::{format_ratio, parse_ratio, Rational, SetFamily};

/// Which members of a family tuple an atom constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    All,
    Index(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    CoveringAtLeast(usize),
    RhoAtMost(Rational),
    GammaAtLeast(usize),
}

impl Atom {
    fn holds(&self, f: &SetFamily) -> bool {
        match *self {
            Atom::CoveringAtLeast(s) => f.covering_number().map_or(true, |tau| tau >= s),
            // vacuous on the empty family; shifting never changes emptiness
            Atom::RhoAtMost(c) => f.rho().map_or(true, |rho| rho <= c),
            Atom::GammaAtLeast(r) => f.diversity() >= r,
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::CoveringAtLeast(s) => write!(f, "tau_ge={s}"),
            Atom::RhoAtMost(c) => write!(f, "rho_le={}", format_ratio(c)),
            Atom::GammaAtLeast(r) => write!(f, "gamma_ge={r}"),
        }
    }
}

impl FromStr for Atom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (key, value) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidParameters(format!("predicate {s:?} is not key=value")))?;
        let int = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameters(format!("bad integer in predicate {s:?}")))
        };
        match key.trim() {
            "tau_ge" => Ok(Atom::CoveringAtLeast(int(value)?)),
            "rho_le" => Ok(Atom::RhoAtMost(parse_ratio(value)?)),
            "gamma_ge" => Ok(Atom::GammaAtLeast(int(value)?)),
            other => Err(Error::InvalidParameters(format!("unknown predicate {other:?}"))),
        }
    }
}

/// A property of a family tuple that shifting may destroy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyPredicate {
    True,
    Atom(Target, Atom),
    Conjunction(Vec<PropertyPredicate>),
}

impl PropertyPredicate {
    pub fn all(atom: Atom) -> Self {
        PropertyPredicate::Atom(Target::All, atom)
    }

    pub fn on(index: usize, atom: Atom) -> Self {
        PropertyPredicate::Atom(Target::Index(index), atom)
    }

    pub fn and(self, other: PropertyPredicate) -> Self {
        match self {
            PropertyPredicate::True => other,
            PropertyPredicate::Conjunction(mut v) => {
                v.push(other);
                PropertyPredicate::Conjunction(v)
            }
            p => PropertyPredicate::Conjunction(vec![p, other]),
        }
    }

    /// Non-triviality of every family: `τ >= 2` on each.
    pub fn non_trivial() -> Self {
        PropertyPredicate::all(Atom::CoveringAtLeast(2))
    }

    pub fn holds(&self, tuple: &[SetFamily]) -> bool {
        match self {
            PropertyPredicate::True => true,
            PropertyPredicate::Atom(Target::All, atom) => tuple.iter().all(|f| atom.holds(f)),
            PropertyPredicate::Atom(Target::Index(i), atom) => tuple.get(*i).map_or(true, |f| atom.holds(f)),
            PropertyPredicate::Conjunction(parts) => parts.iter().all(|p| p.holds(tuple)),
        }
    }
}

impl fmt::Display for PropertyPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyPredicate::True => write!(f, "true"),
            PropertyPredicate::Atom(Target::All, a) => write!(f, "{a}"),
            PropertyPredicate::Atom(Target::Index(i), a) => write!(f, "{a}@{i}"),
            PropertyPredicate::Conjunction(parts) => {
                for (idx, p) in parts.iter().enumerate() {
                    if idx > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Comma-separated atoms, each optionally suffixed `@index`.
impl FromStr for PropertyPredicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = PropertyPredicate::True;
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if part == "true" {
                continue;
            }
            let (atom, target) = match part.split_once('@') {
                Some((a, idx)) => {
                    let idx = idx
                        .parse::<usize>()
                        .map_err(|_| Error::InvalidParameters(format!("bad family index in {part:?}")))?;
                    (a, Target::Index(idx))
                }
                None => (part, Target::All),
            };
            out = out.and(PropertyPredicate::Atom(target, atom.parse()?));
        }
        Ok(out)
    }
}

impl Serialize for PropertyPredicate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let p: PropertyPredicate = "tau_ge=2".parse().unwrap();
        assert_eq!(p, PropertyPredicate::all(Atom::CoveringAtLeast(2)));
        let p: PropertyPredicate = "rho_le=4/6,gamma_ge=1@0".parse().unwrap();
        assert_eq!(p.to_string(), "rho_le=2/3,gamma_ge=1@0");
        assert!("rho_le=0.5".parse::<PropertyPredicate>().is_err());
        assert!("nope=1".parse::<PropertyPredicate>().is_err());
        assert_eq!("".parse::<PropertyPredicate>().unwrap(), PropertyPredicate::True);
    }

    #[test]
    fn evaluation() {
        let tri = SetFamily::from_lists(4, 2, &[&[1, 2], &[1, 3], &[2, 3]]).unwrap();
        let star = SetFamily::from_lists(4, 2, &[&[1, 2], &[1, 3]]).unwrap();
        let p = PropertyPredicate::non_trivial();
        assert!(p.holds(&[tri.clone()]));
        assert!(!p.holds(&[tri.clone(), star.clone()]));
        assert!(PropertyPredicate::on(0, Atom::CoveringAtLeast(2)).holds(&[tri.clone(), star]));
        assert!(PropertyPredicate::all(Atom::RhoAtMost(Rational::new(2, 3))).holds(&[tri.clone()]));
        assert!(!PropertyPredicate::all(Atom::RhoAtMost(Rational::new(1, 2))).holds(&[tri.clone()]));
        assert!(PropertyPredicate::all(Atom::GammaAtLeast(1)).holds(&[tri]));
    }
}
