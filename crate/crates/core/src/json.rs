//! The `{"n": .., "k": .., "sets": [[..], ..]}` family format.
//!
//! Inner lists are strictly ascending and the outer list is in ascending
//! lex order. The parser refuses anything that is not already canonical.

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::family::SetFamily;
use crate::kset::{KSet, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyJson {
    pub n: usize,
    pub k: usize,
    pub sets: Vec<Vec<usize>>,
}

impl From<&SetFamily> for FamilyJson {
    fn from(f: &SetFamily) -> Self {
        FamilyJson {
            n: f.n(),
            k: f.k(),
            sets: f.to_lists(),
        }
    }
}

impl TryFrom<FamilyJson> for SetFamily {
    type Error = Error;

    fn try_from(doc: FamilyJson) -> Result<SetFamily> {
        let FamilyJson { n, k, sets } = doc;
        ensure!(n <= MAX_N, Parse, "n = {n} exceeds the supported maximum {MAX_N}");
        ensure!(k <= n, Parse, "k = {k} exceeds n = {n}");
        let mut members = Vec::with_capacity(sets.len());
        for (idx, list) in sets.iter().enumerate() {
            ensure!(
                list.len() == k,
                Parse,
                "set #{idx} {list:?} has {} elements, expected {k}",
                list.len()
            );
            ensure!(
                list.iter().all(|&e| e >= 1 && e <= n),
                Parse,
                "set #{idx} {list:?} has a label outside [1, {n}]"
            );
            ensure!(
                list.windows(2).all(|w| w[0] < w[1]),
                Parse,
                "set #{idx} {list:?} is not strictly ascending"
            );
            let set = KSet::new(n, list).map_err(|e| Error::Parse(e.to_string()))?;
            if let Some(prev) = members.last() {
                ensure!(*prev != set, Parse, "set #{idx} {list:?} is a duplicate");
                ensure!(*prev < set, Parse, "set #{idx} {list:?} is out of lex order");
            }
            members.push(set);
        }
        Ok(SetFamily::from_sorted_unchecked(n, k, members))
    }
}

/// `serialize_with` helper for family-valued fields.
pub fn serialize_family<S: serde::Serializer>(f: &SetFamily, s: S) -> std::result::Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&FamilyJson::from(f), s)
}

pub fn to_json(f: &SetFamily) -> String {
    serde_json::to_string(&FamilyJson::from(f)).expect("family serializes")
}

pub fn to_value(f: &SetFamily) -> serde_json::Value {
    serde_json::to_value(FamilyJson::from(f)).expect("family serializes")
}

pub fn from_json(text: &str) -> Result<SetFamily> {
    let doc: FamilyJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    SetFamily::try_from(doc)
}

pub fn from_value(value: serde_json::Value) -> Result<SetFamily> {
    let doc: FamilyJson = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    SetFamily::try_from(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_text() {
        let f = SetFamily::from_lists(4, 2, &[&[2, 3], &[1, 4]]).unwrap();
        assert_eq!(to_json(&f), r#"{"n":4,"k":2,"sets":[[1,4],[2,3]]}"#);
        assert_eq!(from_json(&to_json(&f)).unwrap(), f);
    }

    #[test]
    fn rejects_malformed() {
        for bad in [
            r#"{"n":4,"k":2,"sets":[[1,2],[1,2]]}"#,
            r#"{"n":4,"k":2,"sets":[[1,5]]}"#,
            r#"{"n":4,"k":2,"sets":[[0,1]]}"#,
            r#"{"n":4,"k":2,"sets":[[1,2,3]]}"#,
            r#"{"n":4,"k":2,"sets":[[2,1]]}"#,
            r#"{"n":4,"k":2,"sets":[[2,3],[1,4]]}"#,
            r#"{"n":4,"k":5,"sets":[]}"#,
            r#"{"n":4,"k":2}"#,
        ] {
            assert!(matches!(from_json(bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}
