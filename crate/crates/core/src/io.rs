//! JSON formats for valuations and matroids.
//!
//! Valuation: `{"n": 3, "ground": [1,2,3], "values": {"": "0", "1": "2", "1,2": "5/2", ...}}`.
//! `ground` defaults to `[n]`; the empty set is keyed `""` (or `"∅"`).
//! Matroid: `{"ground": [1,2,3], "bases": [[1,2], ...]}` or
//! `{"ground": [...], "rank": {"": 0, "1": 1, ...}}`.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::rational::{self, Rational};
use crate::set::ItemSet;
use crate::setfn::Valuation;

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn ground_from(n: Option<usize>, ground: Option<Vec<usize>>) -> Result<Option<ItemSet>> {
    match (n, ground) {
        (_, Some(items)) => {
            if let Some(i) = items.iter().find(|i| **i == 0 || **i > crate::set::MAX_ITEMS) {
                return Err(Error::Parse(format!("item {i} out of range")));
            }
            Ok(Some(ItemSet::from_items(items)))
        }
        (Some(n), None) => Ok(Some(ItemSet::full(n))),
        (None, None) => Ok(None),
    }
}

#[derive(Deserialize)]
struct ValuationFile {
    n: Option<usize>,
    ground: Option<Vec<usize>>,
    values: BTreeMap<String, RawRational>,
}

#[derive(Deserialize)]
struct RawRational(#[serde(with = "crate::rational::serde_rational")] Rational);

pub fn valuation_from_json(text: &str) -> Result<Valuation> {
    let file: ValuationFile = serde_json::from_str(text).map_err(parse_err)?;
    let mut table = BTreeMap::new();
    for (k, v) in file.values {
        table.insert(k.parse::<ItemSet>()?, v.0);
    }
    let ground = match ground_from(file.n, file.ground)? {
        Some(g) => g,
        None => table.keys().fold(ItemSet::EMPTY, |acc, s| acc | *s),
    };
    if let Some(n) = file.n {
        if ground.max_item() > n {
            return Err(Error::SubsetOutOfGround { set: ground, ground: ItemSet::full(n) });
        }
    }
    Valuation::new(ground, &table)
}

pub fn valuation_to_json(v: &Valuation) -> Value {
    let values: Map<String, Value> =
        v.iter().map(|(s, x)| (s.to_string(), Value::String(rational::format(x)))).collect();
    json!({
        "n": v.ground().max_item(),
        "ground": v.ground().items().collect::<Vec<_>>(),
        "values": values,
    })
}

#[derive(Deserialize)]
struct MatroidFile {
    ground: Option<Vec<usize>>,
    bases: Option<Vec<Vec<usize>>>,
    rank: Option<BTreeMap<String, u8>>,
}

pub fn matroid_from_json(text: &str) -> Result<Matroid> {
    let file: MatroidFile = serde_json::from_str(text).map_err(parse_err)?;
    let ground = ground_from(None, file.ground)?;
    match (file.bases, file.rank) {
        (Some(bases), None) => {
            let bases: Vec<ItemSet> = bases.into_iter().map(ItemSet::from_items).collect();
            let ground = ground.unwrap_or_else(|| bases.iter().fold(ItemSet::EMPTY, |a, b| a | *b));
            Matroid::from_bases(ground, &bases)
        }
        (None, Some(rank)) => {
            let mut table = BTreeMap::new();
            for (k, r) in rank {
                table.insert(k.parse::<ItemSet>()?, r);
            }
            let ground = ground.unwrap_or_else(|| table.keys().fold(ItemSet::EMPTY, |a, b| a | *b));
            let mut ranks = Vec::with_capacity(1 << ground.len());
            for s in ground.subsets() {
                ranks.push(*table.get(&s).ok_or(Error::MissingValue(s))?);
            }
            if let Some(s) = table.keys().find(|s| !s.is_subset_of(ground)) {
                return Err(Error::SubsetOutOfGround { set: *s, ground });
            }
            Matroid::from_rank_table(ground, ranks)
        }
        _ => Err(Error::Parse("matroid needs exactly one of \"bases\" or \"rank\"".into())),
    }
}

pub fn matroid_to_json(m: &Matroid) -> Value {
    let bases: Vec<Vec<usize>> = m.bases().into_iter().map(|b| b.items().collect()).collect();
    json!({
        "ground": m.ground().items().collect::<Vec<_>>(),
        "bases": bases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn valuation_round_trip() {
        let text = r#"{"n": 2, "values": {"": 0, "1": "1/2", "2": "1", "1,2": "3/2"}}"#;
        let v = valuation_from_json(text).unwrap();
        assert_eq!(*v.at("1".parse().unwrap()), frac(1, 2));
        let back = valuation_from_json(&valuation_to_json(&v).to_string()).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn valuation_errors() {
        let missing = r#"{"n": 2, "values": {"": 0, "1": 1, "2": 1}}"#;
        assert!(matches!(valuation_from_json(missing), Err(Error::MissingValue(_))));
        assert!(matches!(valuation_from_json("{"), Err(Error::Parse(_))));
        let non_monotone = r#"{"n": 2, "values": {"∅": 0, "1": 2, "2": 1, "1,2": 1}}"#;
        assert!(matches!(valuation_from_json(non_monotone), Err(Error::NonMonotone { .. })));
    }

    #[test]
    fn matroid_round_trip() {
        let m = matroid_from_json(r#"{"ground": [1,2,3], "bases": [[1,2],[1,3],[2,3]]}"#).unwrap();
        assert_eq!(m, Matroid::uniform(2, ItemSet::full(3)));
        assert_eq!(matroid_from_json(&matroid_to_json(&m).to_string()).unwrap(), m);
        let r = matroid_from_json(r#"{"rank": {"": 0, "1": 1, "2": 1, "1,2": 1}}"#).unwrap();
        assert_eq!(r, Matroid::uniform(1, ItemSet::full(2)));
        assert!(matches!(
            matroid_from_json(r#"{"rank": {"": 0, "1": 1, "2": 1}}"#),
            Err(Error::MissingValue(_))
        ));
    }
}
