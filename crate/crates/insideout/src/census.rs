//! Histogram of pieces by kind and number of boundary facets.
//!
//! Kinds are named by facet count: `tet` (4 faces) and `oct` (8 faces) for
//! solids, `polygon` for planar pieces, `other` for anything else. Within a
//! kind, counts are listed from most boundary facets to fewest; empty
//! buckets are omitted.

use std::collections::BTreeMap;

use serde_json::{Map, Value};

use insideout_core::model::{Dissection, FacetOrigin};

fn kind_name(space: u8, facets: usize) -> &'static str {
    match (space, facets) {
        (2, _) => "polygon",
        (_, 4) => "tet",
        (_, 8) => "oct",
        _ => "other",
    }
}

const KIND_ORDER: [&str; 4] = ["polygon", "tet", "oct", "other"];

/// `(kind, boundary facets) -> pieces`.
pub fn census(d: &Dissection) -> BTreeMap<(&'static str, usize), usize> {
    let mut out = BTreeMap::new();
    for flags in d.facet_flags() {
        let bf = flags.iter().filter(|f| **f == FacetOrigin::Boundary).count();
        *out.entry((kind_name(d.space(), flags.len()), bf)).or_insert(0) += 1;
    }
    out
}

pub fn census_value(d: &Dissection) -> Value {
    let table = census(d);
    let mut root = Map::new();
    for kind in KIND_ORDER {
        let mut row: Vec<(usize, usize)> =
            table.iter().filter(|((k, _), _)| *k == kind).map(|((_, bf), n)| (*bf, *n)).collect();
        if row.is_empty() {
            continue;
        }
        row.sort_by_key(|&(bf, _)| std::cmp::Reverse(bf));
        let obj: Map<String, Value> = row.into_iter().map(|(bf, n)| (bf.to_string(), Value::from(n))).collect();
        root.insert(kind.to_string(), Value::Object(obj));
    }
    Value::Object(root)
}
