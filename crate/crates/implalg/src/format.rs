//! JSON file formats for hypergraphs, profiles and polymatroid tables.
//!
//! Subset-indexed tables are objects keyed by decimal bitmasks (index `i`
//! is bit `i`). Keys are written in numeric order and must be canonical
//! decimals on input, each present exactly once.

use std::collections::BTreeMap;
use std::fmt;

use implalg_core::hypergraph::{EdgeFamily, Hypergraph, HypergraphError};
use implalg_core::polymatroid::{PolymatroidError, PolymatroidFn};
use implalg_core::profile::{Profile, ProfileError, MAX_INDEX};
use implalg_core::set::VertexSet;
use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::ser::{SerializeMap, Serializer};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Polymatroid(#[from] PolymatroidError),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

/// What a hypergraph file claims to describe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Intent {
    Hypergraph,
    /// The edges are the minimal elements of an implication algebra and
    /// must already form an antichain.
    Algebra,
}

#[derive(Debug, Clone)]
pub struct HypergraphInput {
    pub hypergraph: Hypergraph,
    pub intent: Intent,
}

#[derive(Deserialize)]
struct HypergraphFile {
    vertices: Vec<String>,
    edges: Vec<Vec<String>>,
    #[serde(rename = "as", default)]
    intent: Option<String>,
}

pub fn parse_hypergraph(text: &str) -> Result<HypergraphInput, FormatError> {
    let file: HypergraphFile = serde_json::from_str(text)?;
    let intent = match file.intent.as_deref() {
        None | Some("hypergraph") => Intent::Hypergraph,
        Some("algebra") => Intent::Algebra,
        Some(other) => return Err(invalid(format!("unknown \"as\" value {other:?}"))),
    };
    for (k, edge) in file.edges.iter().enumerate() {
        for (i, label) in edge.iter().enumerate() {
            if edge[..i].contains(label) {
                return Err(invalid(format!("edge {k} lists vertex {label:?} twice")));
            }
        }
    }
    let hypergraph = Hypergraph::new(file.vertices, &file.edges)?;
    if intent == Intent::Algebra && !hypergraph.is_sperner() {
        return Err(invalid("algebra edges must form an antichain"));
    }
    Ok(HypergraphInput { hypergraph, intent })
}

/// Labels of `set` in vertex order.
fn labels(names: &[String], set: VertexSet) -> Vec<&str> {
    set.iter().map(|i| names[i].as_str()).collect()
}

/// `{"vertices": [...], "edges": [[...], ...]}`
#[derive(Debug, Serialize)]
pub struct HypergraphJson<'a> {
    pub vertices: &'a [String],
    pub edges: Vec<Vec<&'a str>>,
}

impl<'a> HypergraphJson<'a> {
    pub fn new(h: &'a Hypergraph) -> Self {
        let names = h.vertex_names();
        HypergraphJson {
            vertices: names,
            edges: h.edges().iter().map(|&e| labels(names, e)).collect(),
        }
    }
}

/// Edges of an indexed family as label lists, one per index.
pub fn family_json<'a>(names: &'a [String], family: &EdgeFamily) -> Vec<Vec<&'a str>> {
    family.edges.iter().map(|&e| labels(names, e)).collect()
}

/// Indices of the set bits of `mask`, ascending.
pub fn indices(mask: u32) -> Vec<usize> {
    VertexSet::from_bits(mask).iter().collect()
}

/// A subset-keyed table written with keys in numeric order.
struct Table<'a>(&'a [(u32, u32)]);

impl Serialize for Table<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            map.serialize_entry(&k.to_string(), v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TableFile<'a> {
    m: usize,
    values: Table<'a>,
}

/// Serialization wrapper for [`Profile`].
pub struct ProfileJson<'a>(pub &'a Profile);

impl Serialize for ProfileJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<_> = self.0.iter().collect();
        TableFile {
            m: self.0.m(),
            values: Table(&entries),
        }
        .serialize(s)
    }
}

/// Serialization wrapper for [`PolymatroidFn`].
pub struct RhoJson<'a>(pub &'a PolymatroidFn);

impl Serialize for RhoJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<_> = self.0.iter().collect();
        TableFile {
            m: self.0.m(),
            values: Table(&entries),
        }
        .serialize(s)
    }
}

/// Table as read, before the key range is known.
struct RawTable(BTreeMap<u32, u32>);

impl<'de> Deserialize<'de> for RawTable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = RawTable;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an object from decimal bitmasks to nonnegative integers")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<RawTable, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((key, value)) = access.next_entry::<String, u32>()? {
                    let mask = parse_key(&key).map_err(de::Error::custom)?;
                    if out.insert(mask, value).is_some() {
                        return Err(de::Error::custom(format!("key {key:?} appears twice")));
                    }
                }
                Ok(RawTable(out))
            }
        }
        d.deserialize_map(V)
    }
}

fn parse_key(key: &str) -> Result<u32, String> {
    let canonical = !key.is_empty()
        && key.bytes().all(|b| b.is_ascii_digit())
        && (key == "0" || !key.starts_with('0'));
    canonical
        .then(|| key.parse().ok())
        .flatten()
        .ok_or_else(|| format!("{key:?} is not a decimal bitmask"))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableInput {
    m: usize,
    values: RawTable,
}

/// Reads the table and checks its keys are exactly `first..2^m`.
fn parse_table(text: &str, first: u32) -> Result<(usize, Vec<u32>), FormatError> {
    let TableInput { m, values } = serde_json::from_str(text)?;
    if m == 0 || m > MAX_INDEX {
        return Err(invalid(format!(
            "m must be between 1 and {MAX_INDEX}, got {m}"
        )));
    }
    let end = 1u32 << m;
    if let Some((&k, _)) = values.0.range(end..).next() {
        return Err(invalid(format!("key {k} is out of range for m = {m}")));
    }
    if let Some(k) = (first..end).find(|k| !values.0.contains_key(k)) {
        return Err(invalid(format!("key {k} is missing")));
    }
    if first > 0 && values.0.contains_key(&0) {
        return Err(invalid("key 0 is not allowed in a profile"));
    }
    Ok((m, values.0.into_values().collect()))
}

pub fn parse_profile(text: &str) -> Result<Profile, FormatError> {
    let (m, values) = parse_table(text, 1)?;
    Ok(Profile::new(m, values)?)
}

pub fn parse_rho(text: &str) -> Result<PolymatroidFn, FormatError> {
    let (m, values) = parse_table(text, 0)?;
    Ok(PolymatroidFn::new(m, values)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_round_trip_keeps_numeric_key_order() {
        let p = Profile::new(4, (1..16).collect()).unwrap();
        let text = serde_json::to_string(&ProfileJson(&p)).unwrap();
        assert!(text.starts_with(r#"{"m":4,"values":{"1":1,"2":2,"3":3,"#));
        assert!(text.ends_with(r#""9":9,"10":10,"11":11,"12":12,"13":13,"14":14,"15":15}}"#));
        assert_eq!(parse_profile(&text).unwrap(), p);
    }

    #[test]
    fn rho_round_trip() {
        let r = PolymatroidFn::new(2, vec![0, 2, 2, 3]).unwrap();
        let text = serde_json::to_string(&RhoJson(&r)).unwrap();
        assert_eq!(text, r#"{"m":2,"values":{"0":0,"1":2,"2":2,"3":3}}"#);
        assert_eq!(parse_rho(&text).unwrap(), r);
    }

    #[test]
    fn table_keys_are_checked() {
        let bad = [
            r#"{"m":1,"values":{}}"#,
            r#"{"m":1,"values":{"1":1,"1":2}}"#,
            r#"{"m":1,"values":{"01":1}}"#,
            r#"{"m":1,"values":{"1":1,"2":1}}"#,
            r#"{"m":1,"values":{"0":0,"1":1}}"#,
            r#"{"m":1,"values":{"1":-1}}"#,
            r#"{"m":0,"values":{}}"#,
            r#"{"m":21,"values":{}}"#,
            r#"{"m":1,"values":{"1":1},"extra":0}"#,
        ];
        for text in bad {
            assert!(parse_profile(text).is_err(), "{text}");
        }
        assert!(parse_rho(r#"{"m":1,"values":{"1":1}}"#).is_err());
        assert!(parse_rho(r#"{"m":1,"values":{"0":1,"1":1}}"#).is_err());
    }

    #[test]
    fn hypergraph_parsing() {
        let h =
            parse_hypergraph(r#"{"vertices":["a","b","c"],"edges":[["b","a"],["c"]]}"#).unwrap();
        assert_eq!(h.intent, Intent::Hypergraph);
        let out = serde_json::to_string(&HypergraphJson::new(&h.hypergraph)).unwrap();
        assert_eq!(
            out,
            r#"{"vertices":["a","b","c"],"edges":[["a","b"],["c"]]}"#
        );

        let nested = r#"{"vertices":["a","b"],"edges":[["a","b"],["a"]],"as":"algebra"}"#;
        assert!(parse_hypergraph(nested).is_err());
        assert!(parse_hypergraph(&nested.replace("algebra", "hypergraph")).is_ok());
        assert!(parse_hypergraph(&nested.replace("algebra", "poset")).is_err());
        assert!(parse_hypergraph(r#"{"vertices":["a"],"edges":[["a","a"]]}"#).is_err());
        assert!(parse_hypergraph(r#"{"vertices":["a","b"],"edges":[["a"],["a"]]}"#).is_err());
        assert!(parse_hypergraph(r#"{"vertices":["a"],"edges":[["z"]]}"#).is_err());
        assert!(parse_hypergraph(r#"{"vertices":["a"],"edges":[]}"#).is_err());
        assert!(parse_hypergraph("[").is_err());
    }
}
