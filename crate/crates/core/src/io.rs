//! Catalog files, Hasse graph output and the optional config file.
//!
//! A catalog is a JSON array of records:
//!
//! ```json
//! [{"ambient": "rank 3\nedge 1 2 4>\n...", "sub_roots": [[1,0,0], ...],
//!   "group_index": 2, "lattice_index": 2, "star": "holds",
//!   "minimal": true, "provenance": "Fig 1"}]
//! ```

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::classify::{DecompositionRecord, EdgeStyle, HasseGraph, StarAnnotation};
use crate::dsl::{parse_diagram, serialize_cartan};
use crate::error::{Error, Result};
use crate::roots::RootVector;

fn schema(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        path: path.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| schema(format!("{path}.{key}"), "missing field"))
}

fn positive(obj: &Map<String, Value>, path: &str, key: &str) -> Result<u64> {
    match field(obj, path, key)?.as_u64() {
        Some(v) if v > 0 => Ok(v),
        _ => Err(schema(
            format!("{path}.{key}"),
            "expected a positive integer",
        )),
    }
}

fn record_from_value(v: &Value, path: &str) -> Result<DecompositionRecord> {
    let obj = v
        .as_object()
        .ok_or_else(|| schema(path, "expected an object"))?;
    const KEYS: [&str; 7] = [
        "ambient",
        "sub_roots",
        "group_index",
        "lattice_index",
        "star",
        "minimal",
        "provenance",
    ];
    if let Some(k) = obj.keys().find(|k| !KEYS.contains(&k.as_str())) {
        return Err(schema(format!("{path}.{k}"), "unknown field"));
    }
    let text = field(obj, path, "ambient")?
        .as_str()
        .ok_or_else(|| schema(format!("{path}.ambient"), "expected diagram text"))?;
    let ambient = parse_diagram(text)
        .and_then(|d| d.cartan())
        .map_err(|e| schema(format!("{path}.ambient"), e.to_string()))?;
    let n = ambient.rank();
    let rp = format!("{path}.sub_roots");
    let rows = field(obj, path, "sub_roots")?
        .as_array()
        .ok_or_else(|| schema(&rp, "expected an array of root vectors"))?;
    if rows.len() != n {
        return Err(schema(
            &rp,
            format!("expected {n} roots, found {}", rows.len()),
        ));
    }
    let mut sub_roots = Vec::with_capacity(n);
    for (i, row) in rows.iter().enumerate() {
        let p = format!("{rp}[{i}]");
        let coords = row
            .as_array()
            .ok_or_else(|| schema(&p, "expected an array"))?;
        if coords.len() != n {
            return Err(schema(
                &p,
                format!("expected {n} coordinates, found {}", coords.len()),
            ));
        }
        let mut v = Vec::with_capacity(n);
        for (j, c) in coords.iter().enumerate() {
            v.push(
                c.as_i64()
                    .ok_or_else(|| schema(format!("{p}[{j}]"), "expected an integer"))?,
            );
        }
        sub_roots.push(RootVector(v));
    }
    let star = match field(obj, path, "star")?.as_str() {
        Some("holds") => StarAnnotation::Holds,
        Some("fails") => StarAnnotation::Fails,
        Some("holds_via_nonminimal") => StarAnnotation::HoldsViaNonminimal,
        _ => {
            return Err(schema(
                format!("{path}.star"),
                "expected \"holds\", \"fails\" or \"holds_via_nonminimal\"",
            ))
        }
    };
    let minimal = field(obj, path, "minimal")?
        .as_bool()
        .ok_or_else(|| schema(format!("{path}.minimal"), "expected a boolean"))?;
    let provenance = field(obj, path, "provenance")?
        .as_str()
        .ok_or_else(|| schema(format!("{path}.provenance"), "expected a string"))?
        .to_string();
    Ok(DecompositionRecord {
        ambient,
        sub_roots,
        group_index: positive(obj, path, "group_index")?,
        lattice_index: positive(obj, path, "lattice_index")?,
        star,
        minimal,
        provenance,
    })
}

/// Parse and schema-check catalog text. No semantic verification.
pub fn parse_catalog(text: &str) -> Result<Vec<DecompositionRecord>> {
    let v: Value = serde_json::from_str(text).map_err(|e| {
        schema(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let items = v
        .as_array()
        .ok_or_else(|| schema("$", "expected an array of records"))?;
    items
        .iter()
        .enumerate()
        .map(|(i, item)| record_from_value(item, &format!("$[{i}]")))
        .collect()
}

pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<DecompositionRecord>> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_catalog(&text)
}

#[derive(Serialize)]
struct RecordOut<'a> {
    ambient: String,
    sub_roots: Vec<&'a [i64]>,
    group_index: u64,
    lattice_index: u64,
    star: StarAnnotation,
    minimal: bool,
    provenance: &'a str,
}

fn record_out(r: &DecompositionRecord) -> RecordOut<'_> {
    RecordOut {
        ambient: serialize_cartan(&r.ambient),
        sub_roots: r.sub_roots.iter().map(|v| v.0.as_slice()).collect(),
        group_index: r.group_index,
        lattice_index: r.lattice_index,
        star: r.star,
        minimal: r.minimal,
        provenance: &r.provenance,
    }
}

/// Canonical catalog text: one record per line inside the array.
pub fn serialize_catalog(records: &[DecompositionRecord]) -> String {
    let mut s = String::from("[");
    for (i, r) in records.iter().enumerate() {
        s.push_str(if i == 0 { "\n  " } else { ",\n  " });
        s.push_str(&serde_json::to_string(&record_out(r)).expect("records serialize"));
    }
    s.push_str(if records.is_empty() { "]\n" } else { "\n]\n" });
    s
}

pub fn serialize_record(r: &DecompositionRecord) -> String {
    serde_json::to_string(&record_out(r)).expect("records serialize")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\")
        .replace('"', "\\\"")
        .replace('\n', "\\n")
}

/// DOT digraph with upper systems above lower ones.
pub fn emit_dot(g: &HasseGraph) -> String {
    let mut s = String::from("digraph hasse {\n  node [shape=box, fontname=\"monospace\"];\n");
    for (i, a) in g.nodes.iter().enumerate() {
        let _ = writeln!(
            s,
            "  n{i} [label=\"{}\"];",
            dot_escape(&serialize_cartan(a))
        );
    }
    for e in &g.edges {
        let style = match e.style {
            EdgeStyle::Solid => "solid",
            EdgeStyle::Dashed => "dashed",
            EdgeStyle::Dotted => "dotted",
        };
        let _ = writeln!(
            s,
            "  n{} -> n{} [label=\"{}\", style={style}];",
            e.upper,
            e.lower,
            dot_escape(&e.label)
        );
    }
    s.push_str("}\n");
    s
}

#[derive(Serialize)]
struct GraphOut<'a> {
    nodes: Vec<String>,
    edges: &'a [crate::classify::HasseEdge],
}

pub fn emit_json(g: &HasseGraph) -> String {
    let out = GraphOut {
        nodes: g.nodes.iter().map(serialize_cartan).collect(),
        edges: &g.edges,
    };
    let mut s = serde_json::to_string_pretty(&out).expect("graph serializes");
    s.push('\n');
    s
}

/// Optional defaults read from `kmroots.toml`; command-line flags win.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub height: Option<u64>,
    pub max_cosets: Option<usize>,
    pub max_tiles: Option<usize>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        toml::from_str(text).map_err(|e| schema("kmroots.toml", e.to_string()))
    }

    /// Read `path` if it exists.
    pub fn load(path: impl AsRef<Path>) -> Result<Config> {
        let path = path.as_ref();
        match std::fs::read_to_string(path) {
            Ok(text) => Config::parse(&text),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Config::default()),
            Err(e) => Err(Error::Io(format!("{}: {e}", path.display()))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RECORD: &str = r#"[{"ambient":"rank 3\nedge 1 2 3\nedge 2 3 inf\n","sub_roots":[[1,0,0],[0,1,0],[0,2,1]],"group_index":2,"lattice_index":2,"star":"holds","minimal":true,"provenance":"Fig 2"}]"#;

    #[test]
    fn empty_and_round_trip() {
        assert_eq!(parse_catalog("[]").unwrap(), vec![]);
        let recs = parse_catalog(RECORD).unwrap();
        let text = serialize_catalog(&recs);
        assert_eq!(parse_catalog(&text).unwrap(), recs);
        assert_eq!(serialize_catalog(&parse_catalog(&text).unwrap()), text);
    }

    #[test]
    fn schema_paths() {
        let missing = RECORD.replace(r#""sub_roots":[[1,0,0],[0,1,0],[0,2,1]],"#, "");
        match parse_catalog(&missing) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$[0].sub_roots"),
            other => panic!("{other:?}"),
        }
        let bad = RECORD.replace("[0,2,1]", "[0,2,\"x\"]");
        match parse_catalog(&bad) {
            Err(Error::Schema { path, .. }) => assert_eq!(path, "$[0].sub_roots[2][2]"),
            other => panic!("{other:?}"),
        }
        let bad = RECORD.replace("\"holds\"", "\"maybe\"");
        assert!(
            matches!(parse_catalog(&bad), Err(Error::Schema { path, .. }) if path == "$[0].star")
        );
        assert!(matches!(parse_catalog("{}"), Err(Error::Schema { path, .. }) if path == "$"));
    }

    #[test]
    fn config() {
        let c = Config::parse("height = 12\nmax_cosets = 5000\n").unwrap();
        assert_eq!(c.height, Some(12));
        assert_eq!(c.max_cosets, Some(5000));
        assert!(Config::parse("hieght = 3").is_err());
    }
}
