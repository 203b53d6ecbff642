//! Instance and graph files.
//!
//! Instances are JSON objects with `moduli`, `A`, `B` and an optional free-form
//! `meta`. Coordinates are reduced on load; [`to_text`] writes the canonical
//! form, which parses back to the same bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;
use sumset_core::hypergraph::{HypercubeGraphBuilder, VertexId};
use sumset_core::{GSet, GroupSpec, HypercubeGraph, IndexSet, SumsetInstance};

use crate::error::{CliError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    moduli: Vec<u64>,
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    meta: Option<Value>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceFile {
    pub instance: SumsetInstance,
    pub meta: Option<Value>,
}

fn parse_error(path: &str, e: serde_json::Error) -> CliError {
    let full = e.to_string();
    let msg = match full.rfind(" at line ") {
        Some(i) => full[..i].to_string(),
        None => full,
    };
    CliError::Parse { path: path.into(), line: e.line(), column: e.column(), msg }
}

fn invalid(path: &str, msg: impl Into<String>) -> CliError {
    CliError::Invalid { path: path.into(), msg: msg.into() }
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

/// Reduces a list of vectors into a set, naming the offending vector on error.
pub fn set_from_rows(spec: &GroupSpec, rows: &[Vec<i64>], what: &str, path: &str) -> Result<GSet> {
    if let Some(i) = rows.iter().position(|r| r.len() != spec.dim()) {
        return Err(invalid(
            path,
            format!("{what}[{i}] has {} coordinates, expected {}", rows[i].len(), spec.dim()),
        ));
    }
    Ok(GSet::from_coords(spec.clone(), rows.iter().map(Vec::as_slice))?)
}

pub fn parse_instance(text: &str, path: &str) -> Result<InstanceFile> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
    let spec = GroupSpec::new(raw.moduli).map_err(|e| invalid(path, e.to_string()))?;
    let a = set_from_rows(&spec, &raw.a, "A", path)?;
    let b = raw
        .b
        .iter()
        .enumerate()
        .map(|(i, rows)| set_from_rows(&spec, rows, &format!("B[{i}]"), path))
        .collect::<Result<Vec<_>>>()?;
    let instance = SumsetInstance::new(a, b).map_err(|e| invalid(path, e.to_string()))?;
    Ok(InstanceFile { instance, meta: raw.meta })
}

pub fn read_instance(path: &Path) -> Result<InstanceFile> {
    parse_instance(&read_text(path)?, &path.display().to_string())
}

fn row(out: &mut String, coords: &[i64]) {
    out.push('[');
    for (i, c) in coords.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{c}");
    }
    out.push(']');
}

/// `[[x, y], [z, w]]`
pub fn set_json(s: &GSet) -> String {
    let mut out = String::from("[");
    for (i, e) in s.elements().iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        row(&mut out, e.coords());
    }
    out.push(']');
    out
}

pub fn set_value(s: &GSet) -> Value {
    Value::Array(s.elements().iter().map(|e| Value::from(e.coords().to_vec())).collect())
}

/// Canonical text: one line per key, one line per `B_i`.
pub fn to_text(f: &InstanceFile) -> String {
    let inst = &f.instance;
    let mut out = String::from("{\n  \"moduli\": ");
    let moduli: Vec<i64> = inst.spec().moduli().iter().map(|&m| m as i64).collect();
    row(&mut out, &moduli);
    let _ = write!(out, ",\n  \"A\": {},\n  \"B\": [\n", set_json(inst.a()));
    for (i, b) in inst.b().iter().enumerate() {
        let sep = if i + 1 < inst.h() { "," } else { "" };
        let _ = writeln!(out, "    {}{sep}", set_json(b));
    }
    out.push_str("  ]");
    if let Some(meta) = &f.meta {
        let _ = write!(out, ",\n  \"meta\": {meta}");
    }
    out.push_str("\n}\n");
    out
}

pub fn write_instance(path: &Path, f: &InstanceFile) -> Result<()> {
    write_text(path, &to_text(f))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    h: usize,
    /// The index set of every vertex, as 1-based members.
    vertices: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

/// A hypercube graph read from a file, with the file's vertex numbering.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: HypercubeGraph,
    /// canonical id -> file id
    pub to_file: Vec<usize>,
}

impl GraphFile {
    pub fn file_ids(&self, vs: &[VertexId]) -> Vec<usize> {
        let mut out: Vec<usize> = vs.iter().map(|&v| self.to_file[v]).collect();
        out.sort_unstable();
        out
    }
}

pub fn parse_graph(text: &str, path: &str) -> Result<GraphFile> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| parse_error(path, e))?;
    if raw.h == 0 || raw.h > IndexSet::MAX_H {
        return Err(invalid(path, format!("h must lie in 1..={}", IndexSet::MAX_H)));
    }
    let mut b = HypercubeGraphBuilder::new(raw.h);
    for (v, members) in raw.vertices.iter().enumerate() {
        let class = IndexSet::new(raw.h, members).map_err(|e| invalid(path, format!("vertex {v}: {e}")))?;
        b.add_vertex(class, None);
    }
    for &(u, v) in &raw.edges {
        b.add_edge(u, v);
    }
    let (graph, to_canonical) = b.build_with_map().map_err(|e| invalid(path, e.to_string()))?;
    let mut to_file = vec![0; to_canonical.len()];
    for (file, &canon) in to_canonical.iter().enumerate() {
        to_file[canon] = file;
    }
    Ok(GraphFile { graph, to_file })
}

pub fn read_graph(path: &Path) -> Result<GraphFile> {
    parse_graph(&read_text(path)?, &path.display().to_string())
}
