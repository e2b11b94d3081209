//! JSON documents for ribbon maps, and DOT output.
//!
//! ```json
//! {
//!   "edges": ["a", "b"],
//!   "vertices": [
//!     { "rotation": ["a+", "b-", "a-", "b+"] }
//!   ],
//!   "name": "torus"
//! }
//! ```

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::map::RibbonMap;
use crate::surface::trace_faces;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexRecord {
    pub rotation: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub edges: Vec<String>,
    pub vertices: Vec<VertexRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

impl GraphDocument {
    pub fn from_map(map: &RibbonMap) -> Self {
        GraphDocument {
            edges: map.labels().to_vec(),
            vertices: map
                .rotations()
                .into_iter()
                .map(|r| VertexRecord {
                    rotation: r.into_iter().map(|d| map.dart_ref(d).to_string()).collect(),
                })
                .collect(),
            name: None,
            comment: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))
    }

    pub fn to_map(&self) -> Result<RibbonMap> {
        let rotations: Vec<Vec<String>> = self.vertices.iter().map(|v| v.rotation.clone()).collect();
        RibbonMap::from_rotation_lists(&self.edges, &rotations)
    }

    /// Two-space indent, fixed key order, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

/// Validates a document and renders it canonically, keeping its metadata.
pub fn canonicalize_document(text: &str) -> Result<String> {
    let doc = GraphDocument::parse(text)?;
    let map = doc.to_map()?;
    let mut out = GraphDocument::from_map(&map);
    out.name = doc.name;
    out.comment = doc.comment;
    Ok(out.to_canonical_string())
}

pub fn parse_graph(bytes: &[u8]) -> Result<RibbonMap> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Syntax(format!("not UTF-8: {e}")))?;
    GraphDocument::parse(text)?.to_map()
}

pub fn serialize_graph(map: &RibbonMap) -> String {
    GraphDocument::from_map(map).to_canonical_string()
}

/// Undirected multigraph, one node per vertex and one edge per geometric
/// edge; rotations and faces go in comments.
pub fn map_to_dot(map: &RibbonMap) -> String {
    let mut out = String::from("graph ribbon {\n");
    for v in 0..map.num_vertices() {
        let star = map.star(v).unwrap_or(&[]);
        let tokens: Vec<String> = star.iter().map(|&d| map.dart_ref(d).to_string()).collect();
        let _ = writeln!(out, "  v{v}; // rotation: {}", tokens.join(" "));
    }
    for k in 0..map.num_edges() {
        let (u, w) = map.endpoints(crate::map::Dart::forward(k));
        let _ = writeln!(out, "  v{u} -- v{w} [label=\"{}\"];", map.label(k));
    }
    if let Ok(faces) = trace_faces(map) {
        for (i, f) in faces.iter().enumerate() {
            let _ = writeln!(out, "  // face {i}: {}", f.word(map));
        }
    }
    out.push_str("}\n");
    out
}
