//! Graph JSON files.
//!
//! ```json
//! { "vertices": [ {"id": "p1", "q": 0}, {"id": "p2"} ],
//!   "edges": [ {"id": "e1", "u": "p1", "v": "p2", "length": "3/2"},
//!              {"id": "e2", "u": "p1", "v": "p2", "length": {"var": 2}} ] }
//! ```
//!
//! `q` defaults to 0. Lengths are exact rational strings or references to the
//! symbolic variable `l_k`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, Length, WeightedMultigraph};
use crate::pm::PmGraph;
use crate::rational;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: String,
    #[serde(default)]
    q: u32,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    id: String,
    u: String,
    v: String,
    length: LengthRecord,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum LengthRecord {
    Exact(String),
    Var { var: usize },
}

/// Parses a graph document. Syntax and schema problems are [`Error::Parse`];
/// structural problems keep their own variants.
pub fn parse_graph(text: &str) -> Result<PmGraph> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for (k, e) in file.edges.into_iter().enumerate() {
        let length = match e.length {
            LengthRecord::Exact(s) => Length::Exact(rational::parse(&s).map_err(|err| {
                let detail = match err {
                    Error::Parse(m) => m,
                    other => other.to_string(),
                };
                Error::Parse(format!("edges[{k}] (`{}`) length: {detail}", e.id))
            })?),
            LengthRecord::Var { var } => Length::Var(var),
        };
        edges.push(EdgeSpec::new(e.id, e.u, e.v, length));
    }
    let q: Vec<(String, u32)> = file.vertices.iter().map(|v| (v.id.clone(), v.q)).collect();
    let graph = WeightedMultigraph::new(file.vertices.into_iter().map(|v| v.id), edges)?;
    PmGraph::with_weights(graph, q.iter().map(|(id, w)| (id.as_str(), *w)))
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<PmGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn graph_to_json(pm: &PmGraph) -> serde_json::Value {
    let g = pm.graph();
    let file = GraphFile {
        vertices: g
            .vertices()
            .iter()
            .zip(pm.q())
            .map(|(id, &q)| VertexRecord { id: id.clone(), q })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                id: e.id.clone(),
                u: g.vertices()[e.u].clone(),
                v: g.vertices()[e.v].clone(),
                length: match &e.length {
                    Length::Exact(r) => LengthRecord::Exact(rational::render(r)),
                    Length::Var(k) => LengthRecord::Var { var: *k },
                },
            })
            .collect(),
    };
    serde_json::to_value(file).expect("graph records serialize")
}

pub fn write_graph(pm: &PmGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = serde_json::to_string_pretty(&graph_to_json(pm)).expect("graph records serialize");
    std::fs::write(path, text + "\n").map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = r#"{
        "vertices": [{"id": "p1", "q": 0}, {"id": "p2"}],
        "edges": [
            {"id": "e1", "u": "p1", "v": "p2", "length": "1"},
            {"id": "e2", "u": "p2", "v": "p1", "length": "3/2"},
            {"id": "e3", "u": "p1", "v": "p2", "length": {"var": 1}}
        ]
    }"#;

    #[test]
    fn parses_mixed_lengths() {
        let pm = parse_graph(THETA).unwrap();
        assert_eq!(pm.genus(), 2);
        let lens: Vec<String> = pm.graph().edges().iter().map(|e| e.length.to_string()).collect();
        assert_eq!(lens, ["1", "3/2", "l1"]);
    }

    #[test]
    fn round_trip() {
        let pm = parse_graph(THETA).unwrap();
        let again = parse_graph(&graph_to_json(&pm).to_string()).unwrap();
        assert_eq!(pm, again);
    }

    #[test]
    fn errors() {
        let err = parse_graph("{\"vertices\": [").unwrap_err();
        assert!(matches!(&err, Error::Parse(m) if m.contains("line 1")), "{err}");
        let bad_len = THETA.replace("3/2", "3/0");
        assert!(matches!(parse_graph(&bad_len), Err(Error::Parse(m)) if m.contains("e2")));
        let unknown = THETA.replace("\"u\": \"p2\"", "\"u\": \"p9\"");
        assert!(matches!(parse_graph(&unknown), Err(Error::UnknownVertex { .. })));
        let leaf =
            r#"{"vertices": [{"id": "a"}, {"id": "b"}], "edges": [{"id": "e", "u": "a", "v": "b", "length": "1"}]}"#;
        assert!(matches!(
            parse_graph(leaf),
            Err(Error::NonEffectiveCanonicalDivisor { .. })
        ));
    }
}
