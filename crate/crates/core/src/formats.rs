//! JSON and DOT encodings of graphs, labelings and game transcripts.
//!
//! * graph: `{"n": 4, "edges": [[1, 2], [2, 3]]}`, 1-indexed, pair order free;
//! * labeling: `{"l": 4, "labels": {"1": 3, "2": 1}}`;
//! * transcript: `{"moves": [{"v": 1, "label": 2}], "winner": "Alice"}`;
//! * DOT: `v<i> [label="<i>:<phi(i)>"]` per vertex and `weight=<w>` on edges.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{Move, Player};
use crate::graph::{Graph, GraphError, Vertex};
use crate::labeling::{Label, Labeling, LabelingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid graph: {0}")]
    Graph(#[from] GraphError),
    #[error("invalid labeling: {0}")]
    Labeling(#[from] LabelingError),
    #[error("bad vertex key {0:?} in labeling")]
    VertexKey(String),
    #[error("DOT error at line {line}: {message}")]
    Dot { line: usize, message: String },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[Vertex; 2]>,
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson {
            n: g.n(),
            edges: g.edges().iter().map(|e| [e.u, e.v]).collect(),
        }
    }
}

impl TryFrom<GraphJson> for Graph {
    type Error = GraphError;

    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        Graph::new(j.n, j.edges.into_iter().map(|[a, b]| (a, b)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingJson {
    pub l: Label,
    pub labels: BTreeMap<String, Label>,
}

impl From<&Labeling> for LabelingJson {
    fn from(phi: &Labeling) -> Self {
        LabelingJson {
            l: phi.pool(),
            labels: phi.assigned().map(|(v, a)| (v.to_string(), a)).collect(),
        }
    }
}

impl LabelingJson {
    /// Labeling over `n` vertices.
    pub fn into_labeling(self, n: usize) -> Result<Labeling, FormatError> {
        let mut phi = Labeling::empty(n, self.l);
        for (key, a) in self.labels {
            let v: Vertex = key.trim().parse().map_err(|_| FormatError::VertexKey(key.clone()))?;
            phi.set(v, a)?;
        }
        Ok(phi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptJson {
    pub moves: Vec<Move>,
    pub winner: Player,
}

pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    serde_json::to_value(GraphJson::from(g)).expect("graph serializes")
}

pub fn labeling_to_json(phi: &Labeling) -> serde_json::Value {
    serde_json::to_value(LabelingJson::from(phi)).expect("labeling serializes")
}

pub fn parse_graph_json(text: &str) -> Result<Graph, FormatError> {
    let j: GraphJson = serde_json::from_str(text)?;
    Ok(Graph::try_from(j)?)
}

pub fn parse_labeling_json(text: &str, n: usize) -> Result<Labeling, FormatError> {
    let j: LabelingJson = serde_json::from_str(text)?;
    j.into_labeling(n)
}

/// Parses either encoding, picking DOT when the text starts with a graph header.
pub fn parse_graph_any(text: &str) -> Result<Graph, FormatError> {
    let head = text.trim_start();
    if head.starts_with("graph") || head.starts_with("strict") {
        parse_dot(text)
    } else {
        parse_graph_json(text)
    }
}

/// Renders `g` as an undirected DOT graph. Labeled vertices show
/// `<i>:<label>`, unlabeled ones `<i>`; edges between labeled vertices
/// carry `weight=<sum>`.
pub fn to_dot(g: &Graph, phi: Option<&Labeling>) -> String {
    let label = |v: Vertex| phi.and_then(|p| p.get(v));
    let mut out = String::from("graph G {\n");
    for v in g.vertices() {
        match label(v) {
            Some(a) => writeln!(out, "  v{v} [label=\"{v}:{a}\"];").unwrap(),
            None => writeln!(out, "  v{v} [label=\"{v}\"];").unwrap(),
        }
    }
    for e in g.edges() {
        match (label(e.u), label(e.v)) {
            (Some(a), Some(b)) => writeln!(out, "  v{} -- v{} [weight={}];", e.u, e.v, a + b).unwrap(),
            _ => writeln!(out, "  v{} -- v{};", e.u, e.v).unwrap(),
        }
    }
    out.push_str("}\n");
    out
}

/// Reads the DOT subset written by [`to_dot`]: one statement per line,
/// vertices named `v<i>`, attributes ignored. `n` is the largest index seen.
pub fn parse_dot(text: &str) -> Result<Graph, FormatError> {
    let err = |line: usize, message: String| FormatError::Dot { line, message };
    let vertex = |line: usize, tok: &str| -> Result<Vertex, FormatError> {
        tok.trim()
            .strip_prefix('v')
            .and_then(|d| d.parse::<Vertex>().ok())
            .filter(|&v| v >= 1)
            .ok_or_else(|| err(line, format!("expected vertex v<i>, found {:?}", tok.trim())))
    };
    let mut opened = false;
    let mut closed = false;
    let mut n = 0;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split("//").next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        if !opened {
            let header = line.strip_prefix("strict").map(str::trim_start).unwrap_or(line);
            if !header.starts_with("graph") || !header.ends_with('{') {
                return Err(err(line_no, "expected `graph <name> {`".into()));
            }
            opened = true;
            continue;
        }
        if closed {
            return Err(err(line_no, "content after closing brace".into()));
        }
        if line == "}" {
            closed = true;
            continue;
        }
        let stmt = line.trim_end_matches(';');
        let body = stmt.split('[').next().unwrap().trim();
        if body.contains("->") {
            return Err(err(line_no, "directed edges are not supported".into()));
        }
        if let Some((a, b)) = body.split_once("--") {
            let (a, b) = (vertex(line_no, a)?, vertex(line_no, b)?);
            n = n.max(a).max(b);
            edges.push((a, b));
        } else {
            n = n.max(vertex(line_no, body)?);
        }
    }
    if !closed {
        return Err(err(text.lines().count().max(1), "missing closing brace".into()));
    }
    Ok(Graph::new(n, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_graph, GraphFamily};
    use proptest::prelude::*;

    #[test]
    fn labeling_json_shape() {
        let phi = Labeling::from_labels(4, &[1, 2, 4, 3]).unwrap();
        let v = labeling_to_json(&phi);
        assert_eq!(
            v,
            serde_json::json!({"l": 4, "labels": {"1": 1, "2": 2, "3": 4, "4": 3}})
        );
        let back = parse_labeling_json(&v.to_string(), 4).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn json_errors_carry_position() {
        let e = parse_graph_json("{\"n\": 3,\n \"edges\": [[1, 2],, ]}").unwrap_err();
        assert!(matches!(e, FormatError::Json { line: 2, .. }), "{e:?}");
        let e = parse_graph_json("{\"n\": 2, \"edges\": [[1, 3]]}").unwrap_err();
        assert!(matches!(e, FormatError::Graph(GraphError::VertexOutOfRange { .. })));
        let e = parse_labeling_json("{\"l\": 2, \"labels\": {\"x\": 1}}", 2).unwrap_err();
        assert_eq!(e, FormatError::VertexKey("x".into()));
    }

    #[test]
    fn dot_rendering() {
        let g = build_graph(GraphFamily::Path(3)).unwrap();
        let phi = Labeling::identity(3);
        let dot = to_dot(&g, Some(&phi));
        assert!(dot.contains("v2 [label=\"2:2\"];"));
        assert!(dot.contains("v2 -- v3 [weight=5];"));
        assert_eq!(parse_graph_any(&dot).unwrap(), g);
    }

    #[test]
    fn dot_errors() {
        assert!(matches!(
            parse_dot("digraph G {\n}\n"),
            Err(FormatError::Dot { line: 1, .. })
        ));
        assert!(matches!(
            parse_dot("graph G {\n  v1 -- x2;\n}\n"),
            Err(FormatError::Dot { line: 2, .. })
        ));
        assert!(matches!(
            parse_dot("graph G {\n  v1 -- v2;\n"),
            Err(FormatError::Dot { .. })
        ));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..9).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
                let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| *p);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn json_and_dot_preserve_graphs(g in arb_graph()) {
            let json = graph_to_json(&g).to_string();
            prop_assert_eq!(&parse_graph_json(&json).unwrap(), &g);
            let dot = to_dot(&g, None);
            prop_assert_eq!(&parse_dot(&dot).unwrap(), &g);
        }
    }
}
