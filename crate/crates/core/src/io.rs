//! JSON documents for graphs, balls and entourages, and DOT export.
//!
//! Every document carries a `"format"` field naming its kind and version.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::cayley::CayleyBall;
use crate::entourage::Entourage;
use crate::error::{Error, Result};
use crate::graph::{EdgeWeights, Graph};

pub const GRAPH_FORMAT: &str = "relhyp-graph/1";
pub const BALL_FORMAT: &str = "relhyp-ball/1";
pub const ENTOURAGE_FORMAT: &str = "relhyp-entourage/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub format: String,
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Ball documents only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntourageDoc {
    pub format: String,
    pub vertices: usize,
    /// Off-diagonal pairs `x < y`.
    pub pairs: Vec<[usize; 2]>,
}

fn graph_doc(graph: &Graph) -> GraphDoc {
    GraphDoc {
        format: GRAPH_FORMAT.into(),
        vertices: graph.vertex_count(),
        edges: graph.edges().iter().map(|e| [e.0, e.1]).collect(),
        labels: graph.labels().map(|l| l.to_vec()),
        group: None,
        radius: None,
        norm: None,
    }
}

pub fn graph_to_json(graph: &Graph) -> String {
    serde_json::to_string_pretty(&graph_doc(graph)).expect("plain data serializes")
}

/// A graph document annotated with the group, the radius and word norms.
pub fn ball_to_json(ball: &CayleyBall) -> String {
    let mut doc = graph_doc(ball.graph());
    doc.format = BALL_FORMAT.into();
    doc.group = Some(ball.model().name());
    doc.radius = Some(ball.radius());
    doc.norm = Some(ball.norms().to_vec());
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

fn parse_err(e: serde_json::Error) -> Error {
    Error::input(format!("malformed document: {e}"))
}

pub fn read_graph_doc(text: &str) -> Result<GraphDoc> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(parse_err)?;
    if doc.format != GRAPH_FORMAT && doc.format != BALL_FORMAT {
        return Err(Error::input(format!("expected a graph document, got format {:?}", doc.format)));
    }
    if let Some(n) = &doc.norm {
        if n.len() != doc.vertices {
            return Err(Error::input(format!("{} norms for {} vertices", n.len(), doc.vertices)));
        }
    }
    Ok(doc)
}

/// Reads a graph or ball document as a graph.
pub fn graph_from_json(text: &str) -> Result<Graph> {
    let doc = read_graph_doc(text)?;
    let g = Graph::new(doc.vertices, doc.edges.iter().map(|e| (e[0], e[1])))?;
    match doc.labels {
        Some(l) => g.with_labels(l),
        None => Ok(g),
    }
}

pub fn entourage_to_json(u: &Entourage) -> String {
    let doc = EntourageDoc {
        format: ENTOURAGE_FORMAT.into(),
        vertices: u.vertex_count(),
        pairs: u.pairs().into_iter().map(|(x, y)| [x, y]).collect(),
    };
    serde_json::to_string_pretty(&doc).expect("plain data serializes")
}

pub fn entourage_from_json(text: &str) -> Result<Entourage> {
    let doc: EntourageDoc = serde_json::from_str(text).map_err(parse_err)?;
    if doc.format != ENTOURAGE_FORMAT {
        return Err(Error::input(format!("expected an entourage document, got format {:?}", doc.format)));
    }
    Entourage::from_pairs(doc.vertices, doc.pairs.iter().map(|p| (p[0], p[1])))
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT description; edge labels carry the weights when given.
pub fn to_dot(graph: &Graph, weights: Option<&EdgeWeights>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..graph.vertex_count() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", dot_escape(&graph.label(v)));
    }
    for (k, e) in graph.edges().iter().enumerate() {
        match weights {
            Some(w) => {
                let _ = writeln!(out, "  {} -- {} [label=\"{}\"];", e.0, e.1, w.get(k));
            }
            None => {
                let _ = writeln!(out, "  {} -- {};", e.0, e.1);
            }
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::GroupModel;
    use crate::floyd::{floyd_weights, FloydConfig};

    #[test]
    fn graph_round_trip() {
        let g = Graph::grid(3, 4);
        assert_eq!(graph_from_json(&graph_to_json(&g)).unwrap(), g);
        let l = Graph::path(3).with_labels(vec!["x".into(), "y\"".into(), "z".into()]).unwrap();
        assert_eq!(graph_from_json(&graph_to_json(&l)).unwrap(), l);
    }

    #[test]
    fn ball_document() {
        let b = CayleyBall::build(&GroupModel::free(2), 2).unwrap();
        let text = ball_to_json(&b);
        let doc = read_graph_doc(&text).unwrap();
        assert_eq!(doc.format, BALL_FORMAT);
        assert_eq!(doc.norm.as_deref(), Some(b.norms()));
        assert_eq!(doc.group.as_deref(), Some("free:2"));
        assert_eq!(&graph_from_json(&text).unwrap(), b.graph());
    }

    #[test]
    fn entourage_round_trip() {
        let u = Entourage::from_pairs(5, [(0, 3), (1, 2)]).unwrap();
        assert_eq!(entourage_from_json(&entourage_to_json(&u)).unwrap(), u);
        assert!(entourage_from_json(&graph_to_json(&Graph::path(2))).is_err());
    }

    #[test]
    fn dot_has_floyd_labels() {
        let g = Graph::cycle(4);
        let w = floyd_weights(&g, &FloydConfig::new(0.5, 0).unwrap()).unwrap();
        let dot = to_dot(&g, Some(&w));
        assert!(dot.contains("2 -- 3 [label=\"0.5\"]"));
        assert!(dot.contains("0 -- 1 [label=\"1\"]"));
    }
}
