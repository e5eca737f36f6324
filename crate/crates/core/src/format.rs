//! Graph JSON files, DOT export and the JSON reports written by the CLI.
//!
//! Graph file layout:
//!
//! ```json
//! {"vertices": ["v1", "v2"],
//!  "edges": [{"name": "e1,1", "source": "v1", "range": "v1", "label": 1}],
//!  "modulus": 3}
//! ```
//!
//! `label` and `modulus` are optional together. Labels are reduced mod the
//! modulus on load.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{DirectedGraph, Edge, GraphError, ZpLabeling};
use crate::leavitt::LeavittAlgebra;
use crate::principality::{Certificate, Reason, Status, Verdict, ZpCertification};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed graph file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("edge \"{edge}\" refers to unknown vertex \"{vertex}\"")]
    UnknownVertex { edge: String, vertex: String },
    #[error("labels and modulus must be given together (edge \"{0}\")")]
    PartialLabels(String),
    #[error("modulus given but no labels")]
    ModulusWithoutLabels,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<String>,
    edges: Vec<RawEdge>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    modulus: Option<u64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    name: String,
    source: String,
    range: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<i64>,
}

/// A graph together with its optional ℤ_p labeling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: DirectedGraph,
    pub labeling: Option<ZpLabeling>,
}

impl GraphFile {
    pub fn new(graph: DirectedGraph, labeling: Option<ZpLabeling>) -> Result<Self, GraphError> {
        if let Some(l) = &labeling {
            l.check_graph(&graph)?;
        }
        Ok(GraphFile { graph, labeling })
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let raw: RawGraph = serde_json::from_str(text)?;
        let index = |edge: &str, name: &str| {
            raw.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| FormatError::UnknownVertex { edge: edge.to_string(), vertex: name.to_string() })
        };
        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut labels = Vec::new();
        for e in &raw.edges {
            edges.push(Edge::new(e.name.clone(), index(&e.name, &e.source)?, index(&e.name, &e.range)?));
            match (e.label, raw.modulus) {
                (Some(l), Some(_)) => labels.push(l),
                (None, None) => {}
                _ => return Err(FormatError::PartialLabels(e.name.clone())),
            }
        }
        let labeling = match raw.modulus {
            Some(p) => Some(ZpLabeling::new(p, &labels)?),
            None => None,
        };
        let graph = DirectedGraph::new(raw.vertices, edges)?;
        Ok(GraphFile { graph, labeling })
    }

    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let raw = RawGraph {
            vertices: g.vertices().to_vec(),
            edges: g
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| RawEdge {
                    name: e.name.clone(),
                    source: g.vertex_name(e.source).to_string(),
                    range: g.vertex_name(e.range).to_string(),
                    label: self.labeling.as_ref().map(|l| l.label(i) as i64),
                })
                .collect(),
            modulus: self.labeling.as_ref().map(|l| l.modulus()),
        };
        serde_json::to_string_pretty(&raw).expect("graph serializes")
    }
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node line per vertex and one edge line per edge.
pub fn to_dot(graph: &DirectedGraph, labeling: Option<&ZpLabeling>) -> String {
    let mut out = String::from("digraph G {\n");
    for v in graph.vertices() {
        out.push_str(&format!("  {};\n", dot_quote(v)));
    }
    for (i, e) in graph.edges().iter().enumerate() {
        let label = match labeling {
            Some(l) => format!("{} [{}]", e.name, l.label(i)),
            None => e.name.clone(),
        };
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            dot_quote(graph.vertex_name(e.source)),
            dot_quote(graph.vertex_name(e.range)),
            dot_quote(&label)
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub verdict: &'static str,
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl VerdictReport {
    pub fn new(graph: &DirectedGraph, verdict: &Verdict) -> Self {
        let name = |v: usize| graph.vertex_name(v).to_string();
        let (label, reason) = match (verdict.status, verdict.reason) {
            (Status::Principal, _) => ("principal", "every vertex emits at least one edge and receives at least one".to_string()),
            (_, Reason::Sink { vertex }) => ("not_principal", format!("vertex \"{}\" emits no edges", name(vertex))),
            (_, Reason::NonReceiving { vertex }) => (
                "inconclusive",
                format!(
                    "vertex \"{}\" receives no edges; the sufficient condition fails and no sink obstruction exists",
                    name(vertex)
                ),
            ),
            (_, Reason::EmitsAndReceives) => unreachable!("only a principal verdict has this reason"),
        };
        VerdictReport { verdict: label, reason, witness: verdict.witness().map(name) }
    }
}

#[derive(Debug, Serialize)]
pub struct PairReport {
    pub coefficient: String,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Serialize)]
pub struct TargetReport {
    pub vertex: String,
    pub exponent: i64,
    pub status: &'static str,
    pub target: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairReport>,
}

#[derive(Debug, Serialize)]
pub struct CertificateReport {
    pub verdict: &'static str,
    pub note: &'static str,
    pub modulus: u64,
    pub max_len: usize,
    pub targets: Vec<TargetReport>,
}

fn target_string(graph: &DirectedGraph, c: &Certificate) -> String {
    LeavittAlgebra::new(graph).render_tensor(&c.target())
}

impl CertificateReport {
    pub fn new(graph: &DirectedGraph, result: &ZpCertification) -> Self {
        let alg = LeavittAlgebra::new(graph);
        let targets = result
            .outcomes
            .iter()
            .map(|o| {
                let vertex = graph.vertex_name(o.vertex).to_string();
                match &o.certificate {
                    Some(c) => TargetReport {
                        vertex,
                        exponent: o.exponent,
                        status: "certified",
                        target: target_string(graph, c),
                        pairs: c
                            .pairs
                            .iter()
                            .map(|p| PairReport {
                                coefficient: p.coefficient.to_string(),
                                x: alg.render(&p.x),
                                y: alg.render(&p.y),
                            })
                            .collect(),
                    },
                    None => TargetReport {
                        target: format!("1 * P[{vertex}] (x) chi^{}", o.exponent),
                        vertex,
                        exponent: o.exponent,
                        status: "not_found",
                        pairs: Vec::new(),
                    },
                }
            })
            .collect();
        let all = result.all_certified();
        CertificateReport {
            verdict: if all { "principal" } else { "incomplete" },
            note: if all {
                "every P_v (x) chi^k lies in the range of Phi; certified on the dense spanning set"
            } else {
                "no certificate within bound for some targets; this does not prove non-principality"
            },
            modulus: result.modulus,
            max_len: result.max_len,
            targets,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gauge_labeling, skew_product, sphere_graph};

    #[test]
    fn round_trip_plain_and_labeled() {
        let g = sphere_graph(3).unwrap();
        let f = GraphFile::new(g.clone(), None).unwrap();
        assert_eq!(GraphFile::parse(&f.to_json()).unwrap(), f);

        let l3 = sphere_graph(2).unwrap();
        let skew = skew_product(&l3, &gauge_labeling(&l3, 3).unwrap()).unwrap();
        let f = GraphFile::new(skew.clone(), Some(gauge_labeling(&skew, 3).unwrap())).unwrap();
        let text = f.to_json();
        assert!(text.contains("\"modulus\": 3"));
        assert_eq!(GraphFile::parse(&text).unwrap(), f);
    }

    #[test]
    fn labels_reduced_on_load() {
        let text = r#"{"vertices":["a"],"edges":[{"name":"l","source":"a","range":"a","label":-1}],"modulus":3}"#;
        let f = GraphFile::parse(text).unwrap();
        assert_eq!(f.labeling.unwrap().labels(), &[2]);
    }

    #[test]
    fn parse_errors() {
        let err = GraphFile::parse("{\"vertices\": [\"a\"],\n \"edges\": [}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = GraphFile::parse(r#"{"vertices":["a"],"edges":[{"name":"l","source":"a","range":"b"}]}"#)
            .unwrap_err();
        assert!(matches!(err, FormatError::UnknownVertex { .. }));
        let err = GraphFile::parse(r#"{"vertices":["a"],"edges":[{"name":"l","source":"a","range":"a","label":1}]}"#)
            .unwrap_err();
        assert!(matches!(err, FormatError::PartialLabels(_)));
        let err = GraphFile::parse(r#"{"vertices":["a","a"],"edges":[]}"#).unwrap_err();
        assert!(err.to_string().contains("duplicate vertex"));
        assert!(GraphFile::parse(r#"{"vertices":[],"edges":[],"extra":1}"#).is_err());
        let err = GraphFile::parse(r#"{"vertices":["a"],"edges":[{"name":"l","source":"a","range":"a","label":1}],"modulus":1}"#)
            .unwrap_err();
        assert!(err.to_string().contains("modulus"));
    }

    #[test]
    fn dot_line_counts() {
        let g = sphere_graph(3).unwrap();
        let dot = to_dot(&g, None);
        assert_eq!(dot.lines().filter(|l| l.contains("->")).count(), 6);
        assert_eq!(dot.lines().filter(|l| l.trim_end().ends_with(';') && !l.contains("->")).count(), 3);
        assert!(dot.contains("\"v1\" -> \"v2\" [label=\"e1,2\"];"));
    }
}
