//! Canonical JSON document for hypergraphs.
//!
//! The layout is fixed: nodes and edges sorted by id, keys in declaration
//! order, two-space indentation and a trailing newline, so serializing the
//! same hypergraph twice gives the same bytes. Loading re-runs every
//! structural check, including the reference-cycle check.
//!
//! Non-finite feature values are written as `null` by the JSON encoder and
//! are rejected on load.

use std::collections::BTreeSet;

use hypernest_core::{EdgeId, EdgePayload, Hyperedge, Hypergraph, Node, NodeId};
use serde::{Deserialize, Serialize};

use super::ExportError;

pub const SCHEMA: &str = "hypernest/1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalDocument {
    pub schema: String,
    pub node_dim: usize,
    pub edge_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub next_edge_id: Option<usize>,
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: usize,
    pub label: String,
    #[serde(default)]
    pub features: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: usize,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub members: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<usize>,
    pub label: String,
    #[serde(default)]
    pub features: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

impl CanonicalDocument {
    pub fn from_hypergraph(g: &Hypergraph) -> Self {
        let nodes = g
            .nodes()
            .map(|n| NodeDoc {
                id: n.id.index(),
                label: n.label.clone(),
                features: n.features.clone(),
            })
            .collect();
        let edges = g
            .edges()
            .map(|e| {
                let (members, source, target) = match &e.payload {
                    EdgePayload::Simple(m) => {
                        (Some(m.iter().map(|v| v.index()).collect()), None, None)
                    }
                    EdgePayload::Nesting(m) => {
                        (Some(m.iter().map(|x| x.index()).collect()), None, None)
                    }
                    EdgePayload::Directed { source, target } => {
                        (None, Some(source.index()), Some(target.index()))
                    }
                };
                EdgeDoc {
                    id: e.id.index(),
                    kind: e.payload.kind_name().to_string(),
                    members,
                    source,
                    target,
                    label: e.label.clone(),
                    features: e.features.clone(),
                    weight: e.weight,
                }
            })
            .collect();
        let next = g.next_edge_id().index();
        let implied = g.edge_ids().last().map_or(0, |e| e.index() + 1);
        CanonicalDocument {
            schema: SCHEMA.to_string(),
            node_dim: g.node_dim(),
            edge_dim: g.edge_dim(),
            next_edge_id: (next != implied).then_some(next),
            nodes,
            edges,
        }
    }

    pub fn into_hypergraph(self) -> Result<Hypergraph, ExportError> {
        if self.schema != SCHEMA {
            return Err(ExportError::Schema(format!(
                "unsupported schema {:?}, expected {SCHEMA:?}",
                self.schema
            )));
        }
        let nodes = self
            .nodes
            .into_iter()
            .map(|n| Node {
                id: NodeId::new(n.id),
                label: n.label,
                features: n.features,
            })
            .collect();
        let edges = self
            .edges
            .into_iter()
            .map(edge_from_doc)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Hypergraph::from_parts(
            self.node_dim,
            self.edge_dim,
            nodes,
            edges,
            self.next_edge_id,
        )?)
    }
}

fn unique<T: Ord + Copy>(
    id: usize,
    xs: &[usize],
    wrap: fn(usize) -> T,
) -> Result<BTreeSet<T>, ExportError> {
    let mut set = BTreeSet::new();
    for &x in xs {
        if !set.insert(wrap(x)) {
            return Err(ExportError::Schema(format!(
                "edge {id} lists member {x} twice"
            )));
        }
    }
    Ok(set)
}

fn edge_from_doc(doc: EdgeDoc) -> Result<Hyperedge, ExportError> {
    let id = doc.id;
    let schema = |msg: &str| ExportError::Schema(format!("edge {id}: {msg}"));
    let payload = match (doc.kind.as_str(), &doc.members, doc.source, doc.target) {
        ("simple", Some(m), None, None) => EdgePayload::Simple(unique(id, m, NodeId::new)?),
        ("nesting", Some(m), None, None) => EdgePayload::Nesting(unique(id, m, EdgeId::new)?),
        ("directed", None, Some(s), Some(t)) => EdgePayload::Directed {
            source: EdgeId::new(s),
            target: EdgeId::new(t),
        },
        ("simple" | "nesting", ..) => return Err(schema("needs `members` and no source/target")),
        ("directed", ..) => return Err(schema("needs `source` and `target` and no members")),
        (other, ..) => return Err(schema(&format!("unknown kind {other:?}"))),
    };
    Ok(Hyperedge {
        id: EdgeId::new(id),
        payload,
        label: doc.label,
        features: doc.features,
        weight: doc.weight,
    })
}

pub fn to_canonical(g: &Hypergraph) -> String {
    let doc = CanonicalDocument::from_hypergraph(g);
    let mut text = serde_json::to_string_pretty(&doc).expect("document is always serializable");
    text.push('\n');
    text
}

pub fn from_canonical(text: &str) -> Result<Hypergraph, ExportError> {
    let doc: CanonicalDocument = serde_json::from_str(text)?;
    doc.into_hypergraph()
}
