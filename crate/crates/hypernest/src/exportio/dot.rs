//! Graphviz output.
//!
//! Nodes are circles and hyperedges are rounded clusters. Graphviz clusters
//! must form a tree, so a node (or hyperedge) is drawn inside its container
//! only when it has exactly one container; otherwise it is drawn at the top
//! level and linked to each container by a dashed undirected line.
//!
//! Every hyperedge has an anchor vertex named after its id (`e3`). Simple
//! and nesting anchors are invisible points inside their cluster. A directed
//! hyperedge is a small point anchor with a plain line in from the source
//! anchor and an arrow out to the target anchor, which lets directed edges
//! themselves be endpoints or members.

use std::collections::BTreeMap;
use std::fmt::Write;

use hypernest_core::{EdgeId, EdgePayload, Hypergraph, NodeId};

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            _ => out.push(c),
        }
    }
    out.push('"');
    out
}

struct Layout {
    node_parent: BTreeMap<NodeId, EdgeId>,
    edge_parent: BTreeMap<EdgeId, EdgeId>,
    nodes_in: BTreeMap<EdgeId, Vec<NodeId>>,
    edges_in: BTreeMap<EdgeId, Vec<EdgeId>>,
}

fn layout(g: &Hypergraph) -> Layout {
    let mut node_holders: BTreeMap<NodeId, Vec<EdgeId>> = BTreeMap::new();
    let mut edge_holders: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    for e in g.edges() {
        match &e.payload {
            EdgePayload::Simple(m) => {
                for v in m {
                    node_holders.entry(*v).or_default().push(e.id);
                }
            }
            EdgePayload::Nesting(m) => {
                for x in m {
                    edge_holders.entry(*x).or_default().push(e.id);
                }
            }
            EdgePayload::Directed { .. } => {}
        }
    }
    let node_parent: BTreeMap<_, _> = node_holders
        .iter()
        .filter(|(_, h)| h.len() == 1)
        .map(|(v, h)| (*v, h[0]))
        .collect();
    let edge_parent: BTreeMap<_, _> = edge_holders
        .iter()
        .filter(|(_, h)| h.len() == 1)
        .map(|(x, h)| (*x, h[0]))
        .collect();
    let mut nodes_in: BTreeMap<EdgeId, Vec<NodeId>> = BTreeMap::new();
    for (v, p) in &node_parent {
        nodes_in.entry(*p).or_default().push(*v);
    }
    let mut edges_in: BTreeMap<EdgeId, Vec<EdgeId>> = BTreeMap::new();
    for (x, p) in &edge_parent {
        edges_in.entry(*p).or_default().push(*x);
    }
    Layout {
        node_parent,
        edge_parent,
        nodes_in,
        edges_in,
    }
}

fn emit_node(out: &mut String, g: &Hypergraph, v: NodeId, indent: usize) {
    let label = &g.node(v).expect("listed node").label;
    let _ = writeln!(out, "{:indent$}{v} [label={}];", "", quote(label));
}

fn emit_edge(out: &mut String, g: &Hypergraph, lay: &Layout, id: EdgeId, indent: usize) {
    let e = g.edge(id).expect("listed edge");
    let pad = "";
    if e.is_directed() {
        let _ = writeln!(
            out,
            "{pad:indent$}{id} [shape=point, width=0.08, xlabel={}];",
            quote(&e.label)
        );
        return;
    }
    let _ = writeln!(out, "{pad:indent$}subgraph cluster_{id} {{");
    let inner = indent + 4;
    let _ = writeln!(out, "{pad:inner$}label={};", quote(&e.label));
    let _ = writeln!(out, "{pad:inner$}style=rounded;");
    let _ = writeln!(out, "{pad:inner$}{id} [shape=point, style=invis];");
    for v in lay.nodes_in.get(&id).into_iter().flatten() {
        emit_node(out, g, *v, inner);
    }
    for x in lay.edges_in.get(&id).into_iter().flatten() {
        emit_edge(out, g, lay, *x, inner);
    }
    let _ = writeln!(out, "{pad:indent$}}}");
}

/// Renders the hypergraph as a DOT digraph. Output depends only on the
/// hypergraph, so equal inputs give equal text.
pub fn to_dot(g: &Hypergraph) -> String {
    let lay = layout(g);
    let mut out = String::new();
    out.push_str("digraph hypergraph {\n");
    out.push_str("    compound=true;\n");
    out.push_str("    node [shape=circle];\n");
    for v in g.node_ids().filter(|v| !lay.node_parent.contains_key(v)) {
        emit_node(&mut out, g, v, 4);
    }
    for id in g.edge_ids().filter(|x| !lay.edge_parent.contains_key(x)) {
        emit_edge(&mut out, g, &lay, id, 4);
    }
    for e in g.edges() {
        match &e.payload {
            EdgePayload::Simple(m) => {
                for v in m.iter().filter(|v| !lay.node_parent.contains_key(v)) {
                    let _ = writeln!(out, "    {} -> {v} [dir=none, style=dashed];", e.id);
                }
            }
            EdgePayload::Nesting(m) => {
                for x in m.iter().filter(|x| !lay.edge_parent.contains_key(x)) {
                    let _ = writeln!(out, "    {} -> {x} [dir=none, style=dashed];", e.id);
                }
            }
            EdgePayload::Directed { source, target } => {
                let tail = if g.edge(*source).is_ok_and(|s| !s.is_directed()) {
                    format!(", ltail=cluster_{source}")
                } else {
                    String::new()
                };
                let head = if g.edge(*target).is_ok_and(|t| !t.is_directed()) {
                    format!(", lhead=cluster_{target}")
                } else {
                    String::new()
                };
                let _ = writeln!(out, "    {source} -> {} [arrowhead=none{tail}];", e.id);
                let _ = writeln!(
                    out,
                    "    {} -> {target} [label={}{head}];",
                    e.id,
                    quote(&e.label)
                );
            }
        }
    }
    out.push_str("}\n");
    out
}
