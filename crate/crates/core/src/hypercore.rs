//! The hypergraph data model.
//!
//! Nodes live in a dense table indexed by [`NodeId`]. Hyperedges live in an
//! ordered table keyed by [`EdgeId`]; ids are allocated sequentially and are
//! never handed out twice, even after [`Hypergraph::reduce_singleton`]
//! removes an edge.
//!
//! Every reference an edge makes (nesting members, directed endpoints) points
//! at an edge that already exists, so the reference digraph over edges is
//! acyclic by construction. Loaders that accept arbitrary ids go through
//! [`Hypergraph::from_parts`], which checks acyclicity explicitly.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(usize);

impl NodeId {
    pub const fn new(index: usize) -> Self {
        NodeId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(usize);

impl EdgeId {
    pub const fn new(index: usize) -> Self {
        EdgeId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HypergraphError {
    #[error("node feature length {found} does not match dimension {expected}")]
    NodeFeatureDim { expected: usize, found: usize },
    #[error("edge feature length {found} does not match dimension {expected}")]
    EdgeFeatureDim { expected: usize, found: usize },
    #[error("hyperedge has no members")]
    EmptyEdge,
    #[error("node {0} listed more than once")]
    DuplicateNode(NodeId),
    #[error("hyperedge {0} listed more than once")]
    DuplicateEdge(EdgeId),
    #[error("unknown node {0}")]
    UnknownNode(NodeId),
    #[error("unknown hyperedge {0}")]
    UnknownEdge(EdgeId),
    #[error("hyperedge id {0} is already in use")]
    EdgeIdInUse(EdgeId),
    #[error("node ids must be contiguous from v0, found {0}")]
    NonContiguousNode(NodeId),
    #[error("hyperedge {0} is reachable from itself")]
    Cycle(EdgeId),
    #[error("hyperedge {0} is not directed")]
    NotDirected(EdgeId),
    #[error("weight must be a finite nonnegative number")]
    InvalidWeight,
    #[error("node permutation is not a bijection on {expected} nodes")]
    InvalidPermutation { expected: usize },
}

pub type Result<T, E = HypergraphError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub struct Node {
    pub id: NodeId,
    pub label: String,
    pub features: Vec<f64>,
}

/// What a hyperedge ranges over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgePayload {
    /// A set of nodes.
    Simple(BTreeSet<NodeId>),
    /// A set of hyperedges.
    Nesting(BTreeSet<EdgeId>),
    /// An ordered pair of hyperedges.
    Directed { source: EdgeId, target: EdgeId },
}

impl EdgePayload {
    pub fn kind_name(&self) -> &'static str {
        match self {
            EdgePayload::Simple(_) => "simple",
            EdgePayload::Nesting(_) => "nesting",
            EdgePayload::Directed { .. } => "directed",
        }
    }

    /// Edges this payload refers to, in source-then-target order for
    /// directed payloads.
    pub fn referenced_edges(&self) -> Vec<EdgeId> {
        match self {
            EdgePayload::Simple(_) => Vec::new(),
            EdgePayload::Nesting(members) => members.iter().copied().collect(),
            EdgePayload::Directed { source, target } => vec![*source, *target],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Hyperedge {
    pub id: EdgeId,
    pub payload: EdgePayload,
    pub label: String,
    pub features: Vec<f64>,
    pub weight: Option<f64>,
}

impl Hyperedge {
    /// Member count: `|e|` for simple and nesting edges, 2 for directed ones.
    pub fn order(&self) -> usize {
        match &self.payload {
            EdgePayload::Simple(m) => m.len(),
            EdgePayload::Nesting(m) => m.len(),
            EdgePayload::Directed { .. } => 2,
        }
    }

    pub fn is_simple(&self) -> bool {
        matches!(self.payload, EdgePayload::Simple(_))
    }

    pub fn is_nesting(&self) -> bool {
        matches!(self.payload, EdgePayload::Nesting(_))
    }

    pub fn is_directed(&self) -> bool {
        matches!(self.payload, EdgePayload::Directed { .. })
    }
}

/// Both flags false means a simple hypergraph, unnested and undirected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct HypergraphKind {
    pub nested: bool,
    pub directed: bool,
}

impl HypergraphKind {
    pub fn is_simple(self) -> bool {
        !self.nested && !self.directed
    }
}

impl fmt::Display for HypergraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.nested, self.directed) {
            (false, false) => f.write_str("simple"),
            (true, false) => f.write_str("nested"),
            (false, true) => f.write_str("directed"),
            (true, true) => f.write_str("nested directed"),
        }
    }
}

/// `G = (V, E, X, U)`: nodes with `d`-dimensional features and hyperedges
/// with `d'`-dimensional features.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Hypergraph {
    node_dim: usize,
    edge_dim: usize,
    nodes: Vec<Node>,
    edges: BTreeMap<EdgeId, Hyperedge>,
    next_edge: usize,
}

impl Hypergraph {
    pub fn new(node_dim: usize, edge_dim: usize) -> Self {
        Hypergraph {
            node_dim,
            edge_dim,
            ..Default::default()
        }
    }

    /// Rebuilds a hypergraph from explicit tables, re-checking every
    /// invariant. Node ids must be exactly `v0..v(n-1)`; edge ids may have
    /// gaps. `next_edge_id` defaults to one past the largest edge id.
    pub fn from_parts(
        node_dim: usize,
        edge_dim: usize,
        nodes: Vec<Node>,
        edges: Vec<Hyperedge>,
        next_edge_id: Option<usize>,
    ) -> Result<Self> {
        let mut g = Hypergraph::new(node_dim, edge_dim);
        for (i, node) in nodes.into_iter().enumerate() {
            if node.id.index() != i {
                return Err(HypergraphError::NonContiguousNode(node.id));
            }
            g.check_node_features(&node.features)?;
            g.nodes.push(node);
        }
        for edge in edges {
            if g.edges.contains_key(&edge.id) {
                return Err(HypergraphError::EdgeIdInUse(edge.id));
            }
            g.check_edge_features(&edge.features)?;
            check_weight(edge.weight)?;
            g.next_edge = g.next_edge.max(edge.id.index() + 1);
            g.edges.insert(edge.id, edge);
        }
        if let Some(next) = next_edge_id {
            g.next_edge = g.next_edge.max(next);
        }
        for edge in g.edges.values() {
            g.check_payload_refs(&edge.payload)?;
        }
        if let Some(e) = g.find_cycle() {
            return Err(HypergraphError::Cycle(e));
        }
        Ok(g)
    }

    pub fn node_dim(&self) -> usize {
        self.node_dim
    }

    pub fn edge_dim(&self) -> usize {
        self.edge_dim
    }

    /// Number of nodes, `n`.
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Number of hyperedges, `m`.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// The id the next inserted edge will receive.
    pub fn next_edge_id(&self) -> EdgeId {
        EdgeId(self.next_edge)
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = &Node> + '_ {
        self.nodes.iter()
    }

    /// Edges in ascending id order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &Hyperedge> + '_ {
        self.edges.values()
    }

    pub fn node_ids(&self) -> impl ExactSizeIterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn edge_ids(&self) -> impl ExactSizeIterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn node(&self, id: NodeId) -> Result<&Node> {
        self.nodes.get(id.0).ok_or(HypergraphError::UnknownNode(id))
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Hyperedge> {
        self.edges.get(&id).ok_or(HypergraphError::UnknownEdge(id))
    }

    pub fn contains_node(&self, id: NodeId) -> bool {
        id.0 < self.nodes.len()
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edges.contains_key(&id)
    }

    pub fn add_node(&mut self, label: impl Into<String>, features: Vec<f64>) -> Result<NodeId> {
        self.check_node_features(&features)?;
        let id = NodeId(self.nodes.len());
        self.nodes.push(Node {
            id,
            label: label.into(),
            features,
        });
        Ok(id)
    }

    pub fn add_simple_edge(
        &mut self,
        members: impl IntoIterator<Item = NodeId>,
        label: impl Into<String>,
        features: Vec<f64>,
    ) -> Result<EdgeId> {
        let mut set = BTreeSet::new();
        for v in members {
            if !self.contains_node(v) {
                return Err(HypergraphError::UnknownNode(v));
            }
            if !set.insert(v) {
                return Err(HypergraphError::DuplicateNode(v));
            }
        }
        if set.is_empty() {
            return Err(HypergraphError::EmptyEdge);
        }
        self.check_edge_features(&features)?;
        Ok(self.push_edge(EdgePayload::Simple(set), label.into(), features))
    }

    pub fn add_nesting_edge(
        &mut self,
        members: impl IntoIterator<Item = EdgeId>,
        label: impl Into<String>,
        features: Vec<f64>,
    ) -> Result<EdgeId> {
        let mut set = BTreeSet::new();
        for e in members {
            if !self.contains_edge(e) {
                return Err(HypergraphError::UnknownEdge(e));
            }
            if !set.insert(e) {
                return Err(HypergraphError::DuplicateEdge(e));
            }
        }
        if set.is_empty() {
            return Err(HypergraphError::EmptyEdge);
        }
        self.check_edge_features(&features)?;
        Ok(self.push_edge(EdgePayload::Nesting(set), label.into(), features))
    }

    /// Source and target may coincide or share leaf nodes.
    pub fn add_directed_edge(
        &mut self,
        source: EdgeId,
        target: EdgeId,
        label: impl Into<String>,
        features: Vec<f64>,
    ) -> Result<EdgeId> {
        for e in [source, target] {
            if !self.contains_edge(e) {
                return Err(HypergraphError::UnknownEdge(e));
            }
        }
        self.check_edge_features(&features)?;
        Ok(self.push_edge(
            EdgePayload::Directed { source, target },
            label.into(),
            features,
        ))
    }

    pub fn set_edge_weight(&mut self, edge: EdgeId, weight: Option<f64>) -> Result<()> {
        check_weight(weight)?;
        let e = self
            .edges
            .get_mut(&edge)
            .ok_or(HypergraphError::UnknownEdge(edge))?;
        e.weight = weight;
        Ok(())
    }

    pub fn order_of(&self, edge: EdgeId) -> Result<usize> {
        Ok(self.edge(edge)?.order())
    }

    /// Transitive node closure of an edge: its own nodes for a simple edge,
    /// the union over members for nesting edges and over both endpoints for
    /// directed edges.
    pub fn leaf_node_set(&self, edge: EdgeId) -> Result<BTreeSet<NodeId>> {
        let e = self.edge(edge)?;
        let mut memo = BTreeMap::new();
        Ok(self.leaves_memo(e.id, &mut memo).clone())
    }

    /// Leaf node sets for every edge, sharing work across common members.
    pub fn leaf_node_sets(&self) -> BTreeMap<EdgeId, BTreeSet<NodeId>> {
        let mut memo = BTreeMap::new();
        for id in self.edges.keys() {
            self.leaves_memo(*id, &mut memo);
        }
        memo
    }

    fn leaves_memo<'m>(
        &self,
        id: EdgeId,
        memo: &'m mut BTreeMap<EdgeId, BTreeSet<NodeId>>,
    ) -> &'m BTreeSet<NodeId> {
        if !memo.contains_key(&id) {
            let set = match &self.edges[&id].payload {
                EdgePayload::Simple(m) => m.clone(),
                payload => {
                    let mut acc = BTreeSet::new();
                    for child in payload.referenced_edges() {
                        acc.extend(self.leaves_memo(child, memo).iter().copied());
                    }
                    acc
                }
            };
            memo.insert(id, set);
        }
        &memo[&id]
    }

    /// Node-set containment: `inner` is nested in `outer` when the leaf node
    /// set of `inner` is a subset of that of `outer`.
    pub fn is_nested_in(&self, inner: EdgeId, outer: EdgeId) -> Result<bool> {
        let a = self.leaf_node_set(inner)?;
        let b = self.leaf_node_set(outer)?;
        Ok(a.is_subset(&b))
    }

    pub fn classify(&self) -> HypergraphKind {
        let mut kind = HypergraphKind::default();
        for e in self.edges.values() {
            match e.payload {
                EdgePayload::Simple(_) => {}
                EdgePayload::Nesting(_) => kind.nested = true,
                EdgePayload::Directed { .. } => kind.directed = true,
            }
        }
        kind
    }

    /// Applies `{e} => e`. While `edge` is a nesting edge with exactly one
    /// member, every reference to it is rewritten to point at that member and
    /// the wrapper is removed. Chains such as `{{e}}` collapse all the way to
    /// `e`, so the operation is idempotent. Any other edge is returned as-is.
    pub fn reduce_singleton(&mut self, edge: EdgeId) -> Result<EdgeId> {
        self.edge(edge)?;
        let mut current = edge;
        loop {
            let inner = match &self.edges[&current].payload {
                EdgePayload::Nesting(m) if m.len() == 1 => *m.iter().next().unwrap(),
                _ => break,
            };
            self.edges.remove(&current);
            for e in self.edges.values_mut() {
                match &mut e.payload {
                    EdgePayload::Simple(_) => {}
                    EdgePayload::Nesting(m) => {
                        if m.remove(&current) {
                            m.insert(inner);
                        }
                    }
                    EdgePayload::Directed { source, target } => {
                        if *source == current {
                            *source = inner;
                        }
                        if *target == current {
                            *target = inner;
                        }
                    }
                }
            }
            current = inner;
        }
        debug_assert!(self.find_cycle().is_none());
        Ok(current)
    }

    /// Flattens a tree of directed edges into its in-order leaf sequence:
    /// `((e1, e2), (e3, e4))` becomes `[e1, e2, e3, e4]`. Read as a chain,
    /// consecutive pairs of the sequence are the implied directed relations.
    /// No edges are created.
    pub fn expand_directed(&self, edge: EdgeId) -> Result<Vec<EdgeId>> {
        if !self.edge(edge)?.is_directed() {
            return Err(HypergraphError::NotDirected(edge));
        }
        let mut out = Vec::new();
        let mut stack = vec![edge];
        while let Some(id) = stack.pop() {
            match self.edges[&id].payload {
                EdgePayload::Directed { source, target } => {
                    stack.push(target);
                    stack.push(source);
                }
                _ => out.push(id),
            }
        }
        Ok(out)
    }

    /// Returns a copy with node `v` moved to `mapping[v]`. Edge ids, labels
    /// and features are untouched; only simple-edge memberships change.
    pub fn permute_nodes(&self, mapping: &[NodeId]) -> Result<Hypergraph> {
        let n = self.nodes.len();
        let bad = HypergraphError::InvalidPermutation { expected: n };
        if mapping.len() != n {
            return Err(bad);
        }
        let mut seen = vec![false; n];
        for &target in mapping {
            if target.0 >= n || seen[target.0] {
                return Err(bad);
            }
            seen[target.0] = true;
        }
        let mut nodes: Vec<Option<Node>> = vec![None; n];
        for node in &self.nodes {
            let to = mapping[node.id.0];
            nodes[to.0] = Some(Node {
                id: to,
                ..node.clone()
            });
        }
        let mut edges = self.edges.clone();
        for e in edges.values_mut() {
            if let EdgePayload::Simple(m) = &mut e.payload {
                *m = m.iter().map(|v| mapping[v.0]).collect();
            }
        }
        Ok(Hypergraph {
            node_dim: self.node_dim,
            edge_dim: self.edge_dim,
            nodes: nodes.into_iter().map(Option::unwrap).collect(),
            edges,
            next_edge: self.next_edge,
        })
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<()> {
        for (i, node) in self.nodes.iter().enumerate() {
            if node.id.0 != i {
                return Err(HypergraphError::NonContiguousNode(node.id));
            }
            self.check_node_features(&node.features)?;
        }
        for e in self.edges.values() {
            self.check_edge_features(&e.features)?;
            check_weight(e.weight)?;
            self.check_payload_refs(&e.payload)?;
        }
        match self.find_cycle() {
            Some(e) => Err(HypergraphError::Cycle(e)),
            None => Ok(()),
        }
    }

    /// Some edge that can reach itself through nesting members or directed
    /// endpoints, if any.
    pub fn find_cycle(&self) -> Option<EdgeId> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            Open,
            Done,
        }
        let mut marks: BTreeMap<EdgeId, Mark> = BTreeMap::new();
        for &root in self.edges.keys() {
            if marks.contains_key(&root) {
                continue;
            }
            // (edge, next child index)
            let mut stack: Vec<(EdgeId, usize)> = vec![(root, 0)];
            marks.insert(root, Mark::Open);
            while let Some(&(id, next)) = stack.last() {
                let children = match self.edges.get(&id) {
                    Some(e) => e.payload.referenced_edges(),
                    None => Vec::new(),
                };
                if next < children.len() {
                    let child = children[next];
                    if let Some(top) = stack.last_mut() {
                        top.1 += 1;
                    }
                    match marks.get(&child) {
                        Some(Mark::Open) => return Some(child),
                        Some(Mark::Done) => {}
                        None => {
                            marks.insert(child, Mark::Open);
                            stack.push((child, 0));
                        }
                    }
                } else {
                    marks.insert(id, Mark::Done);
                    stack.pop();
                }
            }
        }
        None
    }

    fn push_edge(&mut self, payload: EdgePayload, label: String, features: Vec<f64>) -> EdgeId {
        let id = EdgeId(self.next_edge);
        self.next_edge += 1;
        self.edges.insert(
            id,
            Hyperedge {
                id,
                payload,
                label,
                features,
                weight: None,
            },
        );
        debug_assert!(self.find_cycle().is_none());
        id
    }

    fn check_node_features(&self, features: &[f64]) -> Result<()> {
        if features.len() != self.node_dim {
            return Err(HypergraphError::NodeFeatureDim {
                expected: self.node_dim,
                found: features.len(),
            });
        }
        Ok(())
    }

    fn check_edge_features(&self, features: &[f64]) -> Result<()> {
        if features.len() != self.edge_dim {
            return Err(HypergraphError::EdgeFeatureDim {
                expected: self.edge_dim,
                found: features.len(),
            });
        }
        Ok(())
    }

    fn check_payload_refs(&self, payload: &EdgePayload) -> Result<()> {
        match payload {
            EdgePayload::Simple(m) => {
                if m.is_empty() {
                    return Err(HypergraphError::EmptyEdge);
                }
                if let Some(v) = m.iter().find(|v| !self.contains_node(**v)) {
                    return Err(HypergraphError::UnknownNode(*v));
                }
            }
            EdgePayload::Nesting(m) => {
                if m.is_empty() {
                    return Err(HypergraphError::EmptyEdge);
                }
                if let Some(e) = m.iter().find(|e| !self.contains_edge(**e)) {
                    return Err(HypergraphError::UnknownEdge(*e));
                }
            }
            EdgePayload::Directed { source, target } => {
                for e in [source, target] {
                    if !self.contains_edge(*e) {
                        return Err(HypergraphError::UnknownEdge(*e));
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_weight(weight: Option<f64>) -> Result<()> {
    match weight {
        Some(w) if !(w.is_finite() && w >= 0.0) => Err(HypergraphError::InvalidWeight),
        _ => Ok(()),
    }
}
