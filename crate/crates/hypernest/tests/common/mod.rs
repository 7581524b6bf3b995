#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use hypernest_core::{EdgeId, EdgePayload, Hypergraph, NodeId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random mutation applied by [`random_hypergraph`].
#[derive(Debug, Clone, Copy)]
pub enum Mutation {
    Node,
    Simple,
    Nesting,
    Directed,
    Reduce,
}

fn pick_subset<T: Copy, R: Rng>(rng: &mut R, from: &[T], max: usize) -> Vec<T> {
    let k = rng.gen_range(1..=max.min(from.len()));
    from.choose_multiple(rng, k).copied().collect()
}

/// Applies one random valid mutation, returning which kind it was.
pub fn mutate<R: Rng>(g: &mut Hypergraph, rng: &mut R, max_nodes: usize) -> Mutation {
    let nodes: Vec<NodeId> = g.node_ids().collect();
    let edges: Vec<EdgeId> = g.edge_ids().collect();
    loop {
        match rng.gen_range(0..10) {
            0 if nodes.len() < max_nodes => {
                g.add_node(format!("n{}", nodes.len()), vec![]).unwrap();
                return Mutation::Node;
            }
            1..=3 if !nodes.is_empty() => {
                let m = pick_subset(rng, &nodes, 4);
                g.add_simple_edge(m, "s", vec![]).unwrap();
                return Mutation::Simple;
            }
            4..=5 if !edges.is_empty() => {
                let m = pick_subset(rng, &edges, 3);
                g.add_nesting_edge(m, "n", vec![]).unwrap();
                return Mutation::Nesting;
            }
            6..=7 if !edges.is_empty() => {
                let s = *edges.choose(rng).unwrap();
                let t = *edges.choose(rng).unwrap();
                g.add_directed_edge(s, t, "d", vec![]).unwrap();
                return Mutation::Directed;
            }
            8..=9 if !edges.is_empty() => {
                let e = *edges.choose(rng).unwrap();
                g.reduce_singleton(e).unwrap();
                return Mutation::Reduce;
            }
            _ if nodes.is_empty() => {
                g.add_node("n0", vec![]).unwrap();
                return Mutation::Node;
            }
            _ => {}
        }
    }
}

/// A seeded random hypergraph with at most `max_nodes` nodes, built through
/// `steps` random mutations.
pub fn random_hypergraph(seed: u64, max_nodes: usize, steps: usize) -> Hypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Hypergraph::new(0, 0);
    let n = rng.gen_range(1..=max_nodes);
    for i in 0..n {
        g.add_node(format!("n{i}"), vec![]).unwrap();
    }
    for _ in 0..steps {
        mutate(&mut g, &mut rng, max_nodes);
    }
    g
}

pub fn random_permutation(seed: u64, n: usize) -> Vec<NodeId> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p: Vec<NodeId> = (0..n).map(NodeId::new).collect();
    p.shuffle(&mut rng);
    p
}

/// Leaf node sets by fixpoint iteration over the raw payloads.
pub fn oracle_leaf_sets(g: &Hypergraph) -> BTreeMap<EdgeId, BTreeSet<NodeId>> {
    let mut leaves: BTreeMap<EdgeId, BTreeSet<NodeId>> = g
        .edges()
        .map(|e| match &e.payload {
            EdgePayload::Simple(m) => (e.id, m.clone()),
            _ => (e.id, BTreeSet::new()),
        })
        .collect();
    loop {
        let mut changed = false;
        for e in g.edges() {
            let children: Vec<EdgeId> = match &e.payload {
                EdgePayload::Simple(_) => continue,
                EdgePayload::Nesting(m) => m.iter().copied().collect(),
                EdgePayload::Directed { source, target } => vec![*source, *target],
            };
            for c in children {
                let add: Vec<NodeId> = leaves[&c].iter().copied().collect();
                let set = leaves.get_mut(&e.id).unwrap();
                for v in add {
                    changed |= set.insert(v);
                }
            }
        }
        if !changed {
            return leaves;
        }
    }
}

/// n x m 0/1 incidence from the oracle leaf sets, rows by node, columns by
/// ascending edge id.
pub fn oracle_incidence(g: &Hypergraph) -> Vec<Vec<i64>> {
    let leaves = oracle_leaf_sets(g);
    g.node_ids()
        .map(|v| {
            g.edge_ids()
                .map(|e| i64::from(leaves[&e].contains(&v)))
                .collect()
        })
        .collect()
}

/// True when some edge reaches itself, by transitive closure of the
/// reference relation.
pub fn oracle_has_cycle(g: &Hypergraph) -> bool {
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let index: BTreeMap<EdgeId, usize> = ids.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let n = ids.len();
    let mut reach = vec![vec![false; n]; n];
    for e in g.edges() {
        for c in e.payload.referenced_edges() {
            reach[index[&e.id]][index[&c]] = true;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                let via = reach[k].clone();
                for (j, r) in via.into_iter().enumerate() {
                    reach[i][j] |= r;
                }
            }
        }
    }
    (0..n).any(|i| reach[i][i])
}

pub fn order_multiset(g: &Hypergraph) -> Vec<usize> {
    let mut v: Vec<usize> = g.edges().map(|e| e.order()).collect();
    v.sort_unstable();
    v
}

pub fn matrix_rows(m: &hypernest_core::IncidenceMatrix) -> Vec<Vec<i64>> {
    (0..m.n_rows()).map(|r| m.row(r).to_vec()).collect()
}

/// Adds labels with quotes and backslashes, weights and features to a copy
/// of `g` so that round trips exercise every field.
pub fn decorate(g: &Hypergraph, seed: u64) -> Hypergraph {
    use hypernest_core::{Hyperedge, Node};
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels = [
        "",
        "plain",
        "with \"quotes\"",
        "back\\slash",
        "tab\there",
        "ünï",
    ];
    let nodes: Vec<Node> = g
        .nodes()
        .map(|n| Node {
            id: n.id,
            label: labels.choose(&mut rng).unwrap().to_string(),
            features: vec![rng.gen_range(-4.0..4.0), f64::from(rng.gen_range(0..3))],
        })
        .collect();
    let edges: Vec<Hyperedge> = g
        .edges()
        .map(|e| Hyperedge {
            id: e.id,
            payload: e.payload.clone(),
            label: labels.choose(&mut rng).unwrap().to_string(),
            features: vec![rng.gen_range(-1.0..1.0)],
            weight: rng.gen_bool(0.5).then(|| rng.gen_range(0.0..10.0)),
        })
        .collect();
    Hypergraph::from_parts(2, 1, nodes, edges, Some(g.next_edge_id().index())).unwrap()
}

/// Structural check of DOT output: header, balanced braces outside quoted
/// strings, terminated statements, and every edge endpoint declared.
pub fn check_dot(dot: &str) -> Result<(), String> {
    let mut lines = dot.lines();
    if lines.next() != Some("digraph hypergraph {") {
        return Err("missing digraph header".into());
    }
    let mut depth = 1i32;
    let mut declared = BTreeSet::new();
    let mut endpoints = Vec::new();
    for (i, raw) in lines.enumerate() {
        let line = raw.trim();
        let bare =
            strip_quoted(line).ok_or_else(|| format!("line {}: unterminated string", i + 2))?;
        for c in bare.chars() {
            match c {
                '{' => depth += 1,
                '}' => depth -= 1,
                _ => {}
            }
        }
        if depth < 0 {
            return Err(format!("line {}: unbalanced braces", i + 2));
        }
        if line.is_empty() || line.ends_with('{') || line == "}" {
            continue;
        }
        if !line.ends_with(';') {
            return Err(format!("line {}: statement without ';': {line}", i + 2));
        }
        let head = bare
            .split('[')
            .next()
            .unwrap()
            .trim()
            .trim_end_matches(';')
            .trim();
        if let Some((a, b)) = head.split_once("->") {
            endpoints.push((i + 2, a.trim().to_string(), b.trim().to_string()));
        } else if !head.contains('=') && !["node", "edge", "graph"].contains(&head) {
            declared.insert(head.to_string());
        }
    }
    if depth != 0 {
        return Err(format!("unbalanced braces, depth {depth} at end"));
    }
    for (line, a, b) in endpoints {
        for x in [a, b] {
            if !declared.contains(&x) {
                return Err(format!("line {line}: undeclared endpoint {x}"));
            }
        }
    }
    Ok(())
}

/// The line with quoted strings removed, or `None` if a string is left open.
fn strip_quoted(line: &str) -> Option<String> {
    let mut out = String::new();
    let mut chars = line.chars();
    while let Some(c) = chars.next() {
        if c != '"' {
            out.push(c);
            continue;
        }
        loop {
            match chars.next()? {
                '\\' => {
                    chars.next()?;
                }
                '"' => break,
                _ => {}
            }
        }
        out.push_str("\"\"");
    }
    Some(out)
}
