//! Incidence and stoichiometric matrices.
//!
//! All matrices are dense, row-major, with integer entries. Hypergraph
//! matrices use ascending node ids for rows and ascending edge ids for
//! columns; network matrices use species order for rows and complex or
//! reaction order for columns.
//!
//! Nesting and directed edges have no node set of their own. Their columns
//! use the transitive leaf node set (see [`Hypergraph::leaf_node_set`]).

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::crn::{ComplexId, Crn, SpeciesId};
use crate::hypercore::{EdgeId, EdgePayload, Hypergraph};

/// What the rows of a matrix stand for. Used as the leading CSV cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowKind {
    Node,
    Species,
}

impl RowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RowKind::Node => "node",
            RowKind::Species => "species",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IncidenceMatrix {
    pub row_kind: RowKind,
    pub rows: Vec<String>,
    pub cols: Vec<String>,
    entries: Vec<i64>,
}

impl IncidenceMatrix {
    pub fn zeros(row_kind: RowKind, rows: Vec<String>, cols: Vec<String>) -> Self {
        let entries = vec![0; rows.len() * cols.len()];
        IncidenceMatrix {
            row_kind,
            rows,
            cols,
            entries,
        }
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.cols.len() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        let n = self.cols.len();
        self.entries[row * n + col] = value;
    }

    pub fn row(&self, row: usize) -> &[i64] {
        let n = self.cols.len();
        &self.entries[row * n..(row + 1) * n]
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.rows.len()).map(|r| self.get(r, col)).collect()
    }

    pub fn column_sums(&self) -> Vec<i64> {
        (0..self.cols.len())
            .map(|c| self.column(c).iter().sum())
            .collect()
    }

    pub fn row_sums(&self) -> Vec<i64> {
        (0..self.rows.len())
            .map(|r| self.row(r).iter().sum())
            .collect()
    }

    /// Columns as vectors, the "row of column vectors" layout.
    pub fn columns(&self) -> Vec<Vec<i64>> {
        (0..self.cols.len()).map(|c| self.column(c)).collect()
    }

    /// Entrywise `self - other`; labels are taken from `self`.
    ///
    /// # Panics
    /// If the shapes differ.
    pub fn difference(&self, other: &IncidenceMatrix) -> IncidenceMatrix {
        assert_eq!(
            (self.n_rows(), self.n_cols()),
            (other.n_rows(), other.n_cols()),
            "shape mismatch"
        );
        IncidenceMatrix {
            row_kind: self.row_kind,
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Source and target halves of a directed incidence matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplitIncidence {
    pub source: IncidenceMatrix,
    pub target: IncidenceMatrix,
}

fn node_rows(g: &Hypergraph) -> Vec<String> {
    g.node_ids().map(|v| v.to_string()).collect()
}

/// `H(v, e) = 1` iff `v` is in the leaf node set of `e`. One column per edge.
pub fn incidence(g: &Hypergraph) -> IncidenceMatrix {
    let leaves = g.leaf_node_sets();
    let cols: Vec<EdgeId> = g.edge_ids().collect();
    let mut h = IncidenceMatrix::zeros(
        RowKind::Node,
        node_rows(g),
        cols.iter().map(|e| e.to_string()).collect(),
    );
    for (c, e) in cols.iter().enumerate() {
        for v in &leaves[e] {
            h.set(v.index(), c, 1);
        }
    }
    h
}

/// `H_s` and `H_t` over the directed edges only.
pub fn directed_incidence_split(g: &Hypergraph) -> SplitIncidence {
    let leaves = g.leaf_node_sets();
    let directed: Vec<(EdgeId, EdgeId, EdgeId)> = g
        .edges()
        .filter_map(|e| match e.payload {
            EdgePayload::Directed { source, target } => Some((e.id, source, target)),
            _ => None,
        })
        .collect();
    let cols: Vec<String> = directed.iter().map(|d| d.0.to_string()).collect();
    let mut source = IncidenceMatrix::zeros(RowKind::Node, node_rows(g), cols.clone());
    let mut target = IncidenceMatrix::zeros(RowKind::Node, node_rows(g), cols);
    for (c, (_, s, t)) in directed.iter().enumerate() {
        for v in &leaves[s] {
            source.set(v.index(), c, 1);
        }
        for v in &leaves[t] {
            target.set(v.index(), c, 1);
        }
    }
    SplitIncidence { source, target }
}

/// Signed directed incidence, `H_t - H_s`: -1 for source-only nodes, 1 for
/// target-only nodes and 0 for nodes on both sides.
pub fn directed_incidence_signed(g: &Hypergraph) -> IncidenceMatrix {
    let split = directed_incidence_split(g);
    split.target.difference(&split.source)
}

fn species_rows(crn: &Crn) -> Vec<String> {
    crn.species().to_vec()
}

/// Species by complexes; entry is the stoichiometric coefficient.
pub fn stoichiometric_complexes(crn: &Crn) -> IncidenceMatrix {
    let cols = (0..crn.complexes().len())
        .map(|i| crn.complex_label(ComplexId::new(i)))
        .collect();
    let mut s = IncidenceMatrix::zeros(RowKind::Species, species_rows(crn), cols);
    for (c, complex) in crn.complexes().iter().enumerate() {
        for (sp, coef) in complex.terms() {
            s.set(sp.index(), c, i64::from(coef));
        }
    }
    s
}

/// Species by reactions; entry is product coefficient minus reactant
/// coefficient.
pub fn stoichiometric_reactions_signed(crn: &Crn) -> IncidenceMatrix {
    let cols = crn.reactions().iter().map(|r| r.id.clone()).collect();
    let mut s = IncidenceMatrix::zeros(RowKind::Species, species_rows(crn), cols);
    for (c, r) in crn.reactions().iter().enumerate() {
        let reactant = crn.complex(r.reactant);
        let product = crn.complex(r.product);
        for sp in 0..crn.species().len() {
            let sp = SpeciesId::new(sp);
            let net = i64::from(product.coefficient(sp)) - i64::from(reactant.coefficient(sp));
            s.set(sp.index(), c, net);
        }
    }
    s
}
