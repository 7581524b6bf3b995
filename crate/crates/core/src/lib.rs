//! Unified hypergraph model.
//!
//! A hyperedge is one of three things: a *simple* hyperedge over a set of
//! nodes, a *nesting* hyperedge over a set of other hyperedges, or a
//! *directed* hyperedge, an ordered (source, target) pair of hyperedges.
//! The same construct covers undirected, nested and directed hypergraphs,
//! which is what the chemical builders in [`chem`] and [`crn`] rely on.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, DOT output
//! and the command-line front end live in the `hypernest` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod chem;
pub mod crn;
pub mod hypercore;
pub mod matrices;

pub use hypercore::{
    EdgeId, EdgePayload, Hyperedge, Hypergraph, HypergraphError, HypergraphKind, Node, NodeId,
};
pub use matrices::{IncidenceMatrix, RowKind, SplitIncidence};
