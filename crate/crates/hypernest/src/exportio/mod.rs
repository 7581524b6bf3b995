//! Serialization and export: canonical JSON, DOT and CSV.

mod canonical;
mod dot;

pub use canonical::{from_canonical, to_canonical, CanonicalDocument, EdgeDoc, NodeDoc, SCHEMA};
pub use dot::to_dot;

use hypernest_core::{HypergraphError, IncidenceMatrix};

#[derive(Debug, thiserror::Error)]
pub enum ExportError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error(transparent)]
    Hypergraph(#[from] HypergraphError),
}

/// Matrix as CSV: a header of column labels led by `node` or `species`, one
/// line per row, LF line endings.
pub fn to_csv(matrix: &IncidenceMatrix) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let mut header = vec![matrix.row_kind.as_str().to_string()];
    header.extend(matrix.cols.iter().cloned());
    w.write_record(&header).expect("writing to memory");
    for (r, label) in matrix.rows.iter().enumerate() {
        let mut record = vec![label.clone()];
        record.extend(matrix.row(r).iter().map(|x| x.to_string()));
        w.write_record(&record).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 input")
}
