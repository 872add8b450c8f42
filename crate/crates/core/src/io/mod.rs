//! Reading and writing complexes and per-cell data.
//!
//! Three complex formats are supported: the versioned JSON document
//! ([`ComplexDocument`]), plain-text edge lists for graphs, and OFF meshes for
//! polygonal surfaces. Functions, weights and 1-forms travel as JSON objects
//! keyed by cell (`"d1:4"`) or incidence vector (`"d1:4>d0:2"`).

mod document;
mod edge_list;
mod off;
mod values;

use thiserror::Error;

use crate::calculus::CalculusError;
use crate::complex::ComplexError;

pub use document::{
    parse_complex_json, to_canonical_json, ComplexDocument, DocumentCell, SCHEMA_VERSION,
};
pub use edge_list::{parse_edge_list, EdgeListImport};
pub use off::{parse_off, OffImport};
pub use values::{
    function_to_json, one_form_to_json, parse_function_json, parse_one_form_json,
    parse_weights_json, weights_to_json,
};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum IngestError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Validation(#[from] ComplexError),
    #[error("line {line}: self-loop at vertex `{vertex}`")]
    SelfLoop { line: usize, vertex: String },
    #[error("line {line}: duplicate edge `{a}`-`{b}`")]
    DuplicateEdge { line: usize, a: String, b: String },
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Values(#[from] CalculusError),
}

impl IngestError {
    fn from_json(err: &serde_json::Error) -> Self {
        IngestError::Parse {
            line: err.line(),
            column: err.column(),
            message: err.to_string(),
        }
    }
}
