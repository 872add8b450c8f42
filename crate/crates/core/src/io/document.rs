use serde::{Deserialize, Serialize};

use super::IngestError;
use crate::complex::CellComplex;

pub const SCHEMA_VERSION: &str = "1";

/// One cell of a [`ComplexDocument`]: its faces as `[index, sign]` pairs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentCell {
    pub boundary: Vec<(i64, i64)>,
}

/// The JSON complex format.
///
/// `cells[p]` lists the `p`-cells, vertices included (with empty
/// boundaries), so `cells.len() == dimension + 1`. Fields are declared in
/// key order, which makes the serialization canonical.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub cells: Vec<Vec<DocumentCell>>,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub schema_version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<f64>>>,
}

impl ComplexDocument {
    /// Weights are written only when some cell differs from `1.0`.
    pub fn from_complex(complex: &CellComplex, name: Option<String>) -> Self {
        let mut cells = vec![vec![
            DocumentCell {
                boundary: Vec::new()
            };
            complex.count(0)
        ]];
        for layer in complex.boundary_lists() {
            cells.push(
                layer
                    .into_iter()
                    .map(|faces| DocumentCell {
                        boundary: faces.into_iter().map(|(f, s)| (f as i64, s)).collect(),
                    })
                    .collect(),
            );
        }
        let unit = complex.weights().iter().flatten().all(|&w| w == 1.0);
        Self {
            cells,
            dimension: complex.dim(),
            name,
            schema_version: SCHEMA_VERSION.to_owned(),
            weights: (!unit).then(|| complex.weights().to_vec()),
        }
    }

    pub fn to_complex(&self) -> Result<CellComplex, IngestError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(IngestError::Schema(format!(
                "unsupported schema_version `{}` (expected `{SCHEMA_VERSION}`)",
                self.schema_version
            )));
        }
        if self.cells.len() != self.dimension + 1 {
            return Err(IngestError::Schema(format!(
                "dimension is {} but cells has {} layers",
                self.dimension,
                self.cells.len()
            )));
        }
        if self.cells[0].iter().any(|c| !c.boundary.is_empty()) {
            return Err(IngestError::Schema(
                "vertices must have empty boundaries".to_owned(),
            ));
        }
        let mut boundaries = Vec::with_capacity(self.dimension);
        for layer in &self.cells[1..] {
            let mut cells = Vec::with_capacity(layer.len());
            for cell in layer {
                let mut faces = Vec::with_capacity(cell.boundary.len());
                for &(face, sign) in &cell.boundary {
                    let face = usize::try_from(face)
                        .map_err(|_| IngestError::Schema(format!("negative face index {face}")))?;
                    faces.push((face, sign));
                }
                cells.push(faces);
            }
            boundaries.push(cells);
        }
        let complex =
            CellComplex::from_boundaries(self.cells[0].len(), boundaries, self.weights.clone())?;
        if complex.dim() != self.dimension {
            return Err(IngestError::Schema(format!(
                "dimension is {} but the top non-empty layer is {}",
                self.dimension,
                complex.dim()
            )));
        }
        Ok(complex)
    }
}

/// Parses and validates a JSON complex document.
pub fn parse_complex_json(text: &str) -> Result<CellComplex, IngestError> {
    let doc: ComplexDocument =
        serde_json::from_str(text).map_err(|e| IngestError::from_json(&e))?;
    doc.to_complex()
}

/// Pretty-printed JSON with keys in sorted order and shortest round-trip
/// floats.
pub fn to_canonical_json(doc: &ComplexDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ComplexError;
    use crate::generators;

    const EDGE: &str = r#"{"schema_version": "1", "dimension": 1,
        "cells": [[{"boundary": []}, {"boundary": []}], [{"boundary": [[0, -1], [1, 1]]}]]}"#;

    #[test]
    fn single_edge_document() {
        let c = parse_complex_json(EDGE).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn bad_sign_is_a_validation_error() {
        let text = EDGE.replace("[1, 1]", "[1, 2]");
        assert!(matches!(
            parse_complex_json(&text),
            Err(IngestError::Validation(ComplexError::BadSign {
                sign: 2,
                ..
            }))
        ));
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = parse_complex_json("{\n  \"cells\": [,]\n}").unwrap_err();
        assert!(matches!(err, IngestError::Parse { line: 2, .. }));
        assert!(matches!(
            parse_complex_json(&EDGE.replace("\"1\"", "\"2\"")),
            Err(IngestError::Schema(_))
        ));
        assert!(matches!(
            parse_complex_json(&EDGE.replace("\"dimension\": 1", "\"dimension\": 2")),
            Err(IngestError::Schema(_))
        ));
    }

    #[test]
    fn canonical_round_trip() {
        let mut rng = crate::random::seeded(1);
        for c in [
            generators::cube(),
            crate::random::reweighted(&generators::cycle(4).unwrap(), &mut rng),
        ] {
            let doc = ComplexDocument::from_complex(&c, Some("x".into()));
            let text = to_canonical_json(&doc);
            let parsed: ComplexDocument = serde_json::from_str(&text).unwrap();
            assert_eq!(parsed, doc);
            assert_eq!(to_canonical_json(&parsed), text);
            let back = parsed.to_complex().unwrap();
            assert_eq!(back.boundary_lists(), c.boundary_lists());
            assert_eq!(back.weights(), c.weights());
        }
        let text = to_canonical_json(&ComplexDocument::from_complex(
            &generators::path(2).unwrap(),
            None,
        ));
        let keys: Vec<usize> = ["\"cells\"", "\"dimension\"", "\"schema_version\""]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}
