use std::collections::BTreeMap;

use serde_json::{Map, Value};

use super::IngestError;
use crate::calculus::{CalculusError, CellFunction, OneForm};
use crate::complex::{CellComplex, CellId};

fn parse_object(text: &str) -> Result<Map<String, Value>, IngestError> {
    let value: Value = serde_json::from_str(text).map_err(|e| IngestError::from_json(&e))?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(IngestError::Schema("expected a JSON object".to_owned())),
    }
}

fn number(key: &str, value: &Value) -> Result<f64, IngestError> {
    value
        .as_f64()
        .ok_or_else(|| IngestError::Schema(format!("value for `{key}` is not a number")))
}

fn cell(key: &str) -> Result<CellId, IngestError> {
    key.parse().map_err(|e| IngestError::Schema(format!("{e}")))
}

fn cell_map(text: &str) -> Result<BTreeMap<CellId, f64>, IngestError> {
    parse_object(text)?
        .iter()
        .map(|(k, v)| Ok((cell(k)?, number(k, v)?)))
        .collect()
}

/// Reads a function given as `{"d<dim>:<index>": value, …}`; every cell
/// needs a value.
pub fn parse_function_json(complex: &CellComplex, text: &str) -> Result<CellFunction, IngestError> {
    Ok(CellFunction::from_map(complex, &cell_map(text)?)?)
}

/// Reads per-cell weights in the same format as functions.
pub fn parse_weights_json(complex: &CellComplex, text: &str) -> Result<Vec<Vec<f64>>, IngestError> {
    Ok(parse_function_json(complex, text)?.layers().to_vec())
}

/// Reads a 1-form given as `{"d1:3>d0:2": value, …}`; omitted vectors are 0.
pub fn parse_one_form_json(complex: &CellComplex, text: &str) -> Result<OneForm, IngestError> {
    let mut entries = Vec::new();
    for (k, v) in parse_object(text)? {
        let (tau, sigma) = k.split_once('>').ok_or_else(|| {
            IngestError::Schema(format!("malformed vector key `{k}` (expected `tau>sigma`)"))
        })?;
        entries.push(((cell(tau)?, cell(sigma)?), number(&k, &v)?));
    }
    OneForm::from_entries(complex, entries).map_err(|e: CalculusError| e.into())
}

fn to_number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

/// Values keyed by cell id, keys sorted.
pub fn function_to_json(f: &CellFunction) -> Value {
    Value::Object(
        f.iter()
            .map(|(c, v)| (c.to_string(), to_number(v)))
            .collect(),
    )
}

pub fn weights_to_json(complex: &CellComplex) -> Value {
    let f = CellFunction::from_fn(complex, |c| complex.weight(c));
    function_to_json(&f)
}

/// Values keyed by incidence vector, keys sorted.
pub fn one_form_to_json(complex: &CellComplex, omega: &OneForm) -> Value {
    Value::Object(
        complex
            .vectors()
            .iter()
            .zip(omega.coefficients())
            .map(|(v, &c)| (v.to_string(), to_number(c)))
            .collect(),
    )
}
