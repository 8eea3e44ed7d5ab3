//! JSON input formats for fans and divisor classes. All numeric input is
//! 64-bit integer; internal arithmetic is arbitrary precision. Unknown
//! fields are rejected so typos fail loudly.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::divisor::{DivisorClass, DivisorError};
use crate::fan::{realize_profile_i64, Fan, FanError, LatticeVector};

/// Errors raised while reading input files.
#[derive(Debug, Error)]
pub enum IoError {
    /// Filesystem failure.
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    /// Malformed JSON or wrong field types.
    #[error("parse: {0}")]
    Parse(#[from] serde_json::Error),
    /// Structurally valid JSON that violates the input contract.
    #[error("{0}")]
    Invalid(String),
    /// The rays or profile do not describe a smooth complete surface.
    #[error(transparent)]
    Fan(#[from] FanError),
    /// The divisor data does not fit the fan.
    #[error(transparent)]
    Divisor(#[from] DivisorError),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FanFile {
    rays: Vec<[i64; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    profile: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorFile {
    coefficients: Option<Vec<i64>>,
    degrees: Option<Vec<i64>>,
}

/// How a divisor class was specified in its input file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivisorForm {
    /// By per-ray coefficients.
    Coefficients,
    /// By per-ray degrees.
    Degrees,
}

/// Parses a fan from JSON holding either `{"rays": [[x, y], ...]}`
/// (counterclockwise primitive generators) or `{"profile": [...]}`
/// (self-intersection numbers, realized into rays).
pub fn parse_fan(text: &str) -> Result<Fan, IoError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let object = value
        .as_object()
        .ok_or_else(|| IoError::Invalid("fan input must be a JSON object".into()))?;
    if object.contains_key("rays") {
        let file: FanFile = serde_json::from_value(value)?;
        let rays = file
            .rays
            .into_iter()
            .map(|[x, y]| LatticeVector::new(x, y))
            .collect();
        Ok(Fan::new(rays)?)
    } else if object.contains_key("profile") {
        let file: ProfileFile = serde_json::from_value(value)?;
        Ok(realize_profile_i64(&file.profile)?)
    } else {
        Err(IoError::Invalid(
            "fan input needs a \"rays\" or \"profile\" field".into(),
        ))
    }
}

/// Reads and parses a fan file.
pub fn read_fan(path: impl AsRef<Path>) -> Result<Fan, IoError> {
    parse_fan(&std::fs::read_to_string(path)?)
}

/// Parses a divisor class on the given fan from JSON holding exactly one
/// of `{"coefficients": [...]}` or `{"degrees": [...]}`.
pub fn parse_divisor(text: &str, fan: &Fan) -> Result<(DivisorClass, DivisorForm), IoError> {
    let file: DivisorFile = serde_json::from_str(text)?;
    match (file.coefficients, file.degrees) {
        (Some(coefficients), None) => Ok((
            DivisorClass::from_i64(fan, &coefficients)?,
            DivisorForm::Coefficients,
        )),
        (None, Some(degrees)) => {
            let degrees: Vec<_> = degrees.into_iter().map(Into::into).collect();
            Ok((DivisorClass::from_degrees(fan, &degrees)?, DivisorForm::Degrees))
        }
        _ => Err(IoError::Invalid(
            "divisor input needs exactly one of \"coefficients\" or \"degrees\"".into(),
        )),
    }
}

/// Reads and parses a divisor file against a fan.
pub fn read_divisor(
    path: impl AsRef<Path>,
    fan: &Fan,
) -> Result<(DivisorClass, DivisorForm), IoError> {
    parse_divisor(&std::fs::read_to_string(path)?, fan)
}
