//! Input documents: JSON schema, exact parsing and canonical serialization.
//!
//! Rationals travel as strings so that exactness survives interchange.
//! Brackets are `[i, j, k, "c"]` with 1-based indices and `i < j`, meaning
//! `[X_i, X_j]` has coefficient `c` on `X_k`. The J matrix is row-major with
//! column k holding the coordinates of `J(X_k)`.

use crate::acs::{AcsError, AlmostComplexStructure};
use crate::harmonic::{HarmonicError, HermitianMetric};
use crate::lie::{LieAlgebraPresentation, LieError};
use crate::linalg::ExactMatrix;
use crate::scalar::{rational_to_string, GaussianRational, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("JSON parse error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("j_matrix of {name:?}: {source}")]
    BadJ { name: String, source: AcsError },
    #[error("metric: {source}")]
    BadMetric {
        #[from]
        source: HarmonicError,
    },
}

fn field_err(field: &str, message: impl Into<String>) -> InputError {
    InputError::Field {
        field: field.to_string(),
        message: message.into(),
    }
}

const fn is_false(b: &bool) -> bool {
    !*b
}

/// Raw (string-coefficient) form of an analysis input; also the canonical
/// echo embedded in reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawAnalysisInput {
    pub name: String,
    pub dimension: usize,
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub j_matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<RawMetric>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub allow_non_nilpotent: bool,
    #[serde(default, skip_serializing_if = "is_false")]
    pub include_harmonic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMetric {
    /// 4x4 gram matrix in the frame order (phi1, phi2, phibar1, phibar2),
    /// Gaussian-rational strings.
    pub gram: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawScanSample {
    pub tag: String,
    pub j_matrix: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawScanInput {
    pub name: String,
    pub dimension: usize,
    pub brackets: Vec<(usize, usize, usize, String)>,
    pub samples: Vec<RawScanSample>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub allow_non_nilpotent: bool,
}

/// Typed analysis input with exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisInput {
    pub name: String,
    pub dimension: usize,
    pub brackets: Vec<(usize, usize, usize, Rational)>,
    pub j: ExactMatrix,
    pub metric: Option<HermitianMetric>,
    pub allow_non_nilpotent: bool,
    pub include_harmonic: bool,
}

/// Typed scan input: one presentation, many structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanInput {
    pub name: String,
    pub dimension: usize,
    pub brackets: Vec<(usize, usize, usize, Rational)>,
    pub samples: Vec<(String, ExactMatrix)>,
    pub allow_non_nilpotent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputDocument {
    Analysis(AnalysisInput),
    Scan(ScanInput),
}

fn parse_rational_field(field: &str, s: &str) -> Result<Rational, InputError> {
    crate::scalar::parse_rational(s).map_err(|e| field_err(field, e.to_string()))
}

fn parse_matrix(
    field: &str,
    rows: &[Vec<String>],
    real_only: bool,
) -> Result<ExactMatrix, InputError> {
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(field_err(field, "expected a 4x4 matrix"));
    }
    let mut out = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut out_row = Vec::new();
        for (c, entry) in row.iter().enumerate() {
            let here = format!("{field}[{r}][{c}]");
            let v: GaussianRational = if real_only {
                GaussianRational::from_rational(parse_rational_field(&here, entry)?)
            } else {
                entry
                    .parse()
                    .map_err(|e: crate::scalar::ScalarParseError| field_err(&here, e.to_string()))?
            };
            out_row.push(v);
        }
        out.push(out_row);
    }
    Ok(ExactMatrix::from_rows(out))
}

fn matrix_to_strings(m: &ExactMatrix, real_only: bool) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(|v| {
                    if real_only {
                        rational_to_string(&v.re)
                    } else {
                        v.to_string()
                    }
                })
                .collect()
        })
        .collect()
}

fn parse_brackets(
    raw: &[(usize, usize, usize, String)],
) -> Result<Vec<(usize, usize, usize, Rational)>, InputError> {
    raw.iter()
        .enumerate()
        .map(|(idx, (i, j, k, c))| {
            let coeff = parse_rational_field(&format!("brackets[{idx}]"), c)?;
            Ok((*i, *j, *k, coeff))
        })
        .collect()
}

fn brackets_to_raw(
    brackets: &[(usize, usize, usize, Rational)],
) -> Vec<(usize, usize, usize, String)> {
    brackets
        .iter()
        .map(|(i, j, k, c)| (*i, *j, *k, rational_to_string(c)))
        .collect()
}

impl AnalysisInput {
    pub fn from_raw(raw: &RawAnalysisInput) -> Result<Self, InputError> {
        let brackets = parse_brackets(&raw.brackets)?;
        // Structural validation of indices happens immediately.
        let _ = LieAlgebraPresentation::new(&raw.name, raw.dimension, &brackets)?;
        let j = parse_matrix("j_matrix", &raw.j_matrix, true)?;
        let _ = AlmostComplexStructure::new(&raw.name, j.clone()).map_err(|source| {
            InputError::BadJ {
                name: raw.name.clone(),
                source,
            }
        })?;
        let metric = match &raw.metric {
            None => None,
            Some(m) => Some(HermitianMetric::new(parse_matrix(
                "metric.gram",
                &m.gram,
                false,
            )?)?),
        };
        Ok(AnalysisInput {
            name: raw.name.clone(),
            dimension: raw.dimension,
            brackets,
            j,
            metric,
            allow_non_nilpotent: raw.allow_non_nilpotent,
            include_harmonic: raw.include_harmonic,
        })
    }

    pub fn to_raw(&self) -> RawAnalysisInput {
        RawAnalysisInput {
            name: self.name.clone(),
            dimension: self.dimension,
            brackets: brackets_to_raw(&self.brackets),
            j_matrix: matrix_to_strings(&self.j, true),
            metric: self.metric.as_ref().map(|m| RawMetric {
                gram: matrix_to_strings(m.gram(), false),
            }),
            allow_non_nilpotent: self.allow_non_nilpotent,
            include_harmonic: self.include_harmonic,
        }
    }

    pub fn presentation(&self) -> Result<LieAlgebraPresentation, LieError> {
        LieAlgebraPresentation::new(&self.name, self.dimension, &self.brackets)
    }

    pub fn structure(&self) -> Result<AlmostComplexStructure, AcsError> {
        AlmostComplexStructure::new(&self.name, self.j.clone())
    }
}

impl ScanInput {
    pub fn from_raw(raw: &RawScanInput) -> Result<Self, InputError> {
        let brackets = parse_brackets(&raw.brackets)?;
        let _ = LieAlgebraPresentation::new(&raw.name, raw.dimension, &brackets)?;
        let mut samples = Vec::new();
        for (idx, s) in raw.samples.iter().enumerate() {
            let j = parse_matrix(&format!("samples[{idx}].j_matrix"), &s.j_matrix, true)?;
            let _ = AlmostComplexStructure::new(&s.tag, j.clone()).map_err(|source| {
                InputError::BadJ {
                    name: format!("{} sample {}", raw.name, s.tag),
                    source,
                }
            })?;
            samples.push((s.tag.clone(), j));
        }
        Ok(ScanInput {
            name: raw.name.clone(),
            dimension: raw.dimension,
            brackets,
            samples,
            allow_non_nilpotent: raw.allow_non_nilpotent,
        })
    }

    pub fn to_raw(&self) -> RawScanInput {
        RawScanInput {
            name: self.name.clone(),
            dimension: self.dimension,
            brackets: brackets_to_raw(&self.brackets),
            samples: self
                .samples
                .iter()
                .map(|(tag, j)| RawScanSample {
                    tag: tag.clone(),
                    j_matrix: matrix_to_strings(j, true),
                })
                .collect(),
            allow_non_nilpotent: self.allow_non_nilpotent,
        }
    }

    pub fn presentation(&self) -> Result<LieAlgebraPresentation, LieError> {
        LieAlgebraPresentation::new(&self.name, self.dimension, &self.brackets)
    }
}

/// Parse a JSON document, dispatching on the presence of `samples`.
pub fn parse_input(text: &str) -> Result<InputDocument, InputError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let from_json_err = |e: serde_json::Error| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    };
    if value.get("samples").is_some() {
        let raw: RawScanInput = serde_json::from_value(value).map_err(from_json_err)?;
        Ok(InputDocument::Scan(ScanInput::from_raw(&raw)?))
    } else {
        let raw: RawAnalysisInput = serde_json::from_value(value).map_err(from_json_err)?;
        Ok(InputDocument::Analysis(AnalysisInput::from_raw(&raw)?))
    }
}

/// Parse a standalone metric document `{"gram": [[...]]}`.
pub fn parse_metric(text: &str) -> Result<HermitianMetric, InputError> {
    let raw: RawMetric = serde_json::from_str(text).map_err(|e| InputError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(HermitianMetric::new(parse_matrix(
        "metric.gram",
        &raw.gram,
        false,
    )?)?)
}

/// Canonical serialization of an input document.
pub fn serialize_input(doc: &InputDocument) -> String {
    match doc {
        InputDocument::Analysis(a) => {
            serde_json::to_string_pretty(&a.to_raw()).expect("serializable")
        }
        InputDocument::Scan(s) => serde_json::to_string_pretty(&s.to_raw()).expect("serializable"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::integer;

    fn filiform_j1_json() -> String {
        r#"{
            "name": "filiform-j1",
            "dimension": 4,
            "brackets": [[1, 2, 3, "1"], [1, 3, 4, "1"]],
            "j_matrix": [
                ["0", "-1", "0", "0"],
                ["1", "0", "0", "0"],
                ["0", "0", "0", "-1"],
                ["0", "0", "1", "0"]
            ]
        }"#
        .to_string()
    }

    #[test]
    fn parses_analysis_input() {
        let doc = parse_input(&filiform_j1_json()).unwrap();
        let InputDocument::Analysis(a) = doc else {
            panic!("expected analysis input")
        };
        assert_eq!(a.name, "filiform-j1");
        assert_eq!(a.brackets.len(), 2);
        assert_eq!(a.brackets[0], (1, 2, 3, integer(1)));
        assert!(a.metric.is_none());
        assert!(!a.include_harmonic);
    }

    #[test]
    fn zero_denominator_is_a_parse_error() {
        let bad = filiform_j1_json().replace("\"-1\", \"0\", \"0\"", "\"1/0\", \"0\", \"0\"");
        let err = parse_input(&bad).unwrap_err();
        assert!(matches!(err, InputError::Field { .. }), "{err}");
    }

    #[test]
    fn non_complex_structure_is_rejected_by_name() {
        let bad = filiform_j1_json().replace("\"-1\"", "\"1\"");
        let err = parse_input(&bad).unwrap_err();
        match err {
            InputError::BadJ { name, source } => {
                assert_eq!(name, "filiform-j1");
                assert_eq!(source, AcsError::JNotComplexStructure);
            }
            other => panic!("expected BadJ, got {other}"),
        }
    }

    #[test]
    fn json_errors_carry_location() {
        let err = parse_input("{ not json").unwrap_err();
        assert!(matches!(err, InputError::Json { line: 1, .. }));
    }

    #[test]
    fn round_trip_analysis() {
        let doc = parse_input(&filiform_j1_json()).unwrap();
        let text = serialize_input(&doc);
        let doc2 = parse_input(&text).unwrap();
        assert_eq!(doc, doc2);
        // canonical form is a fixed point
        assert_eq!(text, serialize_input(&doc2));
    }

    #[test]
    fn parses_scan_input() {
        let json = r#"{
            "name": "family",
            "dimension": 4,
            "brackets": [[1, 2, 3, "1"], [1, 3, 4, "1"]],
            "samples": [
                {"tag": "t=0", "j_matrix": [
                    ["0", "-1", "0", "0"],
                    ["1", "0", "0", "0"],
                    ["0", "0", "0", "-1"],
                    ["0", "0", "1", "0"]
                ]}
            ]
        }"#;
        let doc = parse_input(json).unwrap();
        let InputDocument::Scan(s) = doc else {
            panic!("expected scan input")
        };
        assert_eq!(s.samples.len(), 1);
        assert_eq!(s.samples[0].0, "t=0");
        let text = serialize_input(&InputDocument::Scan(s.clone()));
        let doc2 = parse_input(&text).unwrap();
        assert_eq!(InputDocument::Scan(s), doc2);
    }

    #[test]
    fn metric_block_parses() {
        let json = r#"{
            "name": "torus",
            "dimension": 4,
            "brackets": [],
            "j_matrix": [
                ["0", "-1", "0", "0"],
                ["1", "0", "0", "0"],
                ["0", "0", "0", "-1"],
                ["0", "0", "1", "0"]
            ],
            "metric": {"gram": [
                ["2", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "2", "0"],
                ["0", "0", "0", "1"]
            ]},
            "include_harmonic": true
        }"#;
        let InputDocument::Analysis(a) = parse_input(json).unwrap() else {
            panic!()
        };
        assert!(a.metric.is_some());
        assert!(a.include_harmonic);
    }
}
