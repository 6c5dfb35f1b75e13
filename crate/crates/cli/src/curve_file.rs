//! The curve file schema:
//!
//! ```json
//! { "params": [0.0, 1.0], "points": [[0.0, 0.0], [1.0, 1.0]], "derivs": [[1.0, 1.0], [1.0, 1.0]] }
//! ```
//!
//! `derivs` is optional. Points-only curves may also be given as CSV, one
//! row per sample: `t, x1, …, xn`.

use std::path::Path;

use lipgeo::{Polyline, SampledC1Curve, Vector};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub params: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub derivs: Option<Vec<Vec<f64>>>,
}

impl CurveFile {
    pub fn from_polyline(c: &Polyline) -> Self {
        Self {
            params: c.params().to_vec(),
            points: c.points().iter().map(|p| p.as_slice().to_vec()).collect(),
            derivs: None,
        }
    }

    pub fn from_c1(c: &SampledC1Curve) -> Self {
        let mut file = Self::from_polyline(c.base());
        file.derivs = Some(c.derivs().iter().map(|d| d.as_slice().to_vec()).collect());
        file
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(format!("curve file: {e}")))
    }

    /// CSV rows `t, x1, …, xn`; blank lines and lines starting with `#` are
    /// skipped.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut params = Vec::new();
        let mut points = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| CliError::Parse(format!("csv: {e}")))?;
            let line = record.position().map_or(row + 1, |p| p.line() as usize);
            let values = record
                .iter()
                .enumerate()
                .map(|(col, field)| {
                    field.parse::<f64>().map_err(|_| {
                        CliError::Parse(format!(
                            "csv line {line}, field {}: not a number: {field:?}",
                            col + 1
                        ))
                    })
                })
                .collect::<Result<Vec<f64>>>()?;
            if values.len() < 2 {
                return Err(CliError::Parse(format!(
                    "csv line {line}: expected a parameter and at least one coordinate"
                )));
            }
            params.push(values[0]);
            points.push(values[1..].to_vec());
        }
        Ok(Self {
            params,
            points,
            derivs: None,
        })
    }

    /// Reads JSON, or CSV when the path ends in `.csv`. `-` is stdin.
    pub fn read(path: &str) -> Result<Self> {
        let text = if path == "-" {
            std::io::read_to_string(std::io::stdin()).map_err(|source| CliError::Io {
                path: path.into(),
                source,
            })?
        } else {
            std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.into(),
                source,
            })?
        };
        let is_csv = Path::new(path)
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            Self::from_csv(&text)
        } else {
            Self::from_json(&text)
        }
    }

    pub fn to_polyline(&self) -> Result<Polyline> {
        let points = vectors("points", &self.points)?;
        Polyline::new(self.params.clone(), points).map_err(|e| match e {
            lipgeo::Error::DimensionMismatch { .. } => CliError::Mismatch(format!(
                "field `points`: samples have differing dimensions ({e})"
            )),
            lipgeo::Error::CurveLengthMismatch { .. } => {
                CliError::Mismatch(format!("fields `params` and `points`: {e}"))
            }
            other => CliError::Parse(format!("curve file: {other}")),
        })
    }

    pub fn to_c1(&self) -> Result<SampledC1Curve> {
        let base = self.to_polyline()?;
        let derivs = self
            .derivs
            .as_ref()
            .ok_or_else(|| CliError::Parse("field `derivs` is required for this command".into()))?;
        let derivs = vectors("derivs", derivs)?;
        SampledC1Curve::new(base, derivs).map_err(|e| match e {
            lipgeo::Error::DimensionMismatch { .. } | lipgeo::Error::CurveLengthMismatch { .. } => {
                CliError::Mismatch(format!("field `derivs`: {e}"))
            }
            other => CliError::Parse(format!("field `derivs`: {other}")),
        })
    }
}

fn vectors(field: &str, rows: &[Vec<f64>]) -> Result<Vec<Vector>> {
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            Vector::new(row.clone())
                .map_err(|e| CliError::Parse(format!("field `{field}`, entry {i}: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn json_with_and_without_derivs() {
        let f = CurveFile::from_json(r#"{"params":[0,1],"points":[[0,0],[1,1]]}"#).unwrap();
        assert_eq!(f.to_polyline().unwrap().len(), 2);
        assert!(f.to_c1().is_err());
        let f = CurveFile::from_json(r#"{"params":[0,1],"points":[[0],[2]],"derivs":[[2],[2]]}"#)
            .unwrap();
        assert_eq!(f.to_c1().unwrap().derivs().len(), 2);
    }

    #[test]
    fn diagnostics_name_the_problem() {
        let err =
            CurveFile::from_json("{\"params\": [0, 1],\n \"points\": [[0], oops]}").unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = CurveFile::from_json(r#"{"params":[0,1],"points":[[0],[1,2]]}"#)
            .unwrap()
            .to_polyline()
            .unwrap_err();
        assert!(err.to_string().contains("points"), "{err}");
        assert_eq!(err.exit_code(), 3);
        let err = CurveFile::from_json(r#"{"params":[1,0],"points":[[0],[1]]}"#)
            .unwrap()
            .to_polyline()
            .unwrap_err();
        assert!(err.to_string().contains("strictly increasing"), "{err}");
        assert!(CurveFile::from_json(r#"{"params":[0],"points":[[0]],"extra":1}"#).is_err());
    }

    #[test]
    fn csv_rows() {
        let f = CurveFile::from_csv("# t, x, y\n0, 0, 0\n0.5, 1, 0\n\n1.0, 1, 1\n").unwrap();
        assert_eq!(f.params, vec![0.0, 0.5, 1.0]);
        assert_eq!(f.points[2], vec![1.0, 1.0]);
        let err = CurveFile::from_csv("0, 0\n1, x\n").unwrap_err();
        assert!(err.to_string().contains("line 2, field 2"), "{err}");
        assert!(CurveFile::from_csv("0\n").is_err());
    }

    proptest! {
        #[test]
        fn prop_json_round_trip(
            gaps in prop::collection::vec(1e-6..10.0f64, 1..20),
            start in -1e6..1e6f64,
            seed in prop::collection::vec(-1e9..1e9f64, 60),
        ) {
            let mut t = start;
            let params: Vec<f64> = gaps.iter().map(|g| { t += g; t }).collect();
            let points: Vec<Vec<f64>> = (0..params.len()).map(|i| vec![seed[i % 60], seed[(i * 7 + 3) % 60] / 3.0]).collect();
            let c = Polyline::from_coords(params, points).unwrap();
            let text = serde_json::to_string(&CurveFile::from_polyline(&c)).unwrap();
            let back = CurveFile::from_json(&text).unwrap().to_polyline().unwrap();
            prop_assert_eq!(back, c);
        }
    }
}
