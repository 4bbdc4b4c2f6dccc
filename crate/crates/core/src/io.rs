//! The matrix file format: JSON with every scalar stored as a string in the scalar
//! grammar, so exact values survive a round trip.
//!
//! ```json
//! {
//!   "n": 2,
//!   "field": {"backend": "exact", "indeterminates": ["q"], "imaginary": false, "tolerance": 1e-9},
//!   "entries": [
//!     ["q", "0", "0", "0"],
//!     ...
//!   ],
//!   "mu": [["q^-1", "0"], ["0", "q"]],
//!   "alpha": "1",
//!   "beta": "1"
//! }
//! ```
//!
//! `entries` may also be a flat list of `n⁴` strings.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;
use thiserror::Error;

use crate::scalar::{parse_exact, Backend, FieldTag, RatFunc, Scalar, ScalarError, Tolerance};
use crate::tensor::{Mat, Tensor4};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {msg}")]
    Json {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
    #[error("{field}: expected {expected} entries, found {found}")]
    EntryCount {
        field: String,
        expected: usize,
        found: usize,
    },
    #[error("{location}: {source}")]
    Scalar {
        location: String,
        source: ScalarError,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    backend: Backend,
    #[serde(default)]
    indeterminates: Vec<String>,
    #[serde(default)]
    imaginary: bool,
    tolerance: Option<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    n: usize,
    field: RawField,
    entries: Value,
    mu: Option<Value>,
    alpha: Option<String>,
    beta: Option<String>,
}

/// A parsed matrix file. Scalars are kept as the text that was read.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixFile {
    pub n: usize,
    pub field: FieldTag,
    /// `n⁴` entries in row-major order.
    pub entries: Vec<String>,
    /// `n²` entries in row-major order.
    pub mu: Option<Vec<String>>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
}

fn flatten(field: &str, v: &Value, rows: usize, cols: usize) -> Result<Vec<String>, IoError> {
    let bad = |msg: String| IoError::Field {
        field: field.to_string(),
        msg,
    };
    let Value::Array(items) = v else {
        return Err(bad("expected an array".into()));
    };
    let strings = |items: &[Value], at: &str| -> Result<Vec<String>, IoError> {
        items
            .iter()
            .enumerate()
            .map(|(k, x)| match x {
                Value::String(s) => Ok(s.clone()),
                Value::Number(num) => Ok(num.to_string()),
                _ => Err(bad(format!("{at}[{k}] must be a string"))),
            })
            .collect()
    };
    let out = if items.iter().all(Value::is_array) && !items.is_empty() {
        if items.len() != rows {
            return Err(IoError::EntryCount {
                field: field.to_string(),
                expected: rows,
                found: items.len(),
            });
        }
        let mut out = Vec::with_capacity(rows * cols);
        for (r, row) in items.iter().enumerate() {
            let row = row.as_array().expect("checked");
            if row.len() != cols {
                return Err(IoError::EntryCount {
                    field: format!("{field}[{r}]"),
                    expected: cols,
                    found: row.len(),
                });
            }
            out.extend(strings(row, &format!("[{r}]"))?);
        }
        out
    } else {
        strings(items, "")?
    };
    if out.len() != rows * cols {
        return Err(IoError::EntryCount {
            field: field.to_string(),
            expected: rows * cols,
            found: out.len(),
        });
    }
    Ok(out)
}

impl MatrixFile {
    pub fn parse_str(text: &str) -> Result<Self, IoError> {
        let raw: RawFile = serde_json::from_str(text).map_err(|e| IoError::Json {
            line: e.line(),
            column: e.column(),
            msg: e.to_string(),
        })?;
        if raw.n == 0 {
            return Err(IoError::Field {
                field: "n".into(),
                msg: "must be positive".into(),
            });
        }
        let field = FieldTag {
            backend: raw.field.backend,
            indeterminates: raw.field.indeterminates,
            imaginary: raw.field.imaginary,
            tolerance: Tolerance(raw.field.tolerance.unwrap_or(Tolerance::default().0)),
        };
        field.validate().map_err(|e| IoError::Field {
            field: "field".into(),
            msg: e.to_string(),
        })?;
        let nn = raw.n * raw.n;
        let file = Self {
            n: raw.n,
            entries: flatten("entries", &raw.entries, nn, nn)?,
            mu: raw
                .mu
                .as_ref()
                .map(|m| flatten("mu", m, raw.n, raw.n))
                .transpose()?,
            alpha: raw.alpha,
            beta: raw.beta,
            field,
        };
        file.check_scalars()?;
        Ok(file)
    }

    pub fn read(path: &Path) -> Result<Self, IoError> {
        let text = std::fs::read_to_string(path).map_err(|source| IoError::Io {
            path: path.into(),
            source,
        })?;
        Self::parse_str(&text)
    }

    pub fn write(&self, path: &Path) -> Result<(), IoError> {
        std::fs::write(path, self.to_json_string()).map_err(|source| IoError::Io {
            path: path.into(),
            source,
        })
    }

    /// Every scalar must parse under the declared field.
    fn check_scalars(&self) -> Result<(), IoError> {
        let mut tag = self.field.clone();
        if tag.backend == Backend::Float {
            tag.imaginary = true;
        }
        let nn = self.n * self.n;
        let check = |s: &str, location: String| {
            parse_exact(s, &tag)
                .map(|_| ())
                .map_err(|source| IoError::Scalar { location, source })
        };
        for (k, e) in self.entries.iter().enumerate() {
            check(e, format!("entries[{}][{}]", k / nn, k % nn))?;
        }
        for (k, e) in self.mu.iter().flatten().enumerate() {
            check(e, format!("mu[{}][{}]", k / self.n, k % self.n))?;
        }
        if let Some(a) = &self.alpha {
            check(a, "alpha".into())?;
        }
        if let Some(b) = &self.beta {
            check(b, "beta".into())?;
        }
        Ok(())
    }

    fn tag(&self) -> FieldTag {
        let mut tag = self.field.clone();
        if tag.backend == Backend::Float {
            tag.imaginary = true;
        }
        tag
    }

    /// Reads one scalar, substituting `at` into its symbols first.
    fn scalar<S: Scalar>(
        &self,
        text: &str,
        location: String,
        at: &HashMap<String, RatFunc>,
    ) -> Result<S, IoError> {
        let wrap = |source| IoError::Scalar {
            location: location.clone(),
            source,
        };
        let exact = parse_exact(text, &self.tag()).map_err(wrap)?;
        let exact = if at.is_empty() {
            exact
        } else {
            exact.subs(at).map_err(wrap)?
        };
        S::from_exact(&exact).map_err(wrap)
    }

    pub fn tensor<S: Scalar>(&self, at: &HashMap<String, RatFunc>) -> Result<Tensor4<S>, IoError> {
        let nn = self.n * self.n;
        let data = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, e)| self.scalar(e, format!("entries[{}][{}]", k / nn, k % nn), at))
            .collect::<Result<Vec<S>, _>>()?;
        let m = Mat::from_vec(nn, nn, data).expect("length checked on read");
        Ok(Tensor4::from_mat(self.n, m).expect("shape checked on read"))
    }

    pub fn mu<S: Scalar>(&self, at: &HashMap<String, RatFunc>) -> Result<Option<Mat<S>>, IoError> {
        let Some(mu) = &self.mu else {
            return Ok(None);
        };
        let n = self.n;
        let data = mu
            .iter()
            .enumerate()
            .map(|(k, e)| self.scalar(e, format!("mu[{}][{}]", k / n, k % n), at))
            .collect::<Result<Vec<S>, _>>()?;
        Ok(Some(
            Mat::from_vec(n, n, data).expect("length checked on read"),
        ))
    }

    pub fn alpha<S: Scalar>(&self, at: &HashMap<String, RatFunc>) -> Result<Option<S>, IoError> {
        self.alpha
            .as_deref()
            .map(|a| self.scalar(a, "alpha".into(), at))
            .transpose()
    }

    pub fn beta<S: Scalar>(&self, at: &HashMap<String, RatFunc>) -> Result<Option<S>, IoError> {
        self.beta
            .as_deref()
            .map(|b| self.scalar(b, "beta".into(), at))
            .transpose()
    }

    /// Serializes values computed in either backend.
    pub fn from_values<S: Scalar>(
        field: FieldTag,
        entries: &Tensor4<S>,
        mu: Option<&Mat<S>>,
        alpha: Option<&S>,
        beta: Option<&S>,
    ) -> Self {
        Self {
            n: entries.n(),
            field,
            entries: entries
                .mat()
                .entries()
                .iter()
                .map(ToString::to_string)
                .collect(),
            mu: mu.map(|m| m.entries().iter().map(ToString::to_string).collect()),
            alpha: alpha.map(ToString::to_string),
            beta: beta.map(ToString::to_string),
        }
    }

    /// Deterministic pretty JSON: one matrix row per line.
    pub fn to_json_string(&self) -> String {
        let js = |s: &str| serde_json::to_string(s).expect("string serializes");
        let rows = |flat: &[String], width: usize| -> String {
            let lines: Vec<String> = flat
                .chunks(width)
                .map(|row| {
                    format!(
                        "    [{}]",
                        row.iter().map(|s| js(s)).collect::<Vec<_>>().join(", ")
                    )
                })
                .collect();
            format!("[\n{}\n  ]", lines.join(",\n"))
        };
        let backend = match self.field.backend {
            Backend::Exact => "exact",
            Backend::Float => "float",
        };
        let symbols: Vec<String> = self.field.indeterminates.iter().map(|s| js(s)).collect();
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"n\": {},", self.n);
        let _ = writeln!(
            out,
            "  \"field\": {{\"backend\": \"{backend}\", \"indeterminates\": [{}], \"imaginary\": {}, \"tolerance\": {}}},",
            symbols.join(", "),
            self.field.imaginary,
            serde_json::to_string(&self.field.tolerance.0).expect("finite tolerance")
        );
        let _ = write!(
            out,
            "  \"entries\": {}",
            rows(&self.entries, self.n * self.n)
        );
        if let Some(mu) = &self.mu {
            let _ = write!(out, ",\n  \"mu\": {}", rows(mu, self.n));
        }
        if let Some(a) = &self.alpha {
            let _ = write!(out, ",\n  \"alpha\": {}", js(a));
        }
        if let Some(b) = &self.beta {
            let _ = write!(out, ",\n  \"beta\": {}", js(b));
        }
        out.push_str("\n}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "n": 2,
  "field": {"backend": "exact", "indeterminates": ["p", "q"], "imaginary": false, "tolerance": 1e-9},
  "entries": [
    ["q", "0", "0", "0"],
    ["0", "p", "q - q^-1", "0"],
    ["0", "0", "p^-1", "0"],
    ["0", "0", "0", "q"]
  ],
  "mu": [
    ["q", "0"],
    ["0", "q^-1"]
  ]
}
"#;

    #[test]
    fn round_trip_is_byte_identical() {
        let f = MatrixFile::parse_str(SAMPLE).unwrap();
        assert_eq!(f.to_json_string(), SAMPLE);
        let t: Tensor4<RatFunc> = f.tensor(&HashMap::new()).unwrap();
        assert_eq!(
            t.get(0, 1, 1, 0),
            &(RatFunc::var("q") - RatFunc::var("q").inv().unwrap())
        );
        assert!(f.mu::<RatFunc>(&HashMap::new()).unwrap().is_some());
    }

    #[test]
    fn entry_count_is_checked() {
        let text = SAMPLE.replace(r#"["0", "0", "0", "q"]"#, r#"["0", "0", "q"]"#);
        let err = MatrixFile::parse_str(&text).unwrap_err();
        assert!(
            matches!(
                err,
                IoError::EntryCount {
                    expected: 4,
                    found: 3,
                    ..
                }
            ),
            "{err}"
        );
        let flat = r#"{"n": 2, "field": {"backend": "exact"}, "entries": ["1","0","0","0","0","1","0","0","0","0","1","0","0","0","0"]}"#;
        let err = MatrixFile::parse_str(flat).unwrap_err();
        assert!(
            matches!(
                err,
                IoError::EntryCount {
                    expected: 16,
                    found: 15,
                    ..
                }
            ),
            "{err}"
        );
        assert!(err.to_string().contains("expected 16 entries"));
    }

    #[test]
    fn unknown_symbol_is_located() {
        let text = SAMPLE.replace("\"p^-1\"", "\"t\"");
        let err = MatrixFile::parse_str(&text).unwrap_err();
        match err {
            IoError::Scalar { location, source } => {
                assert_eq!(location, "entries[2][2]");
                assert_eq!(source, ScalarError::UnknownSymbol("t".into()));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = MatrixFile::parse_str("{\n  \"n\": 2,\n  oops\n}").unwrap_err();
        assert!(matches!(err, IoError::Json { line: 3, .. }), "{err}");
    }

    #[test]
    fn substitution_on_read() {
        let f = MatrixFile::parse_str(SAMPLE).unwrap();
        let mut at = HashMap::new();
        at.insert("q".to_string(), RatFunc::from_i64(2));
        let t: Tensor4<RatFunc> = f.tensor(&at).unwrap();
        assert_eq!(t.get(0, 0, 0, 0), &RatFunc::from_i64(2));
        assert_eq!(t.get(0, 1, 1, 0), &RatFunc::ratio(3, 2));
    }
}
