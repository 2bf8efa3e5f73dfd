//! `pointset v1` text files.
//!
//! ```text
//! pointset v1 3
//! # kind=horton
//! 0 0
//! 1 1
//! -2 17
//! ```
//!
//! The header gives the point count. `# key=value` lines carry metadata;
//! other `#` lines and blank lines are ignored.

use std::str::FromStr;

use horton_islands::{GeomError, Point, PointSet};
use num_bigint::BigInt;
use thiserror::Error;

pub const HEADER: &str = "pointset v1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("missing `{HEADER} <count>` header")]
    MissingHeader,
    #[error("line {line}: malformed header `{text}`")]
    BadHeader { line: usize, text: String },
    #[error("line {line}: expected two integers, found `{text}`")]
    BadPoint { line: usize, text: String },
    #[error("header declares {declared} points but the file has {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSetFile {
    pub points: PointSet,
    /// Metadata in file order.
    pub metadata: Vec<(String, String)>,
}

impl PointSetFile {
    pub fn new(points: PointSet) -> Self {
        PointSetFile {
            points,
            metadata: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("{HEADER} {}\n", self.points.len());
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        for p in self.points.iter() {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
        out
    }
}

fn parse_int(tok: &str) -> Option<BigInt> {
    let digits = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(tok).ok()
}

impl FromStr for PointSetFile {
    type Err = FormatError;

    fn from_str(text: &str) -> Result<Self, FormatError> {
        let mut declared = None;
        let mut metadata = Vec::new();
        let mut points = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            if line.is_empty() {
                continue;
            }
            if declared.is_none() {
                let count = line
                    .strip_prefix(HEADER)
                    .and_then(|rest| {
                        let rest = rest.trim();
                        (!rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
                            .then(|| rest.parse::<usize>().ok())
                            .flatten()
                    })
                    .ok_or_else(|| {
                        if line.starts_with('#') {
                            FormatError::MissingHeader
                        } else {
                            FormatError::BadHeader {
                                line: lineno,
                                text: line.to_string(),
                            }
                        }
                    })?;
                declared = Some(count);
                continue;
            }
            if let Some(comment) = line.strip_prefix('#') {
                if let Some((k, v)) = comment.trim().split_once('=') {
                    metadata.push((k.trim().to_string(), v.trim().to_string()));
                }
                continue;
            }
            let mut toks = line.split_whitespace();
            let parsed = match (toks.next(), toks.next(), toks.next()) {
                (Some(x), Some(y), None) => parse_int(x).zip(parse_int(y)),
                _ => None,
            };
            let Some((x, y)) = parsed else {
                return Err(FormatError::BadPoint {
                    line: lineno,
                    text: line.to_string(),
                });
            };
            points.push(Point { x, y });
        }
        let declared = declared.ok_or(FormatError::MissingHeader)?;
        if declared != points.len() {
            return Err(FormatError::CountMismatch {
                declared,
                found: points.len(),
            });
        }
        Ok(PointSetFile {
            points: PointSet::new(points)?,
            metadata,
        })
    }
}
