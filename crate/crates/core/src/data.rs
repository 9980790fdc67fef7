//! Lifetime samples.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Lifetimes of 50 devices from Aarset (1987).
///
/// The published listing fuses two pairs of values; they are split here as in the
/// original source (`18, 21` and `75, 79`).
pub const AARSET: [f64; 50] = [
    0.1, 0.2, 1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0, 6.0, 7.0, 11.0, 12.0, 18.0, 18.0, 18.0, 18.0,
    18.0, 21.0, 32.0, 36.0, 40.0, 45.0, 46.0, 47.0, 50.0, 55.0, 60.0, 63.0, 63.0, 67.0, 67.0, 67.0,
    67.0, 72.0, 75.0, 79.0, 82.0, 82.0, 83.0, 84.0, 84.0, 84.0, 85.0, 85.0, 85.0, 85.0, 85.0, 86.0,
    86.0,
];

/// SHA-256 of the canonical rendering of [`AARSET`] (see [`Dataset::digest`]).
pub const AARSET_SHA256: &str = "ef67d1133d3c1be4b0ac64f88d8ff81ae5cf87ba62f43d1a1548b5aba15912e8";

/// Where a dataset came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", content = "path", rename_all = "snake_case")]
pub enum DataSource {
    Embedded,
    File(PathBuf),
    Inline,
}

/// A sorted sample of positive lifetimes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    values: Vec<f64>,
    pub name: String,
    pub source: DataSource,
}

impl Dataset {
    /// Validates and sorts `values`.
    pub fn new(name: impl Into<String>, mut values: Vec<f64>, source: DataSource) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidData("dataset is empty".into()));
        }
        let bad: Vec<String> = values
            .iter()
            .enumerate()
            .filter(|(_, v)| !(v.is_finite() && **v > 0.0))
            .map(|(i, v)| format!("#{} = {v}", i + 1))
            .collect();
        if !bad.is_empty() {
            return Err(Error::InvalidData(format!(
                "lifetimes must be finite and positive; offending values: {}",
                bad.join(", ")
            )));
        }
        values.sort_by(f64::total_cmp);
        Ok(Self {
            values,
            name: name.into(),
            source,
        })
    }

    pub fn from_values(name: impl Into<String>, values: Vec<f64>) -> Result<Self> {
        Self::new(name, values, DataSource::Inline)
    }

    pub fn aarset() -> Self {
        Self::new("aarset", AARSET.to_vec(), DataSource::Embedded).expect("embedded data is valid")
    }

    /// Parses whitespace- or newline-separated decimal numbers; `#` starts a comment.
    pub fn parse(name: impl Into<String>, text: &str, source: DataSource) -> Result<Self> {
        let mut values = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let content = line.split('#').next().unwrap_or("");
            let mut column = 0;
            for token in content.split(|c: char| c.is_whitespace() || c == ',') {
                let here = column;
                column += token.chars().count() + 1;
                if token.is_empty() {
                    continue;
                }
                let v: f64 = token.parse().map_err(|_| Error::Parse {
                    line: line_no + 1,
                    column: here + 1,
                    message: format!("`{token}` is not a number"),
                })?;
                values.push(v);
            }
        }
        Self::new(name, values, source)
    }

    /// Reads a data file, or the embedded sample for the keyword `aarset`.
    pub fn load(path_or_keyword: &str) -> Result<Self> {
        if path_or_keyword.eq_ignore_ascii_case("aarset") {
            return Ok(Self::aarset());
        }
        let path = Path::new(path_or_keyword);
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidData(format!("cannot read {}: {e}", path.display())))?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path_or_keyword.to_string());
        Self::parse(name, &text, DataSource::File(path.to_path_buf()))
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }

    /// Mean of the squared observations.
    pub fn mean_sq(&self) -> f64 {
        self.values.iter().map(|x| x * x).sum::<f64>() / self.len() as f64
    }

    /// Empirical distribution function at `x`.
    pub fn ecdf(&self, x: f64) -> f64 {
        self.values.partition_point(|v| *v <= x) as f64 / self.len() as f64
    }

    /// Hex SHA-256 of the values rendered with `{}` formatting, one per line.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for v in &self.values {
            hasher.update(format!("{v}\n").as_bytes());
        }
        let mut out = String::with_capacity(64);
        for byte in hasher.finalize() {
            write!(out, "{byte:02x}").expect("writing to a String cannot fail");
        }
        out
    }

    /// Copy with every value multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(
            format!("{}*{c}", self.name),
            self.values.iter().map(|v| v * c).collect(),
            self.source.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aarset_summary() {
        let d = Dataset::aarset();
        assert_eq!(d.len(), 50);
        assert_eq!(d.min(), 0.1);
        assert_eq!(d.max(), 86.0);
        assert!((d.mean() - 45.686).abs() < 1e-9);
        assert_eq!(d.ecdf(86.0), 1.0);
        assert_eq!(d.ecdf(0.05), 0.0);
    }

    #[test]
    fn aarset_digest_is_stable() {
        assert_eq!(Dataset::aarset().digest(), AARSET_SHA256);
    }

    #[test]
    fn parse_sorts_and_reports_positions() {
        let d = Dataset::parse("t", "3.0\n1.0\n2.0", DataSource::Inline).unwrap();
        assert_eq!(d.values(), &[1.0, 2.0, 3.0]);
        let d = Dataset::parse("t", "1 2\t3, 4 # trailing\n\n5", DataSource::Inline).unwrap();
        assert_eq!(d.len(), 5);
        match Dataset::parse("t", "1.0 2.0\n3.0 x7", DataSource::Inline) {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn validation_lists_offenders() {
        match Dataset::parse("t", "1.0\n-1.0\n0", DataSource::Inline) {
            Err(Error::InvalidData(msg)) => {
                assert!(msg.contains("-1"));
                assert!(msg.contains("#3 = 0"));
            }
            other => panic!("{other:?}"),
        }
        assert!(Dataset::from_values("e", vec![]).is_err());
        assert!(Dataset::from_values("n", vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn keyword_and_missing_file() {
        assert_eq!(Dataset::load("AARSET").unwrap().len(), 50);
        assert!(Dataset::load("/nonexistent/file.txt").is_err());
    }
}
