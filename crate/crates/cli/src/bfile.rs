//! The OEIS b-file text format.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::error::{CliError, CliResult};

/// A parsed b-file: `entries[j]` has index `offset + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub oeis_id: String,
    pub entries: Vec<(i64, BigInt)>,
}

/// `A` followed by exactly six digits.
pub fn is_valid_id(id: &str) -> bool {
    id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit())
}

pub fn normalize_id(id: &str) -> CliResult<String> {
    let up = id.trim().to_ascii_uppercase();
    if is_valid_id(&up) {
        Ok(up)
    } else {
        Err(CliError::Usage(format!(
            "{id:?} is not an OEIS id like A001317"
        )))
    }
}

impl BFile {
    /// Parses b-file text. `#` lines and blank lines are skipped; every
    /// other line must be `index value` with a single space, and indices
    /// must increase by one.
    pub fn parse(oeis_id: &str, text: &str) -> CliResult<BFile> {
        let mut entries: Vec<(i64, BigInt)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| CliError::BFileParse {
                line: lineno + 1,
                message,
            };
            let (i, v) = line
                .split_once(' ')
                .ok_or_else(|| err(format!("expected \"index value\", got {line:?}")))?;
            let index: i64 = i.parse().map_err(|_| err(format!("bad index {i:?}")))?;
            let value: BigInt = v.parse().map_err(|_| err(format!("bad value {v:?}")))?;
            if let Some(&(prev, _)) = entries.last() {
                if index != prev + 1 {
                    return Err(err(format!("index {index} does not follow {prev}")));
                }
            }
            entries.push((index, value));
        }
        if entries.is_empty() {
            return Err(CliError::BFileParse {
                line: 0,
                message: "no data lines".into(),
            });
        }
        Ok(BFile {
            oeis_id: oeis_id.to_string(),
            entries,
        })
    }

    pub fn offset(&self) -> i64 {
        self.entries[0].0
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = &BigInt> {
        self.entries.iter().map(|(_, v)| v)
    }
}

/// b-file text for `values` starting at index `offset`.
pub fn format_bfile(header: Option<&str>, offset: i64, values: &[BigInt]) -> String {
    let mut out = String::new();
    if let Some(h) = header {
        for line in h.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    for (j, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{} {v}", offset + j as i64);
    }
    out
}
