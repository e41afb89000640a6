//! Reading configurations and index lists from text.
//!
//! Two configuration formats are accepted: a JSON object
//! `{"name": "...", "points": [[0, 0], [1, 0]]}` (the name is optional), or
//! plain text with one point per line as whitespace-separated integers.
//! Blank lines and lines starting with `#` are ignored in the text format.

use serde::Deserialize;

use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::linalg::to_big;

/// A Cayley structure asserted by an input file, checked by the verifier.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimedStructure {
    pub face: Vec<usize>,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claims {
    #[serde(default)]
    pub cayley: Vec<ClaimedStructure>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInput {
    name: Option<String>,
    points: Vec<Vec<i64>>,
    #[serde(default)]
    claims: Claims,
}

/// A parsed input file.
#[derive(Clone, Debug)]
pub struct Input {
    pub name: Option<String>,
    pub config: PointConfiguration,
    pub claims: Claims,
}

/// Parses either input format; JSON is recognised by a leading `{`.
pub fn parse_config(text: &str) -> Result<Input> {
    if text.trim_start().starts_with('{') {
        let raw: RawInput = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let config = build(&raw.points)?;
        Ok(Input {
            name: raw.name,
            config,
            claims: raw.claims,
        })
    } else {
        let rows = parse_rows(text)?;
        Ok(Input {
            name: None,
            config: build(&rows)?,
            claims: Claims::default(),
        })
    }
}

fn build(rows: &[Vec<i64>]) -> Result<PointConfiguration> {
    PointConfiguration::new(rows.iter().map(|r| to_big(r)).collect())
}

fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>> {
    text.lines()
        .enumerate()
        .map(|(n, line)| (n + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
        .map(|(n, line)| {
            line.split_whitespace()
                .map(|tok| {
                    tok.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("line {n}: `{tok}` is not an integer")))
                })
                .collect()
        })
        .collect()
}

/// Parses a comma-separated list of distinct point indices such as `0,2`.
pub fn parse_index_list(text: &str) -> Result<Vec<usize>> {
    let items: Vec<&str> = text.split(',').map(str::trim).collect();
    if items.iter().all(|s| s.is_empty()) {
        return Err(Error::Parse("empty index list".into()));
    }
    let mut out = Vec::with_capacity(items.len());
    for s in items {
        let i = s
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("`{s}` is not a point index")))?;
        if out.contains(&i) {
            return Err(Error::Parse(format!("index {i} repeated")));
        }
        out.push(i);
    }
    Ok(out)
}
