//! Reading matrices and bundle classes from inline JSON or files.

use std::fs;

use num_bigint::BigInt;
use toribundle::io::{alt_form_from_text, parse_rational, parse_skew, MatrixText};
use toribundle::linalg::SkewRatForm;
use toribundle::cohomology::AltFormZ;
use toribundle::{Error, Result};

/// `@path` reads a file; anything else is taken as inline JSON.
pub fn read_source(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

/// Accepts the full matrix object or a bare array of rows such as `[[0,"1/3"],["-1/3",0]]`.
fn matrix_json(arg: &str) -> Result<String> {
    let text = read_source(arg)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let serde_json::Value::Array(rows) = value else {
        return Ok(text);
    };
    let mut entries = Vec::with_capacity(rows.len());
    for row in rows {
        let serde_json::Value::Array(row) = row else {
            return Err(Error::Parse("matrix rows must be arrays".into()));
        };
        let row = row
            .into_iter()
            .map(|v| match v {
                serde_json::Value::String(s) => Ok(s),
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => Ok(n.to_string()),
                other => Err(Error::Parse(format!("bad matrix entry {other}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        entries.push(row);
    }
    let n = entries.len();
    let m = entries.first().map_or(0, Vec::len);
    Ok(MatrixText { n, m, entries, modulus: None }.to_json())
}

pub fn theta(json: Option<&str>, planar: Option<&str>) -> Result<SkewRatForm> {
    match (json, planar) {
        (Some(j), None) => parse_skew(&matrix_json(j)?),
        (None, Some(p)) => Ok(SkewRatForm::planar(parse_rational(p)?)),
        (Some(_), Some(_)) => Err(Error::Parse("give either a matrix or --planar, not both".into())),
        (None, None) => Err(Error::Parse("missing theta: pass a matrix or --planar p/q".into())),
    }
}

pub fn alt_form(arg: &str) -> Result<AltFormZ> {
    let text = MatrixText::parse(&matrix_json(arg)?)?;
    alt_form_from_text(&text)
}

pub fn integer(s: &str) -> Result<BigInt> {
    toribundle::io::parse_integer(s)
}
