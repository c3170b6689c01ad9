//! Text formats shared by the library, the CLI and the bindings.
//!
//! Matrices are JSON objects `{"n": rows, "m": cols, "entries": [[..], ..]}`
//! whose entries are strings holding an integer or a `p/q` literal. Forms
//! with coefficients in ℤ/q carry an extra `modulus` field.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bundles::{MatrixBundleClass, VectorBundleClass};
use crate::cohomology::{AltFormModQ, AltFormZ};
use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, Matrix, RatMatrix, Scalar, SkewRatForm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixText {
    pub n: usize,
    pub m: usize,
    pub entries: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub modulus: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BundleKind {
    Vector,
    Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleText {
    pub kind: BundleKind,
    pub n: usize,
    pub q: String,
    pub form: MatrixText,
}

fn is_integer_literal(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    if !is_integer_literal(s) {
        return Err(Error::Parse(format!("malformed integer literal {s:?}")));
    }
    s.parse().map_err(|_| Error::Parse(format!("malformed integer literal {s:?}")))
}

/// Parses `"k"` or `"p/q"`; the result is reduced to lowest terms.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_integer(s)?)),
        Some((p, q)) => {
            let p = parse_integer(p)?;
            let q = parse_integer(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
    }
}

pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl MatrixText {
    pub fn from_matrix<T: Scalar>(m: &Matrix<T>, fmt: impl Fn(&T) -> String) -> Self {
        MatrixText {
            n: m.rows(),
            m: m.cols(),
            entries: m.to_rows().iter().map(|r| r.iter().map(&fmt).collect()).collect(),
            modulus: None,
        }
    }

    fn check_shape(&self) -> Result<()> {
        if self.n == 0 || self.m == 0 {
            return Err(Error::Parse("matrix dimensions must be positive".into()));
        }
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.m) {
            return Err(Error::Parse(format!("entries do not match declared shape {}x{}", self.n, self.m)));
        }
        Ok(())
    }

    pub fn to_rat(&self) -> Result<RatMatrix> {
        self.check_shape()?;
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RatMatrix::from_rows(rows)
    }

    pub fn to_int(&self) -> Result<IntMatrix> {
        self.to_rat()?.to_int().ok_or_else(|| Error::Parse("expected integer entries".into()))
    }

    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix text serializes")
    }
}

pub fn rat_matrix_to_text(m: &RatMatrix) -> MatrixText {
    MatrixText::from_matrix(m, format_rational)
}

pub fn int_matrix_to_text(m: &IntMatrix) -> MatrixText {
    MatrixText::from_matrix(m, ToString::to_string)
}

pub fn parse_rat_matrix(json: &str) -> Result<RatMatrix> {
    MatrixText::parse(json)?.to_rat()
}

pub fn parse_int_matrix(json: &str) -> Result<IntMatrix> {
    MatrixText::parse(json)?.to_int()
}

pub fn parse_skew(json: &str) -> Result<SkewRatForm> {
    SkewRatForm::new(parse_rat_matrix(json)?)
}

pub fn skew_to_json(theta: &SkewRatForm) -> String {
    rat_matrix_to_text(theta.matrix()).to_json()
}

pub fn alt_form_to_text(c: &AltFormZ) -> MatrixText {
    int_matrix_to_text(c.matrix())
}

pub fn alt_form_from_text(t: &MatrixText) -> Result<AltFormZ> {
    AltFormZ::new(t.to_int()?)
}

pub fn alt_form_mod_to_text(b: &AltFormModQ) -> MatrixText {
    MatrixText { modulus: Some(b.modulus().to_string()), ..int_matrix_to_text(b.matrix()) }
}

pub fn alt_form_mod_from_text(t: &MatrixText) -> Result<AltFormModQ> {
    let modulus = t.modulus.as_deref().ok_or_else(|| Error::Parse("missing modulus".into()))?;
    AltFormModQ::new(t.to_int()?, parse_integer(modulus)?)
}

impl From<&VectorBundleClass> for BundleText {
    fn from(e: &VectorBundleClass) -> Self {
        BundleText { kind: BundleKind::Vector, n: e.n(), q: e.rank().to_string(), form: alt_form_to_text(e.c1()) }
    }
}

impl From<&MatrixBundleClass> for BundleText {
    fn from(a: &MatrixBundleClass) -> Self {
        BundleText { kind: BundleKind::Matrix, n: a.n(), q: a.size().to_string(), form: alt_form_mod_to_text(a.beta()) }
    }
}

pub enum ParsedBundle {
    Vector(VectorBundleClass),
    Matrix(MatrixBundleClass),
}

impl BundleText {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("bundle text serializes")
    }

    pub fn parse(json: &str) -> Result<ParsedBundle> {
        let t: BundleText = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
        let q = parse_integer(&t.q)?;
        match t.kind {
            BundleKind::Vector => {
                let c1 = alt_form_from_text(&t.form)?;
                if c1.n() != t.n {
                    return Err(Error::Parse("form size differs from n".into()));
                }
                Ok(ParsedBundle::Vector(VectorBundleClass::new(q, c1)?))
            }
            BundleKind::Matrix => {
                let beta = alt_form_mod_from_text(&t.form)?;
                if beta.n() != t.n {
                    return Err(Error::Parse("form size differs from n".into()));
                }
                Ok(ParsedBundle::Matrix(MatrixBundleClass::new(q, beta)?))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rat};

    #[test]
    fn literals() {
        assert_eq!(parse_rational("-1/3").unwrap(), rat(-1, 3));
        assert_eq!(parse_rational("2/6").unwrap(), rat(1, 3));
        assert_eq!(parse_rational("4/-2").unwrap(), rat(-2, 1));
        assert_eq!(parse_rational("17").unwrap(), rat(17, 1));
        for bad in ["", "1/", "/2", "1/0", "a", "1.5", "1/2/3", " 1", "+-1", "--1"] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn matrix_text_reduces_and_round_trips() {
        let json = r#"{"n":2,"m":2,"entries":[["0","2/6"],["-1/3","0"]]}"#;
        let theta = parse_skew(json).unwrap();
        assert_eq!(theta.matrix()[(0, 1)], rat(1, 3));
        let back = skew_to_json(&theta);
        assert_eq!(back, r#"{"n":2,"m":2,"entries":[["0","1/3"],["-1/3","0"]]}"#);
        assert_eq!(parse_skew(&back).unwrap(), theta);
    }

    #[test]
    fn shape_errors() {
        assert!(parse_rat_matrix(r#"{"n":2,"m":2,"entries":[["0","1"]]}"#).is_err());
        assert!(parse_rat_matrix(r#"{"n":0,"m":0,"entries":[]}"#).is_err());
        assert!(parse_int_matrix(r#"{"n":1,"m":1,"entries":[["1/2"]]}"#).is_err());
    }

    #[test]
    fn mod_form_text() {
        let b = AltFormModQ::new(IntMatrix::from_i64(&[&[0, -1], &[1, 0]]), int(5)).unwrap();
        let t = alt_form_mod_to_text(&b);
        assert_eq!(t.modulus.as_deref(), Some("5"));
        assert_eq!(alt_form_mod_from_text(&t).unwrap(), b);
    }
}
