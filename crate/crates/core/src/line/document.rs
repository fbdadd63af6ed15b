//! JSON interchange for linear systems of quadrics.
//!
//! ```json
//! { "r": 2, "forms": [ [[0, 1, "1/2"]], [[0, 0, "1"], [2, 2, "-3"]] ] }
//! ```
//!
//! Each form lists `(i, j, coefficient)` entries of the upper triangle of its
//! symmetric matrix, so `[[0, 1, "1/2"]]` is the quadric `x0 x1`. Coefficients
//! are decimal integers or fractions `a/b`, given as strings or JSON integers.

use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Deserialize;
use serde_json::{json, Value};

use super::{LineError, QuadraticForm};
use crate::{Rational, RationalForm};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Coefficient {
    Text(String),
    Int(i64),
}

#[derive(Debug, Clone, Deserialize)]
struct RawDocument {
    r: usize,
    forms: Vec<Vec<(usize, usize, Coefficient)>>,
}

/// A parsed forms file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormsDocument {
    pub r: usize,
    pub forms: Vec<RationalForm>,
}

fn parse_rational(text: &str) -> Result<Rational, LineError> {
    let t = text.trim();
    let bad = || LineError::BadNumber(text.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n = num_bigint::BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = num_bigint::BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d == num_bigint::BigInt::from(0) {
            return Err(bad());
        }
        return Ok(Rational::new(n, d));
    }
    num_bigint::BigInt::from_str(t).map(Rational::from_integer).map_err(|_| bad())
}

/// Parses a comma-separated rational point such as `"1, 0, -1/2"`.
pub fn parse_point(text: &str) -> Result<Vec<Rational>, LineError> {
    text.split(',').map(parse_rational).collect()
}

pub fn parse_forms_document(text: &str) -> Result<FormsDocument, LineError> {
    let raw: RawDocument = serde_json::from_str(text).map_err(|e| LineError::Document(e.to_string()))?;
    let r = raw.r;
    let mut forms = Vec::with_capacity(raw.forms.len());
    for entries in raw.forms {
        let mut matrix = vec![vec![Rational::from_integer(0.into()); r + 1]; r + 1];
        let mut seen = BTreeSet::new();
        for (i, j, c) in entries {
            let (i, j) = (i.min(j), i.max(j));
            if j > r {
                return Err(LineError::IndexOutOfRange { i, j, r });
            }
            if !seen.insert((i, j)) {
                return Err(LineError::DuplicateEntry { i, j });
            }
            let value = match c {
                Coefficient::Text(s) => parse_rational(&s)?,
                Coefficient::Int(v) => Rational::from_integer(v.into()),
            };
            matrix[i][j] = value.clone();
            matrix[j][i] = value;
        }
        forms.push(QuadraticForm::from_matrix(matrix)?);
    }
    Ok(FormsDocument { r, forms })
}

/// Serializes forms in the document layout, skipping zero entries.
pub fn forms_document_json(r: usize, forms: &[RationalForm]) -> Value {
    let forms: Vec<Value> = forms
        .iter()
        .map(|f| {
            let mut entries = Vec::new();
            for i in 0..=r {
                for j in i..=r {
                    let v = f.entry(i, j);
                    if *v.numer() != 0.into() {
                        entries.push(json!([i, j, v.to_string()]));
                    }
                }
            }
            Value::Array(entries)
        })
        .collect();
    json!({ "r": r, "forms": forms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Integer;

    #[test]
    fn parses_entries_and_fractions() {
        let doc = parse_forms_document(r#"{"r": 2, "forms": [[[0, 1, "1/2"]], [[2, 0, 3], [1, 1, "-4/6"]]]}"#).unwrap();
        assert_eq!(doc.r, 2);
        let half = Rational::new(Integer::from(1), Integer::from(2));
        assert_eq!(doc.forms[0].entry(1, 0), &half);
        assert_eq!(doc.forms[1].entry(0, 2), &Rational::from_integer(Integer::from(3)));
        assert_eq!(doc.forms[1].entry(1, 1), &Rational::new(Integer::from(-2), Integer::from(3)));
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse_forms_document("{"), Err(LineError::Document(_))));
        assert!(matches!(
            parse_forms_document(r#"{"r": 1, "forms": [[[0, 2, "1"]]]}"#),
            Err(LineError::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            parse_forms_document(r#"{"r": 1, "forms": [[[0, 1, "1"], [1, 0, "2"]]]}"#),
            Err(LineError::DuplicateEntry { i: 0, j: 1 })
        ));
        assert!(matches!(
            parse_forms_document(r#"{"r": 1, "forms": [[[0, 1, "1/0"]]]}"#),
            Err(LineError::BadNumber(_))
        ));
        assert!(matches!(
            parse_forms_document(r#"{"r": 1, "forms": [[[0, 1, "x"]]]}"#),
            Err(LineError::BadNumber(_))
        ));
    }

    #[test]
    fn round_trips() {
        let text = r#"{"r": 3, "forms": [[[0, 0, "1"], [1, 3, "-5/7"]], [], [[2, 2, "9"]]]}"#;
        let doc = parse_forms_document(text).unwrap();
        let again = parse_forms_document(&forms_document_json(doc.r, &doc.forms).to_string()).unwrap();
        assert_eq!(doc, again);
    }

    #[test]
    fn points() {
        let p = parse_point("1, -2/4,0").unwrap();
        assert_eq!(p[1], Rational::new(Integer::from(-1), Integer::from(2)));
        assert!(parse_point("1,,2").is_err());
    }
}
