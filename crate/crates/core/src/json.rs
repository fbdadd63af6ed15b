//! JSON rendering helpers. Integers of any size are emitted as JSON numbers.

use std::str::FromStr;

use serde_json::{Number, Value};

use crate::{Integer, Natural, Rational};

/// Version tag placed at the top of every emitted document.
pub const SCHEMA: &str = "quadrica/1";

pub fn int(v: &Integer) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integers are valid JSON numbers"))
}

pub fn nat(v: &Natural) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integers are valid JSON numbers"))
}

pub fn ints(v: &[Integer]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

/// Rationals are emitted as strings `"a/b"` (or `"a"` when integral).
pub fn rational(v: &Rational) -> Value {
    Value::String(v.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_stay_exact() {
        let big = Integer::from(10).pow(60) + 7;
        let text = int(&big).to_string();
        assert_eq!(text, big.to_string());
        let back: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back, int(&big));
    }
}
