use std::fmt;

use num_bigint::BigInt;

/// Runtime values. Lists hold integers only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    Bool(bool),
    Str(String),
    List(Vec<BigInt>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Type {
    Int,
    Bool,
    Str,
    List,
}

impl Type {
    pub const ALL: [Type; 4] = [Type::Int, Type::Bool, Type::Str, Type::List];

    pub fn as_str(self) -> &'static str {
        match self {
            Type::Int => "int",
            Type::Bool => "bool",
            Type::Str => "str",
            Type::List => "list",
        }
    }
}

impl fmt::Display for Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An argument outside an instruction's domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainError(pub &'static str);

impl fmt::Display for DomainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl std::error::Error for DomainError {}

impl Value {
    pub fn int(n: i64) -> Value {
        Value::Int(BigInt::from(n))
    }

    pub fn str(s: &str) -> Value {
        Value::Str(s.to_owned())
    }

    pub fn list(items: &[i64]) -> Value {
        Value::List(items.iter().map(|&n| BigInt::from(n)).collect())
    }

    pub fn ty(&self) -> Type {
        match self {
            Value::Int(_) => Type::Int,
            Value::Bool(_) => Type::Bool,
            Value::Str(_) => Type::Str,
            Value::List(_) => Type::List,
        }
    }

    /// Converts a JSON value. Numbers must be integers and arrays must hold
    /// integers only.
    pub fn from_json(v: &serde_json::Value) -> Result<Value, String> {
        use serde_json::Value as J;
        let int = |n: &serde_json::Number| -> Result<BigInt, String> {
            if let Some(i) = n.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = n.as_u64() {
                Ok(BigInt::from(u))
            } else {
                Err(format!("{n} is not an integer"))
            }
        };
        match v {
            J::Number(n) => int(n).map(Value::Int),
            J::Bool(b) => Ok(Value::Bool(*b)),
            J::String(s) => Ok(Value::Str(s.clone())),
            J::Array(items) => items
                .iter()
                .map(|item| match item {
                    J::Number(n) => int(n),
                    other => Err(format!("list elements must be integers, found {other}")),
                })
                .collect::<Result<Vec<_>, _>>()
                .map(Value::List),
            J::Null => Err("null is not a supported value".into()),
            J::Object(_) => Err("objects are not supported values".into()),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Bool(true) => f.write_str("True"),
            Value::Bool(false) => f.write_str("False"),
            Value::Str(s) => write!(f, "{}", serde_json::Value::String(s.clone())),
            Value::List(items) => {
                f.write_str("[")?;
                for (i, n) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{n}")?;
                }
                f.write_str("]")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_conversion() {
        let v: serde_json::Value = serde_json::from_str(r#"[1, -2, 30000000000]"#).unwrap();
        assert_eq!(
            Value::from_json(&v).unwrap(),
            Value::list(&[1, -2, 30_000_000_000])
        );
        assert_eq!(
            Value::from_json(&serde_json::json!("hi")).unwrap(),
            Value::str("hi")
        );
        assert_eq!(
            Value::from_json(&serde_json::json!(true)).unwrap(),
            Value::Bool(true)
        );
        assert!(Value::from_json(&serde_json::json!(1.5)).is_err());
        assert!(Value::from_json(&serde_json::json!([[1]])).is_err());
        assert!(Value::from_json(&serde_json::json!(null)).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(Value::list(&[1, 2]).to_string(), "[1, 2]");
        assert_eq!(Value::str("a\"b").to_string(), "\"a\\\"b\"");
        assert_eq!(Value::Bool(false).to_string(), "False");
    }
}
