//! The instruction roster.
//!
//! Names follow the corpus vocabulary (`len`, `sorted`, `+`, `u-`, ...) so a
//! table mined from Python source can gate synthesis directly. Overloads such
//! as `+` on integers and on strings share one instruction id.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::value::{DomainError, Type, Value};
use crate::digram::InstructionId;
use crate::error::{Error, Result};
use crate::subset::InstructionSubset;

pub type Semantics = fn(&[Value]) -> Result<Value, DomainError>;

/// Largest argument accepted by `range`.
pub const RANGE_LIMIT: u64 = 1000;

#[derive(Clone)]
pub struct TypedInstruction {
    pub id: InstructionId,
    pub arg_types: Vec<Type>,
    pub return_type: Type,
    pub semantics: Semantics,
}

impl TypedInstruction {
    pub fn arity(&self) -> usize {
        self.arg_types.len()
    }

    pub fn signature(&self) -> String {
        let args: Vec<&str> = self.arg_types.iter().map(|t| t.as_str()).collect();
        format!("{}: {} -> {}", self.id, args.join(", "), self.return_type)
    }
}

impl std::fmt::Debug for TypedInstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.signature())
    }
}

const MISMATCH: DomainError = DomainError("argument type mismatch");

fn int1(a: &[Value]) -> Result<&BigInt, DomainError> {
    match a {
        [Value::Int(x)] => Ok(x),
        _ => Err(MISMATCH),
    }
}

fn int2(a: &[Value]) -> Result<(&BigInt, &BigInt), DomainError> {
    match a {
        [Value::Int(x), Value::Int(y)] => Ok((x, y)),
        _ => Err(MISMATCH),
    }
}

fn str1(a: &[Value]) -> Result<&str, DomainError> {
    match a {
        [Value::Str(s)] => Ok(s),
        _ => Err(MISMATCH),
    }
}

fn list1(a: &[Value]) -> Result<&[BigInt], DomainError> {
    match a {
        [Value::List(l)] => Ok(l),
        _ => Err(MISMATCH),
    }
}

fn inc(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Int(int1(a)? + 1))
}

fn dbl(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Int(int1(a)? * 2))
}

fn neg(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Int(-int1(a)?.clone()))
}

fn abs(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Int(int1(a)?.abs()))
}

fn add(a: &[Value]) -> Result<Value, DomainError> {
    match a {
        [Value::Int(x), Value::Int(y)] => Ok(Value::Int(x + y)),
        [Value::Str(x), Value::Str(y)] => Ok(Value::Str(format!("{x}{y}"))),
        _ => Err(MISMATCH),
    }
}

fn sub(a: &[Value]) -> Result<Value, DomainError> {
    let (x, y) = int2(a)?;
    Ok(Value::Int(x - y))
}

fn mul(a: &[Value]) -> Result<Value, DomainError> {
    let (x, y) = int2(a)?;
    Ok(Value::Int(x * y))
}

fn floordiv(a: &[Value]) -> Result<Value, DomainError> {
    let (x, y) = int2(a)?;
    if y.is_zero() {
        return Err(DomainError("division by zero"));
    }
    Ok(Value::Int(x.div_floor(y)))
}

fn modulo(a: &[Value]) -> Result<Value, DomainError> {
    let (x, y) = int2(a)?;
    if y.is_zero() {
        return Err(DomainError("modulo by zero"));
    }
    Ok(Value::Int(x.mod_floor(y)))
}

fn eq(a: &[Value]) -> Result<Value, DomainError> {
    let (x, y) = int2(a)?;
    Ok(Value::Bool(x == y))
}

fn lt(a: &[Value]) -> Result<Value, DomainError> {
    let (x, y) = int2(a)?;
    Ok(Value::Bool(x < y))
}

fn not(a: &[Value]) -> Result<Value, DomainError> {
    match a {
        [Value::Bool(b)] => Ok(Value::Bool(!b)),
        _ => Err(MISMATCH),
    }
}

fn to_str(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Str(int1(a)?.to_string()))
}

fn len(a: &[Value]) -> Result<Value, DomainError> {
    match a {
        [Value::Str(s)] => Ok(Value::Int(BigInt::from(s.chars().count()))),
        [Value::List(l)] => Ok(Value::Int(BigInt::from(l.len()))),
        _ => Err(MISMATCH),
    }
}

fn upper(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Str(str1(a)?.to_uppercase()))
}

fn lower(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Str(str1(a)?.to_lowercase()))
}

fn strip(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Str(str1(a)?.trim().to_owned()))
}

fn sum(a: &[Value]) -> Result<Value, DomainError> {
    Ok(Value::Int(list1(a)?.iter().sum()))
}

fn max(a: &[Value]) -> Result<Value, DomainError> {
    list1(a)?
        .iter()
        .max()
        .map(|n| Value::Int(n.clone()))
        .ok_or(DomainError("max of empty list"))
}

fn min(a: &[Value]) -> Result<Value, DomainError> {
    list1(a)?
        .iter()
        .min()
        .map(|n| Value::Int(n.clone()))
        .ok_or(DomainError("min of empty list"))
}

fn head(a: &[Value]) -> Result<Value, DomainError> {
    list1(a)?
        .first()
        .map(|n| Value::Int(n.clone()))
        .ok_or(DomainError("head of empty list"))
}

fn sorted(a: &[Value]) -> Result<Value, DomainError> {
    let mut l = list1(a)?.to_vec();
    l.sort();
    Ok(Value::List(l))
}

fn reversed(a: &[Value]) -> Result<Value, DomainError> {
    let mut l = list1(a)?.to_vec();
    l.reverse();
    Ok(Value::List(l))
}

fn range(a: &[Value]) -> Result<Value, DomainError> {
    let n = int1(a)?;
    if n.is_negative() {
        return Ok(Value::List(Vec::new()));
    }
    match n.to_u64() {
        Some(n) if n <= RANGE_LIMIT => Ok(Value::List((0..n).map(BigInt::from).collect())),
        _ => Err(DomainError("range argument too large")),
    }
}

fn entry(name: &str, args: &[Type], ret: Type, semantics: Semantics) -> TypedInstruction {
    TypedInstruction {
        id: InstructionId::new(name),
        arg_types: args.to_vec(),
        return_type: ret,
        semantics,
    }
}

/// Every instruction the synthesizer knows, in roster order.
pub fn catalog() -> Vec<TypedInstruction> {
    use Type::*;
    vec![
        entry("inc", &[Int], Int, inc),
        entry("dbl", &[Int], Int, dbl),
        entry("u-", &[Int], Int, neg),
        entry("abs", &[Int], Int, abs),
        entry("+", &[Int, Int], Int, add),
        entry("-", &[Int, Int], Int, sub),
        entry("*", &[Int, Int], Int, mul),
        entry("//", &[Int, Int], Int, floordiv),
        entry("%", &[Int, Int], Int, modulo),
        entry("==", &[Int, Int], Bool, eq),
        entry("<", &[Int, Int], Bool, lt),
        entry("not", &[Bool], Bool, not),
        entry("str", &[Int], Str, to_str),
        entry("len", &[Str], Int, len),
        entry("upper", &[Str], Str, upper),
        entry("lower", &[Str], Str, lower),
        entry("strip", &[Str], Str, strip),
        entry("+", &[Str, Str], Str, add),
        entry("len", &[List], Int, len),
        entry("sum", &[List], Int, sum),
        entry("max", &[List], Int, max),
        entry("min", &[List], Int, min),
        entry("head", &[List], Int, head),
        entry("sorted", &[List], List, sorted),
        entry("reversed", &[List], List, reversed),
        entry("range", &[Int], List, range),
    ]
}

/// An ordered instruction roster. Roster order is the tie order among
/// candidates of equal depth and size.
#[derive(Debug, Clone)]
pub struct Dsl {
    instructions: Vec<TypedInstruction>,
}

impl Default for Dsl {
    fn default() -> Self {
        Dsl::standard()
    }
}

impl Dsl {
    pub fn standard() -> Dsl {
        Dsl {
            instructions: catalog(),
        }
    }

    pub fn new(instructions: Vec<TypedInstruction>) -> Result<Dsl> {
        if let Some(bad) = instructions.iter().find(|i| i.arity() == 0) {
            return Err(Error::Config(format!("instruction {} has no arguments", bad.id)));
        }
        Ok(Dsl { instructions })
    }

    /// All catalog overloads of the named instructions, in the order the
    /// names are given.
    pub fn from_names<S: AsRef<str>>(names: &[S]) -> Result<Dsl> {
        let cat = catalog();
        let mut out = Vec::new();
        for name in names {
            let name = name.as_ref();
            let before = out.len();
            out.extend(cat.iter().filter(|i| i.id.as_str() == name).cloned());
            if out.len() == before {
                return Err(Error::Config(format!("unknown instruction {name:?}")));
            }
        }
        Ok(Dsl { instructions: out })
    }

    /// Keeps only instructions belonging to the subset, preserving order.
    pub fn restrict(&self, subset: &InstructionSubset) -> Dsl {
        Dsl {
            instructions: self
                .instructions
                .iter()
                .filter(|i| subset.contains(i.id.as_str()))
                .cloned()
                .collect(),
        }
    }

    pub fn instructions(&self) -> &[TypedInstruction] {
        &self.instructions
    }

    pub fn ids(&self) -> BTreeSet<InstructionId> {
        self.instructions.iter().map(|i| i.id.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.instructions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instructions.is_empty()
    }

    /// One signature per line.
    pub fn manifest(&self) -> String {
        let mut out = String::new();
        for i in &self.instructions {
            let _ = writeln!(out, "{}", i.signature());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(name: &str, args: &[Value]) -> Result<Value, DomainError> {
        let ty: Vec<Type> = args.iter().map(Value::ty).collect();
        let i = catalog()
            .into_iter()
            .find(|i| i.id.as_str() == name && i.arg_types == ty)
            .unwrap();
        (i.semantics)(args)
    }

    #[test]
    fn roster_is_large_enough() {
        let d = Dsl::standard();
        assert!(d.ids().len() >= 15);
        let types: BTreeSet<Type> = d
            .instructions()
            .iter()
            .flat_map(|i| i.arg_types.iter().copied())
            .collect();
        assert_eq!(types.len(), 4);
    }

    #[test]
    fn python_semantics() {
        assert_eq!(call("//", &[Value::int(-7), Value::int(2)]), Ok(Value::int(-4)));
        assert_eq!(call("%", &[Value::int(-7), Value::int(2)]), Ok(Value::int(1)));
        assert!(call("//", &[Value::int(1), Value::int(0)]).is_err());
        assert!(call("%", &[Value::int(1), Value::int(0)]).is_err());
        assert_eq!(call("len", &[Value::str("héllo")]), Ok(Value::int(5)));
        assert_eq!(call("len", &[Value::list(&[4, 5])]), Ok(Value::int(2)));
        assert_eq!(
            call("+", &[Value::str("ab"), Value::str("c")]),
            Ok(Value::str("abc"))
        );
        assert!(call("head", &[Value::list(&[])]).is_err());
        assert!(call("max", &[Value::list(&[])]).is_err());
        assert_eq!(call("range", &[Value::int(-3)]), Ok(Value::list(&[])));
        assert_eq!(call("range", &[Value::int(3)]), Ok(Value::list(&[0, 1, 2])));
        assert!(call("range", &[Value::int(1_000_000)]).is_err());
        assert_eq!(call("strip", &[Value::str("  x ")]), Ok(Value::str("x")));
        assert_eq!(call("u-", &[Value::int(4)]), Ok(Value::int(-4)));
    }

    #[test]
    fn semantics_reject_wrong_types() {
        assert_eq!(call("inc", &[Value::int(1)]), Ok(Value::int(2)));
        assert_eq!(inc(&[Value::str("x")]), Err(MISMATCH));
        assert_eq!(add(&[Value::int(1), Value::str("x")]), Err(MISMATCH));
    }

    #[test]
    fn from_names_keeps_given_order() {
        let d = Dsl::from_names(&["dbl", "inc", "+"]).unwrap();
        let names: Vec<&str> = d.instructions().iter().map(|i| i.id.as_str()).collect();
        assert_eq!(names, ["dbl", "inc", "+", "+"]);
        assert!(Dsl::from_names(&["nope"]).is_err());
    }

    #[test]
    fn manifest_lists_signatures() {
        let m = Dsl::from_names(&["len"]).unwrap().manifest();
        assert_eq!(m, "len: str -> int\nlen: list -> int\n");
    }
}
