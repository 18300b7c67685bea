use std::fmt;
use std::sync::Arc;

use super::dsl::{Semantics, TypedInstruction};
use super::value::{DomainError, Type, Value};
use crate::digram::{Digram, InstructionId};

/// A typed expression tree. Cloning is cheap; subtrees are shared.
#[derive(Clone)]
pub struct Candidate(Arc<Node>);

struct Node {
    kind: Kind,
    ty: Type,
    depth: usize,
    size: usize,
}

enum Kind {
    Input(usize),
    Const(Value),
    App {
        id: InstructionId,
        semantics: Semantics,
        args: Vec<Candidate>,
    },
}

impl Candidate {
    pub fn input(slot: usize, ty: Type) -> Candidate {
        Candidate::leaf(Kind::Input(slot), ty)
    }

    pub fn constant(value: Value) -> Candidate {
        let ty = value.ty();
        Candidate::leaf(Kind::Const(value), ty)
    }

    fn leaf(kind: Kind, ty: Type) -> Candidate {
        Candidate(Arc::new(Node {
            kind,
            ty,
            depth: 0,
            size: 1,
        }))
    }

    /// Applies an instruction, or `None` when argument types do not match.
    pub fn apply(instr: &TypedInstruction, args: &[Candidate]) -> Option<Candidate> {
        if args.len() != instr.arity()
            || args.iter().zip(&instr.arg_types).any(|(a, t)| a.ty() != *t)
        {
            return None;
        }
        Some(Candidate::apply_unchecked(instr, args))
    }

    pub(crate) fn apply_unchecked(instr: &TypedInstruction, args: &[Candidate]) -> Candidate {
        let depth = 1 + args.iter().map(Candidate::depth).max().unwrap_or(0);
        let size = 1 + args.iter().map(Candidate::size).sum::<usize>();
        Candidate(Arc::new(Node {
            kind: Kind::App {
                id: instr.id.clone(),
                semantics: instr.semantics,
                args: args.to_vec(),
            },
            ty: instr.return_type,
            depth,
            size,
        }))
    }

    pub fn ty(&self) -> Type {
        self.0.ty
    }

    /// Longest instruction chain from a leaf to the root; leaves are 0.
    pub fn depth(&self) -> usize {
        self.0.depth
    }

    /// Number of nodes, leaves included.
    pub fn size(&self) -> usize {
        self.0.size
    }

    /// Root instruction, `None` for leaves.
    pub fn root(&self) -> Option<&InstructionId> {
        match &self.0.kind {
            Kind::App { id, .. } => Some(id),
            _ => None,
        }
    }

    pub fn args(&self) -> &[Candidate] {
        match &self.0.kind {
            Kind::App { args, .. } => args,
            _ => &[],
        }
    }

    pub fn is_leaf(&self) -> bool {
        self.root().is_none()
    }

    pub fn eval(&self, inputs: &[Value]) -> Result<Value, DomainError> {
        match &self.0.kind {
            Kind::Input(i) => inputs
                .get(*i)
                .cloned()
                .ok_or(DomainError("missing input")),
            Kind::Const(v) => Ok(v.clone()),
            Kind::App { semantics, args, .. } => {
                let vals = args
                    .iter()
                    .map(|a| a.eval(inputs))
                    .collect::<Result<Vec<_>, _>>()?;
                semantics(&vals)
            }
        }
    }

    /// Every `(child instruction, parent instruction)` pair in the tree, one
    /// per edge.
    pub fn digrams(&self) -> Vec<Digram> {
        let mut out = Vec::new();
        self.collect_digrams(&mut out);
        out
    }

    fn collect_digrams(&self, out: &mut Vec<Digram>) {
        if let Kind::App { id, args, .. } = &self.0.kind {
            for a in args {
                if let Some(child) = a.root() {
                    out.push(Digram::new(child.clone(), id.clone()));
                }
                a.collect_digrams(out);
            }
        }
    }

    /// Call syntax, e.g. `dbl(inc(x0))`.
    pub fn to_call_string(&self) -> String {
        match &self.0.kind {
            Kind::Input(i) => format!("x{i}"),
            Kind::Const(v) => v.to_string(),
            Kind::App { id, args, .. } => {
                let inner: Vec<String> = args.iter().map(Candidate::to_call_string).collect();
                format!("{id}({})", inner.join(", "))
            }
        }
    }
}

/// Prefix notation, e.g. `(dbl (inc x0))`.
impl fmt::Display for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            Kind::Input(i) => write!(f, "x{i}"),
            Kind::Const(v) => write!(f, "{v}"),
            Kind::App { id, args, .. } => {
                write!(f, "({id}")?;
                for a in args {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Debug for Candidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialEq for Candidate {
    fn eq(&self, other: &Candidate) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&self.0.kind, &other.0.kind) {
            (Kind::Input(a), Kind::Input(b)) => a == b && self.ty() == other.ty(),
            (Kind::Const(a), Kind::Const(b)) => a == b,
            (Kind::App { id: a, args: x, .. }, Kind::App { id: b, args: y, .. }) => {
                a == b && self.ty() == other.ty() && x == y
            }
            _ => false,
        }
    }
}

impl Eq for Candidate {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::synth::dsl::Dsl;

    fn instr(name: &str) -> TypedInstruction {
        Dsl::from_names(&[name]).unwrap().instructions()[0].clone()
    }

    #[test]
    fn shape_and_rendering() {
        let x = Candidate::input(0, Type::Int);
        let c = Candidate::apply(&instr("dbl"), &[Candidate::apply(&instr("inc"), &[x]).unwrap()])
            .unwrap();
        assert_eq!(c.depth(), 2);
        assert_eq!(c.size(), 3);
        assert_eq!(c.to_string(), "(dbl (inc x0))");
        assert_eq!(c.to_call_string(), "dbl(inc(x0))");
        assert_eq!(c.eval(&[Value::int(3)]), Ok(Value::int(8)));
        assert_eq!(c.digrams(), vec![Digram::new("inc", "dbl")]);
    }

    #[test]
    fn type_mismatch_rejected() {
        let s = Candidate::constant(Value::str(""));
        assert!(Candidate::apply(&instr("inc"), &[s]).is_none());
    }

    #[test]
    fn depth_is_longest_chain() {
        let x = Candidate::input(0, Type::Int);
        let one = Candidate::constant(Value::int(1));
        let inc = Candidate::apply(&instr("inc"), std::slice::from_ref(&x)).unwrap();
        let plus = Candidate::apply(&instr("+"), &[one, inc]).unwrap();
        assert_eq!(plus.depth(), 2);
        assert_eq!(plus.size(), 4);
        assert_eq!(plus.to_string(), "(+ 1 (inc x0))");
        assert_eq!(plus.digrams(), vec![Digram::new("inc", "+")]);
    }
}
