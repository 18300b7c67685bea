//! Operator-precedence parser for Python expressions.
//!
//! Only expressions are parsed. Statements are split off beforehand by the
//! fragment splitter, so the parser sees things like `len(a) + 1` or
//! `", ".join(sorted(names))` (with string literals already replaced).

use std::fmt;

use super::lexer::{is_keyword, tokenize, Token};
use super::preprocess::is_placeholder;
use super::FrontendConfig;
use crate::digram::InstructionId;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    UnexpectedChar(char),
    UnexpectedToken(String),
    UnexpectedEnd,
    Unbalanced,
    TooDeep,
    Empty,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseError::UnexpectedToken(t) => write!(f, "unexpected token {t}"),
            ParseError::UnexpectedEnd => f.write_str("unexpected end of expression"),
            ParseError::Unbalanced => f.write_str("unbalanced brackets"),
            ParseError::TooDeep => f.write_str("nesting exceeds depth cap"),
            ParseError::Empty => f.write_str("empty fragment"),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiteralKind {
    Number,
    Bool,
    None,
    Ellipsis,
}

/// Syntactic structures that are not instructions themselves but may contain
/// instruction applications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupKind {
    Tuple,
    List,
    Set,
    Dict,
    Comprehension,
    Subscript,
    Slice,
    /// `expr.name` without a call.
    Attribute(String),
    /// Call whose callee is not a (dotted) name, e.g. `f(x)(y)`.
    IndirectCall,
    Conditional,
    Lambda,
    Await,
    Yield,
    NamedExpr,
    Starred,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ast {
    /// Function or method call. For methods the receiver is `args[0]`.
    /// `qualifier` holds the dotted receiver text when the receiver is a
    /// plain name chain (`np` in `np.abs(x)`).
    Call {
        name: String,
        qualifier: Option<String>,
        is_method: bool,
        args: Vec<Ast>,
    },
    Op {
        symbol: String,
        operands: Vec<Ast>,
    },
    Var(String),
    Literal(LiteralKind),
    Group {
        kind: GroupKind,
        items: Vec<Ast>,
    },
}

impl Ast {
    pub fn var(name: &str) -> Ast {
        Ast::Var(name.to_string())
    }

    pub fn call(name: &str, args: Vec<Ast>) -> Ast {
        Ast::Call {
            name: name.to_string(),
            qualifier: None,
            is_method: false,
            args,
        }
    }

    pub fn method(receiver: Ast, name: &str, mut args: Vec<Ast>) -> Ast {
        let qualifier = dotted_name(&receiver);
        args.insert(0, receiver);
        Ast::Call {
            name: name.to_string(),
            qualifier,
            is_method: true,
            args,
        }
    }

    pub fn op(symbol: &str, operands: Vec<Ast>) -> Ast {
        Ast::Op {
            symbol: symbol.to_string(),
            operands,
        }
    }

    pub fn children(&self) -> &[Ast] {
        match self {
            Ast::Call { args, .. } => args,
            Ast::Op { operands, .. } => operands,
            Ast::Group { items, .. } => items,
            Ast::Var(_) | Ast::Literal(_) => &[],
        }
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Ast)) {
        visit(self);
        for child in self.children() {
            child.walk(visit);
        }
    }
}

/// `a.b.c` as a string when `ast` is a pure dotted name chain.
fn dotted_name(ast: &Ast) -> Option<String> {
    match ast {
        Ast::Var(name) => Some(name.clone()),
        Ast::Group {
            kind: GroupKind::Attribute(attr),
            items,
        } => dotted_name(&items[0]).map(|base| format!("{base}.{attr}")),
        _ => None,
    }
}

/// The instruction a node applies, if any, under the default labelling
/// rules.
pub fn instruction_label(node: &Ast) -> Option<InstructionId> {
    instruction_label_with(node, &FrontendConfig::default())
}

/// Operators are labelled by their symbol (`u-`, `u+`, `~` and `not` for
/// the unary forms), calls by their final name segment (or the full dotted
/// name when `collapse_dotted` is off). Subscripts become `getitem` only
/// when `subscripts_as_getitem` is set.
pub fn instruction_label_with(node: &Ast, cfg: &FrontendConfig) -> Option<InstructionId> {
    match node {
        Ast::Op { symbol, .. } => Some(InstructionId::new(symbol)),
        Ast::Call {
            name, qualifier, ..
        } => match qualifier {
            Some(q) if !cfg.collapse_dotted => Some(InstructionId::new(&format!("{q}.{name}"))),
            _ => Some(InstructionId::new(name)),
        },
        Ast::Group {
            kind: GroupKind::Subscript,
            ..
        } if cfg.subscripts_as_getitem => Some(InstructionId::new("getitem")),
        _ => None,
    }
}

const DEFAULT_MAX_NESTING: usize = 64;

pub fn parse_expression(text: &str) -> Result<Ast, ParseError> {
    parse_expression_with(text, DEFAULT_MAX_NESTING)
}

pub fn parse_expression_with(text: &str, max_nesting: usize) -> Result<Ast, ParseError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ParseError::Empty);
    }
    check_balance(&tokens)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        depth: 0,
        max_depth: max_nesting.saturating_mul(4).max(16),
    };
    let ast = parser.expr_list(Parser::star_or_expr)?;
    match parser.peek() {
        None => Ok(ast),
        Some(tok) => Err(ParseError::UnexpectedToken(describe(tok))),
    }
}

fn check_balance(tokens: &[Token]) -> Result<(), ParseError> {
    let mut stack = Vec::new();
    for tok in tokens {
        if let Token::Punct(p) = tok {
            match *p {
                "(" | "[" | "{" => stack.push(*p),
                ")" | "]" | "}" => {
                    let open = match *p {
                        ")" => "(",
                        "]" => "[",
                        _ => "{",
                    };
                    if stack.pop() != Some(open) {
                        return Err(ParseError::Unbalanced);
                    }
                }
                _ => {}
            }
        }
    }
    if stack.is_empty() {
        Ok(())
    } else {
        Err(ParseError::Unbalanced)
    }
}

fn describe(tok: &Token) -> String {
    match tok {
        Token::Name(n) => n.clone(),
        Token::Number => "<number>".to_string(),
        Token::Punct(p) => (*p).to_string(),
    }
}

// Binding powers; larger binds tighter.
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_NOT: u8 = 5;
const PREC_CMP: u8 = 6;
const PREC_BITOR: u8 = 7;

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    depth: usize,
    max_depth: usize,
}

type PResult = Result<Ast, ParseError>;

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, offset: usize) -> Option<&Token> {
        self.tokens.get(self.pos + offset)
    }

    fn at_punct(&self, p: &str) -> bool {
        self.peek().is_some_and(|t| t.is_punct(p))
    }

    fn at_name(&self, n: &str) -> bool {
        self.peek().is_some_and(|t| t.is_name(n))
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        if self.at_punct(p) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_name(&mut self, n: &str) -> bool {
        if self.at_name(n) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_punct(&mut self, p: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.is_punct(p) => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(ParseError::UnexpectedToken(describe(t))),
            None => Err(ParseError::UnexpectedEnd),
        }
    }

    fn enter(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > self.max_depth {
            Err(ParseError::TooDeep)
        } else {
            Ok(())
        }
    }

    fn leave(&mut self) {
        self.depth -= 1;
    }

    /// True when the next token can start an expression (used to decide
    /// whether a trailing comma ends a list).
    fn at_expr_start(&self) -> bool {
        match self.peek() {
            None => false,
            Some(Token::Number) => true,
            Some(Token::Name(n)) => {
                !is_keyword(n)
                    || matches!(
                        n.as_str(),
                        "True" | "False" | "None" | "not" | "lambda" | "await" | "yield"
                    )
            }
            Some(Token::Punct(p)) => {
                matches!(*p, "(" | "[" | "{" | "-" | "+" | "~" | "*" | "**" | "...")
            }
        }
    }

    /// Comma-separated sequence; a single element without a trailing comma
    /// is returned unwrapped.
    fn expr_list(&mut self, item: fn(&mut Self) -> PResult) -> PResult {
        let first = item(self)?;
        if !self.at_punct(",") {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.eat_punct(",") {
            if !self.at_expr_start() {
                break;
            }
            items.push(item(self)?);
        }
        Ok(Ast::Group {
            kind: GroupKind::Tuple,
            items,
        })
    }

    fn star_or_expr(&mut self) -> PResult {
        if self.eat_punct("*") {
            let inner = self.binary(PREC_BITOR)?;
            return Ok(Ast::Group {
                kind: GroupKind::Starred,
                items: vec![inner],
            });
        }
        self.named_expr()
    }

    fn named_expr(&mut self) -> PResult {
        if matches!(self.peek(), Some(Token::Name(_)))
            && self.peek_at(1).is_some_and(|t| t.is_punct(":="))
        {
            let target = self.atom()?;
            self.pos += 1;
            let value = self.expr()?;
            return Ok(Ast::Group {
                kind: GroupKind::NamedExpr,
                items: vec![target, value],
            });
        }
        self.expr()
    }

    /// Full expression: lambda, conditional expression, or disjunction.
    fn expr(&mut self) -> PResult {
        self.enter()?;
        let result = self.expr_inner();
        self.leave();
        result
    }

    fn expr_inner(&mut self) -> PResult {
        if self.eat_name("lambda") {
            // parameters are skipped; defaults may not contain a bare ':'
            let mut depth = 0usize;
            loop {
                match self.peek() {
                    None => return Err(ParseError::UnexpectedEnd),
                    Some(Token::Punct(p)) if *p == ":" && depth == 0 => break,
                    Some(Token::Punct(p)) if matches!(*p, "(" | "[" | "{") => depth += 1,
                    Some(Token::Punct(p)) if matches!(*p, ")" | "]" | "}") => {
                        depth = depth.saturating_sub(1)
                    }
                    _ => {}
                }
                self.pos += 1;
            }
            self.pos += 1;
            let body = self.expr()?;
            return Ok(Ast::Group {
                kind: GroupKind::Lambda,
                items: vec![body],
            });
        }
        let body = self.binary(PREC_OR)?;
        if self.eat_name("if") {
            let cond = self.binary(PREC_OR)?;
            if !self.eat_name("else") {
                return Err(match self.peek() {
                    Some(t) => ParseError::UnexpectedToken(describe(t)),
                    None => ParseError::UnexpectedEnd,
                });
            }
            let orelse = self.expr()?;
            return Ok(Ast::Group {
                kind: GroupKind::Conditional,
                items: vec![body, cond, orelse],
            });
        }
        Ok(body)
    }

    /// Binary operator at the cursor with its precedence and token length.
    fn binary_op(&self) -> Option<(&'static str, u8, usize)> {
        let tok = self.peek()?;
        let simple = |sym: &'static str, prec: u8| Some((sym, prec, 1));
        match tok {
            Token::Name(n) => match n.as_str() {
                "or" => simple("or", PREC_OR),
                "and" => simple("and", PREC_AND),
                "in" => simple("in", PREC_CMP),
                "not" if self.peek_at(1).is_some_and(|t| t.is_name("in")) => {
                    Some(("not in", PREC_CMP, 2))
                }
                "is" if self.peek_at(1).is_some_and(|t| t.is_name("not")) => {
                    Some(("is not", PREC_CMP, 2))
                }
                "is" => simple("is", PREC_CMP),
                _ => None,
            },
            Token::Punct(p) => match *p {
                "<" | ">" | "<=" | ">=" | "==" | "!=" => simple(p, PREC_CMP),
                "<>" => simple("!=", PREC_CMP),
                "|" => simple("|", PREC_BITOR),
                "^" => simple("^", 8),
                "&" => simple("&", 9),
                "<<" | ">>" => simple(p, 10),
                "+" | "-" => simple(p, 11),
                "*" | "@" | "/" | "//" | "%" => simple(p, 12),
                _ => None,
            },
            Token::Number => None,
        }
    }

    /// Precedence climbing over the left-associative binary levels.
    /// Comparison chains nest left-associatively like any other level.
    fn binary(&mut self, min_prec: u8) -> PResult {
        self.enter()?;
        let result = self.binary_inner(min_prec);
        self.leave();
        result
    }

    fn binary_inner(&mut self, min_prec: u8) -> PResult {
        let mut lhs = if self.at_name("not") && min_prec <= PREC_NOT {
            self.pos += 1;
            let operand = self.binary(PREC_NOT)?;
            Ast::op("not", vec![operand])
        } else {
            self.unary()?
        };
        while let Some((symbol, prec, len)) = self.binary_op() {
            if prec < min_prec {
                break;
            }
            self.pos += len;
            let rhs = self.binary(prec + 1)?;
            lhs = Ast::op(symbol, vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> PResult {
        let symbol = match self.peek() {
            Some(Token::Punct("-")) => "u-",
            Some(Token::Punct("+")) => "u+",
            Some(Token::Punct("~")) => "~",
            _ => return self.power(),
        };
        self.pos += 1;
        self.enter()?;
        let operand = self.unary();
        self.leave();
        Ok(Ast::op(symbol, vec![operand?]))
    }

    fn power(&mut self) -> PResult {
        let base = if self.eat_name("await") {
            let inner = self.primary()?;
            Ast::Group {
                kind: GroupKind::Await,
                items: vec![inner],
            }
        } else {
            self.primary()?
        };
        if self.eat_punct("**") {
            self.enter()?;
            let exponent = self.unary();
            self.leave();
            return Ok(Ast::op("**", vec![base, exponent?]));
        }
        Ok(base)
    }

    fn primary(&mut self) -> PResult {
        let mut node = self.atom()?;
        loop {
            if self.eat_punct("(") {
                let args = self.call_args()?;
                node = make_call(node, args);
            } else if self.eat_punct("[") {
                let index = self.subscript_items()?;
                self.expect_punct("]")?;
                let mut items = vec![node];
                items.extend(index);
                node = Ast::Group {
                    kind: GroupKind::Subscript,
                    items,
                };
            } else if self.at_punct(".") {
                self.pos += 1;
                match self.peek() {
                    Some(Token::Name(name)) => {
                        let name = name.clone();
                        self.pos += 1;
                        node = Ast::Group {
                            kind: GroupKind::Attribute(name),
                            items: vec![node],
                        };
                    }
                    Some(t) => return Err(ParseError::UnexpectedToken(describe(t))),
                    None => return Err(ParseError::UnexpectedEnd),
                }
            } else {
                return Ok(node);
            }
        }
    }

    fn call_args(&mut self) -> Result<Vec<Ast>, ParseError> {
        let mut args = Vec::new();
        while !self.eat_punct(")") {
            if self.eat_punct("**") || self.eat_punct("*") {
                // unpacked arguments still feed the callee directly
                args.push(self.expr()?);
            } else if matches!(self.peek(), Some(Token::Name(_)))
                && self.peek_at(1).is_some_and(|t| t.is_punct("="))
            {
                self.pos += 2;
                args.push(self.expr()?);
            } else {
                let arg = self.named_expr()?;
                if self.at_name("for") || self.at_name("async") {
                    args.push(self.comprehension(arg)?);
                } else {
                    args.push(arg);
                }
            }
            if !self.eat_punct(",") {
                self.expect_punct(")")?;
                break;
            }
        }
        Ok(args)
    }

    fn subscript_items(&mut self) -> Result<Vec<Ast>, ParseError> {
        let mut items = Vec::new();
        loop {
            items.push(self.slice_item()?);
            if !self.eat_punct(",") || self.at_punct("]") {
                break;
            }
        }
        Ok(items)
    }

    fn slice_item(&mut self) -> PResult {
        let mut parts = Vec::new();
        let mut is_slice = false;
        if !self.at_punct(":") {
            parts.push(self.star_or_expr()?);
        }
        while self.eat_punct(":") {
            is_slice = true;
            if !self.at_punct(":") && !self.at_punct("]") && !self.at_punct(",") {
                parts.push(self.expr()?);
            }
        }
        if is_slice {
            Ok(Ast::Group {
                kind: GroupKind::Slice,
                items: parts,
            })
        } else {
            Ok(parts.pop().expect("non-slice item has one part"))
        }
    }

    /// `for targets in iter [if cond]...` clauses following `element`.
    fn comprehension(&mut self, element: Ast) -> PResult {
        let mut items = vec![element];
        loop {
            self.eat_name("async");
            if !self.eat_name("for") {
                break;
            }
            let target = self.expr_list(|p| p.binary(PREC_BITOR))?;
            if !self.eat_name("in") {
                return Err(match self.peek() {
                    Some(t) => ParseError::UnexpectedToken(describe(t)),
                    None => ParseError::UnexpectedEnd,
                });
            }
            items.push(target);
            items.push(self.binary(PREC_OR)?);
            while self.eat_name("if") {
                items.push(self.binary(PREC_OR)?);
            }
        }
        Ok(Ast::Group {
            kind: GroupKind::Comprehension,
            items,
        })
    }

    fn atom(&mut self) -> PResult {
        self.enter()?;
        let result = self.atom_inner();
        self.leave();
        result
    }

    fn atom_inner(&mut self) -> PResult {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return Err(ParseError::UnexpectedEnd),
        };
        self.pos += 1;
        match tok {
            Token::Number => Ok(Ast::Literal(LiteralKind::Number)),
            Token::Name(name) => match name.as_str() {
                "True" | "False" => Ok(Ast::Literal(LiteralKind::Bool)),
                "None" => Ok(Ast::Literal(LiteralKind::None)),
                "yield" => {
                    self.eat_name("from");
                    let mut items = Vec::new();
                    if self.at_expr_start() {
                        items.push(self.expr_list(Self::star_or_expr)?);
                    }
                    Ok(Ast::Group {
                        kind: GroupKind::Yield,
                        items,
                    })
                }
                n if is_keyword(n) => Err(ParseError::UnexpectedToken(name)),
                n if is_placeholder(n) => {
                    // implicit concatenation across lines inside brackets
                    while matches!(self.peek(), Some(Token::Name(m)) if is_placeholder(m)) {
                        self.pos += 1;
                    }
                    Ok(Ast::Var(name))
                }
                _ => Ok(Ast::Var(name)),
            },
            Token::Punct("...") => Ok(Ast::Literal(LiteralKind::Ellipsis)),
            Token::Punct("(") => self.paren(),
            Token::Punct("[") => self.bracket_display("]", GroupKind::List),
            Token::Punct("{") => self.brace(),
            Token::Punct(p) => Err(ParseError::UnexpectedToken(p.to_string())),
        }
    }

    fn paren(&mut self) -> PResult {
        if self.eat_punct(")") {
            return Ok(Ast::Group {
                kind: GroupKind::Tuple,
                items: Vec::new(),
            });
        }
        let first = self.star_or_expr()?;
        if self.at_name("for") || self.at_name("async") {
            let comp = self.comprehension(first)?;
            self.expect_punct(")")?;
            return Ok(comp);
        }
        if self.eat_punct(")") {
            return Ok(first);
        }
        let mut items = vec![first];
        while self.eat_punct(",") {
            if self.at_punct(")") {
                break;
            }
            items.push(self.star_or_expr()?);
        }
        self.expect_punct(")")?;
        Ok(Ast::Group {
            kind: GroupKind::Tuple,
            items,
        })
    }

    fn bracket_display(&mut self, close: &str, kind: GroupKind) -> PResult {
        let mut items = Vec::new();
        if self.eat_punct(close) {
            return Ok(Ast::Group { kind, items });
        }
        let first = self.star_or_expr()?;
        if self.at_name("for") || self.at_name("async") {
            let comp = self.comprehension(first)?;
            self.expect_punct(close)?;
            return Ok(comp);
        }
        items.push(first);
        while self.eat_punct(",") {
            if self.at_punct(close) {
                break;
            }
            items.push(self.star_or_expr()?);
        }
        self.expect_punct(close)?;
        Ok(Ast::Group { kind, items })
    }

    fn brace(&mut self) -> PResult {
        if self.eat_punct("}") {
            return Ok(Ast::Group {
                kind: GroupKind::Dict,
                items: Vec::new(),
            });
        }
        let mut items = Vec::new();
        let mut kind = GroupKind::Set;
        loop {
            if self.eat_punct("**") {
                kind = GroupKind::Dict;
                items.push(self.binary(PREC_BITOR)?);
            } else {
                let key = self.star_or_expr()?;
                if self.eat_punct(":") {
                    kind = GroupKind::Dict;
                    items.push(key);
                    items.push(self.expr()?);
                } else {
                    items.push(key);
                }
            }
            if items.len() <= 2 && (self.at_name("for") || self.at_name("async")) {
                let element = if items.len() == 1 {
                    items.pop().unwrap()
                } else {
                    Ast::Group {
                        kind: GroupKind::Tuple,
                        items: std::mem::take(&mut items),
                    }
                };
                let comp = self.comprehension(element)?;
                self.expect_punct("}")?;
                return Ok(comp);
            }
            if !self.eat_punct(",") || self.at_punct("}") {
                break;
            }
        }
        self.expect_punct("}")?;
        Ok(Ast::Group { kind, items })
    }
}

fn make_call(callee: Ast, args: Vec<Ast>) -> Ast {
    match callee {
        Ast::Var(name) if !is_placeholder(&name) => Ast::Call {
            name,
            qualifier: None,
            is_method: false,
            args,
        },
        Ast::Group {
            kind: GroupKind::Attribute(name),
            mut items,
        } => {
            let receiver = items.pop().expect("attribute has a receiver");
            Ast::method(receiver, &name, args)
        }
        other => {
            let mut items = vec![other];
            items.extend(args);
            Ast::Group {
                kind: GroupKind::IndirectCall,
                items,
            }
        }
    }
}
