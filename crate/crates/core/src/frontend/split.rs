//! Splitting normalized source text into expression fragments.

use std::sync::Arc;

use super::lexer::{is_keyword, tokenize, Token};
use super::preprocess::NormalizedText;

/// One candidate expression taken from a source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fragment {
    /// Path of the originating file; empty when split from free text.
    pub file: Arc<str>,
    /// 1-based line on which the enclosing statement starts.
    pub line: usize,
    pub text: String,
}

/// A logical line: physical lines joined across open brackets and
/// backslash continuations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalLine {
    pub line: usize,
    pub indent: usize,
    pub text: String,
    /// Deepest bracket nesting seen on the line.
    pub max_nesting: usize,
}

/// Split result before the "can it hold a digram" filter is applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawFragment {
    pub line: usize,
    pub text: String,
    /// True when the fragment has an operator or at least two call sites.
    pub pairable: bool,
    /// True when the enclosing logical line exceeded the nesting cap.
    pub too_deep: bool,
}

/// A top-level function: a `def` that is not nested in another `def`.
/// Methods directly inside a class count as top-level functions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSpan {
    pub name: String,
    /// Line of the `def` keyword.
    pub start_line: usize,
    /// Last line (inclusive) belonging to the body.
    pub end_line: usize,
}

pub const DEFAULT_MAX_NESTING: usize = 64;

/// Expression fragments that may contain at least two instructions.
pub fn split_expressions(text: &NormalizedText) -> Vec<Fragment> {
    raw_fragments(text, DEFAULT_MAX_NESTING)
        .into_iter()
        .filter(|f| f.pairable && !f.too_deep)
        .map(|f| Fragment {
            file: Arc::from(""),
            line: f.line,
            text: f.text,
        })
        .collect()
}

/// Every expression fragment with its filter flags.
pub fn raw_fragments(text: &NormalizedText, max_nesting: usize) -> Vec<RawFragment> {
    let mut out = Vec::new();
    for logical in logical_lines(text.as_str()) {
        let too_deep = logical.max_nesting > max_nesting;
        for stmt in split_top_level(&logical.text, ';') {
            for expr in statement_expressions(stmt) {
                for part in split_tuple(&expr) {
                    let part = part.trim();
                    if part.is_empty() {
                        continue;
                    }
                    out.push(RawFragment {
                        line: logical.line,
                        text: part.to_string(),
                        pairable: may_hold_two_instructions(part),
                        too_deep,
                    });
                }
            }
        }
    }
    out
}

pub fn logical_lines(text: &str) -> Vec<LogicalLine> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start_line = 0usize;
    let mut indent = 0usize;
    let mut depth = 0usize;
    let mut max_nesting = 0usize;
    let mut continued = false;

    for (idx, raw) in text.split('\n').enumerate() {
        let line_no = idx + 1;
        let physical = raw.trim_end_matches('\r');
        let trimmed = physical.trim_start();
        let joining = depth > 0 || continued;
        if joining && depth > 0 && starts_block(trimmed) {
            // unclosed bracket: do not swallow the next definition
            flush(&mut out, &mut current, start_line, indent, max_nesting);
            depth = 0;
        }
        if !(depth > 0 || continued) {
            flush(&mut out, &mut current, start_line, indent, max_nesting);
            start_line = line_no;
            indent = physical.len() - trimmed.len();
            max_nesting = 0;
        } else {
            current.push(' ');
        }
        let mut body = physical;
        continued = false;
        if let Some(stripped) = body.trim_end().strip_suffix('\\') {
            body = stripped;
            continued = true;
        }
        for c in body.chars() {
            match c {
                '(' | '[' | '{' => {
                    depth += 1;
                    max_nesting = max_nesting.max(depth);
                }
                ')' | ']' | '}' => depth = depth.saturating_sub(1),
                _ => {}
            }
        }
        current.push_str(if current.is_empty() { body.trim_start() } else { body });
    }
    flush(&mut out, &mut current, start_line, indent, max_nesting);
    out
}

fn starts_block(trimmed: &str) -> bool {
    ["def ", "class ", "async def ", "@"]
        .iter()
        .any(|k| trimmed.starts_with(k))
}

fn flush(
    out: &mut Vec<LogicalLine>,
    current: &mut String,
    line: usize,
    indent: usize,
    max_nesting: usize,
) {
    let text = std::mem::take(current);
    let text = text.trim();
    if !text.is_empty() {
        out.push(LogicalLine {
            line,
            indent,
            text: text.to_string(),
            max_nesting,
        });
    }
}

/// Top-level `def` spans, computed from indentation of logical lines.
pub fn function_spans(text: &NormalizedText) -> Vec<FunctionSpan> {
    let lines = logical_lines(text.as_str());
    let physical: Vec<&str> = text.as_str().split('\n').collect();
    let mut spans = Vec::new();
    let mut open: Option<(FunctionSpan, usize)> = None;
    for (i, logical) in lines.iter().enumerate() {
        if let Some((span, def_indent)) = open.as_mut() {
            if logical.indent > *def_indent {
                span.end_line = last_line_of(&lines, i, &physical);
                continue;
            }
            spans.push(span.clone());
            open = None;
        }
        let header = logical
            .text
            .strip_prefix("async ")
            .unwrap_or(&logical.text);
        if let Some(rest) = header.strip_prefix("def ") {
            let name: String = rest
                .chars()
                .take_while(|c| *c == '_' || c.is_alphanumeric())
                .collect();
            let span = FunctionSpan {
                name,
                start_line: logical.line,
                end_line: last_line_of(&lines, i, &physical),
            };
            open = Some((span, logical.indent));
        }
    }
    if let Some((span, _)) = open {
        spans.push(span);
    }
    spans
}

/// Last physical line covered by logical line `i`, ignoring trailing blank
/// lines.
fn last_line_of(lines: &[LogicalLine], i: usize, physical: &[&str]) -> usize {
    let mut end = match lines.get(i + 1) {
        Some(next) => next.line - 1,
        None => physical.len(),
    };
    while end > lines[i].line && physical[end - 1].trim().is_empty() {
        end -= 1;
    }
    end
}

/// Splits at `sep` occurring outside brackets.
fn split_top_level(text: &str, sep: char) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth = depth.saturating_sub(1),
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    parts.push(&text[start..]);
    parts
}

/// Byte offset of the colon that ends a compound statement header.
fn header_colon(text: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    let mut lambda_colons = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth = depth.saturating_sub(1),
            ':' if depth == 0 && bytes.get(i + 1) != Some(&b'=') => {
                if lambda_colons > 0 {
                    lambda_colons -= 1;
                } else {
                    return Some(i);
                }
            }
            _ => {}
        }
        if depth == 0 && text[i..].starts_with("lambda") {
            let before_ok = i == 0 || !is_ident_byte(bytes[i - 1]);
            let after_ok = bytes.get(i + 6).is_none_or(|b| !is_ident_byte(*b));
            if before_ok && after_ok {
                lambda_colons += 1;
            }
        }
    }
    None
}

fn is_ident_byte(b: u8) -> bool {
    b == b'_' || b.is_ascii_alphanumeric()
}

fn first_word(text: &str) -> &str {
    let end = text
        .char_indices()
        .find(|(_, c)| !(*c == '_' || c.is_alphanumeric()))
        .map(|(i, _)| i)
        .unwrap_or(text.len());
    &text[..end]
}

/// Position of keyword `kw` as a standalone word at bracket depth 0.
fn find_keyword(text: &str, kw: &str) -> Option<usize> {
    let bytes = text.as_bytes();
    let mut depth = 0usize;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth = depth.saturating_sub(1),
            _ => {}
        }
        if depth == 0 && text[i..].starts_with(kw) {
            let before_ok = i == 0 || !is_ident_byte(bytes[i - 1]);
            let after_ok = bytes.get(i + kw.len()).is_none_or(|b| !is_ident_byte(*b));
            if before_ok && after_ok {
                return Some(i);
            }
        }
    }
    None
}

/// Header expression plus an optional inline body after the colon.
fn compound(out: &mut Vec<String>, header_expr: Option<&str>, body: &str) {
    if let Some(e) = header_expr {
        out.push(e.trim().to_string());
    }
    let body = body.trim();
    if !body.is_empty() {
        for s in split_top_level(body, ';') {
            out.extend(statement_expressions(s));
        }
    }
}

/// Expressions evaluated by one simple or compound-header statement.
fn statement_expressions(stmt: &str) -> Vec<String> {
    let stmt = stmt.trim();
    let mut out = Vec::new();
    if stmt.is_empty() {
        return out;
    }
    let stmt = stmt.strip_prefix("async ").unwrap_or(stmt);
    let word = first_word(stmt);
    let rest = stmt[word.len()..].trim_start();

    match word {
        "def" | "class" => {
            if let Some(c) = header_colon(stmt) {
                compound(&mut out, None, &stmt[c + 1..]);
            }
        }
        "if" | "elif" | "while" => {
            if let Some(c) = header_colon(rest) {
                compound(&mut out, Some(&rest[..c]), &rest[c + 1..]);
            }
        }
        "else" | "try" | "finally" | "except" => {
            if let Some(c) = header_colon(rest) {
                compound(&mut out, None, &rest[c + 1..]);
            }
        }
        "for" => {
            if let (Some(kw), Some(c)) = (find_keyword(rest, "in"), header_colon(rest)) {
                if kw < c {
                    compound(&mut out, Some(&rest[kw + 2..c]), &rest[c + 1..]);
                }
            }
        }
        "with" => {
            if let Some(c) = header_colon(rest) {
                let items = rest[..c].trim();
                let items = items
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .filter(|_| find_keyword(items, "as").is_none())
                    .unwrap_or(items);
                for item in split_top_level(items, ',') {
                    let expr = match find_keyword(item, "as") {
                        Some(p) => &item[..p],
                        None => item,
                    };
                    out.push(expr.trim().to_string());
                }
                compound(&mut out, None, &rest[c + 1..]);
            }
        }
        "return" => out.push(rest.to_string()),
        "yield" => out.push(rest.strip_prefix("from ").unwrap_or(rest).to_string()),
        "assert" => {
            for part in split_top_level(rest, ',') {
                out.push(part.to_string());
            }
        }
        "raise" => match find_keyword(rest, "from") {
            Some(p) => {
                out.push(rest[..p].to_string());
                out.push(rest[p + 4..].to_string());
            }
            None => out.push(rest.to_string()),
        },
        "del" | "import" | "from" | "pass" | "break" | "continue" | "global" | "nonlocal" => {}
        "match" | "case" if stmt.ends_with(':') && !rest.starts_with('(') => {
            if word == "match" {
                out.push(rest.trim_end_matches(':').to_string());
            }
        }
        "print" if !rest.is_empty() && !rest.starts_with('(') => {
            // Python 2 print statement
            out.push(rest.trim_start_matches(">>").to_string());
        }
        _ if stmt.starts_with('@') => out.push(stmt[1..].to_string()),
        _ => out.push(assignment_value(stmt).to_string()),
    }
    out
}

const AUGMENTED: &[&str] = &[
    "**=", "//=", ">>=", "<<=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=",
];

/// Right-hand side of an assignment, or the whole statement when it is a
/// bare expression. Annotations without a value yield an empty string.
fn assignment_value(stmt: &str) -> &str {
    let bytes = stmt.as_bytes();
    let mut depth = 0usize;
    let mut assign_ends = Vec::new();
    let mut annotation = false;
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => depth = depth.saturating_sub(1),
            _ if depth == 0 => {
                if let Some(op) = AUGMENTED.iter().find(|op| stmt[i..].starts_with(**op)) {
                    return &stmt[i + op.len()..];
                }
                if b == b':' && bytes.get(i + 1) != Some(&b'=') && assign_ends.is_empty() {
                    if find_keyword(&stmt[..i], "lambda").is_some() {
                        break;
                    }
                    annotation = true;
                }
                if b == b'=' {
                    let prev = if i > 0 { bytes[i - 1] } else { b' ' };
                    let next = bytes.get(i + 1).copied().unwrap_or(b' ');
                    if !matches!(prev, b'=' | b'<' | b'>' | b'!' | b':') && next != b'=' {
                        assign_ends.push(i + 1);
                        if stmt[i + 1..].trim_start().starts_with("lambda") {
                            break;
                        }
                    }
                }
            }
            _ => {}
        }
        i += 1;
    }
    match assign_ends.last() {
        Some(&end) => &stmt[end..],
        None if annotation => "",
        None => stmt,
    }
}

/// Splits a top-level tuple display (`f(x), g(y)`) into its elements.
fn split_tuple(expr: &str) -> Vec<String> {
    let trimmed = expr.trim();
    if trimmed.starts_with("lambda") || trimmed.starts_with("yield") {
        return vec![trimmed.to_string()];
    }
    split_top_level(trimmed, ',')
        .into_iter()
        .map(|s| s.trim().trim_start_matches('*').trim().to_string())
        .collect()
}

/// Cheap lexical check: an operator token, or at least two call sites.
fn may_hold_two_instructions(fragment: &str) -> bool {
    let tokens = match tokenize(fragment) {
        Ok(t) => t,
        // let the parser report it
        Err(_) => return true,
    };
    let mut calls = 0;
    for (i, tok) in tokens.iter().enumerate() {
        match tok {
            Token::Punct(p) => {
                if matches!(
                    *p,
                    "+" | "-" | "*" | "/" | "//" | "%" | "**" | "@" | "<<" | ">>" | "&" | "|"
                        | "^" | "~" | "<" | ">" | "<=" | ">=" | "==" | "!=" | "<>"
                ) {
                    // `*args` / `**kw` inside a call are unpacking, not operators
                    let unpack = matches!(*p, "*" | "**")
                        && i > 0
                        && matches!(tokens[i - 1], Token::Punct("(" | ","));
                    if !unpack {
                        return true;
                    }
                }
                if *p == "(" && i > 0 {
                    let callable = match &tokens[i - 1] {
                        Token::Name(n) => !is_keyword(n),
                        Token::Punct(q) => matches!(*q, ")" | "]"),
                        Token::Number => false,
                    };
                    if callable {
                        calls += 1;
                    }
                }
            }
            Token::Name(n) if matches!(n.as_str(), "and" | "or" | "not" | "is") => return true,
            // membership test, unless it belongs to a comprehension
            Token::Name(n) if n == "in" && !tokens[..i].iter().any(|t| t.is_name("for")) => {
                return true
            }
            _ => {}
        }
    }
    calls >= 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::preprocess::preprocess;

    fn split(src: &str) -> Vec<(usize, String)> {
        split_expressions(&preprocess(src))
            .into_iter()
            .map(|f| (f.line, f.text))
            .collect()
    }

    fn texts(src: &str) -> Vec<String> {
        split(src).into_iter().map(|(_, t)| t).collect()
    }

    #[test]
    fn single_instruction_fragment_dropped() {
        assert_eq!(texts("a = f(x); b = g(h(y))"), vec!["g(h(y))"]);
    }

    #[test]
    fn bracketed_continuation_joined() {
        let src = "total = compute(\n    first(a),\n    second(b))\n";
        let out = split(src);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].0, 1);
        assert_eq!(out[0].1, "compute(     first(a),     second(b))");
    }

    #[test]
    fn backslash_continuation_joined() {
        let out = split("x = a + \\\n    b\ny = c * d");
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].0, 1);
        assert_eq!(out[1], (3, "c * d".to_string()));
    }

    #[test]
    fn comment_only_and_blank() {
        assert!(texts("# nothing here\n\n   \n").is_empty());
        assert!(texts("").is_empty());
    }

    #[test]
    fn statement_forms() {
        let src = "\
def f(a, b=len(c) + 1):
    if len(a) > 0 and b: return max(a) + 1
    for i in range(len(a)):
        pass
    while not done(x):
        x += step(y) * 2
    with open(path(p)) as fh, lock(m) as l:
        pass
    assert len(a) == n, fmt(msg(x))
    raise Error(describe(e)) from wrap(inner(e))
    del a[f(x) + 1]
    import os.path
    n: int = len(a) - 1
    n: int
    x == y
    return a + b, g(h(x))
";
        assert_eq!(
            texts(src),
            vec![
                "len(a) > 0 and b",
                "max(a) + 1",
                "range(len(a))",
                "not done(x)",
                "step(y) * 2",
                "open(path(p))",
                "len(a) == n",
                "fmt(msg(x))",
                "Error(describe(e))",
                "wrap(inner(e))",
                "len(a) - 1",
                "x == y",
                "a + b",
                "g(h(x))",
            ]
        );
    }

    #[test]
    fn assignments() {
        assert_eq!(assignment_value("a = b = f(x)").trim(), "f(x)");
        assert_eq!(assignment_value("a[i] = x + 1").trim(), "x + 1");
        assert_eq!(assignment_value("f(a=1)"), "f(a=1)");
        assert_eq!(assignment_value("a == b"), "a == b");
        assert_eq!(assignment_value("x <= y"), "x <= y");
        assert_eq!(assignment_value("x //= f(y)").trim(), "f(y)");
        assert_eq!(assignment_value("g = lambda a=1: a + 1").trim(), "lambda a=1: a + 1");
        assert_eq!(assignment_value("x: int").trim(), "");
        assert_eq!(assignment_value("(n := f(a))"), "(n := f(a))");
    }

    #[test]
    fn lambda_header_colon() {
        assert_eq!(
            texts("if any(map(lambda v: v > 0, xs)): pass"),
            vec!["any(map(lambda v: v > 0, xs))"]
        );
        assert_eq!(
            texts("x = sorted(xs, key=lambda p: p.size())"),
            vec!["sorted(xs, key=lambda p: p.size())"]
        );
    }

    #[test]
    fn decorators_and_py2_print() {
        assert_eq!(texts("@cache(size(x))\ndef f(): pass"), vec!["cache(size(x))"]);
        assert_eq!(texts("print len(a) + 1"), vec!["len(a) + 1"]);
    }

    #[test]
    fn unpacking_star_is_not_an_operator() {
        assert!(!may_hold_two_instructions("f(*args)"));
        assert!(!may_hold_two_instructions("f(**kw)"));
        assert!(may_hold_two_instructions("a * b"));
        assert!(!may_hold_two_instructions("[x for x in y]"));
        assert!(may_hold_two_instructions("x in y"));
        assert!(may_hold_two_instructions("f(x)(y)"));
    }

    #[test]
    fn nesting_cap_drops_fragment() {
        let deep = format!("x = {}a{} + 1", "(".repeat(70), ")".repeat(70));
        let raw = raw_fragments(&preprocess(&deep), DEFAULT_MAX_NESTING);
        assert_eq!(raw.len(), 1);
        assert!(raw[0].too_deep);
        assert!(split_expressions(&preprocess(&deep)).is_empty());
    }

    #[test]
    fn unclosed_bracket_does_not_swallow_next_def() {
        let src = "x = f(g(y)\ndef h():\n    return a + b\n";
        let lines = logical_lines(&preprocess(src).into_string());
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn spans_of_top_level_functions() {
        let src = "\
import os

def first(a):
    x = len(a) + 1

    def inner(b):
        return b * 2
    return inner(x)


class K:
    def method(self):
        return self.v + 1

def last(): return 1
";
        let spans = function_spans(&preprocess(src));
        let got: Vec<(&str, usize, usize)> = spans
            .iter()
            .map(|s| (s.name.as_str(), s.start_line, s.end_line))
            .collect();
        assert_eq!(
            got,
            vec![("first", 3, 8), ("method", 12, 13), ("last", 15, 15)]
        );
    }
}
