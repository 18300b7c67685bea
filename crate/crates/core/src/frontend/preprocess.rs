//! Comment stripping and string-literal replacement.

/// Prefix used for the synthetic identifiers that replace string literals.
pub const PLACEHOLDER_PREFIX: &str = "STR_";

/// Source text with comments removed and every string literal replaced by a
/// placeholder identifier. Line structure is preserved so fragment line
/// numbers still refer to the original file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedText(String);

impl NormalizedText {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl AsRef<str> for NormalizedText {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Returns true when `name` is a placeholder produced by [`preprocess`].
pub fn is_placeholder(name: &str) -> bool {
    name.strip_prefix(PLACEHOLDER_PREFIX)
        .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
}

fn is_ident_char(c: char) -> bool {
    c == '_' || c.is_alphanumeric()
}

fn is_string_prefix(p: &str) -> bool {
    matches!(
        p.to_ascii_lowercase().as_str(),
        "r" | "u" | "b" | "f" | "br" | "rb" | "fr" | "rf"
    )
}

/// Replaces string literals with `STR_0`, `STR_1`, ... (left to right) and
/// then drops `#` comments.
///
/// Literals are consumed before comments are recognised, so a `#` inside a
/// literal never starts a comment. Adjacent literals on one line (implicit
/// concatenation) share one placeholder. Newlines swallowed by a multi-line
/// literal are re-emitted at the end of the physical line that contained the
/// literal's end, keeping every later line at its original line number.
/// Unterminated literals run to the end of the line (or the file, for
/// triple-quoted ones).
pub fn preprocess(text: &str) -> NormalizedText {
    let chars: Vec<char> = text.chars().collect();
    let mut out = String::with_capacity(text.len());
    let mut next_id = 0usize;
    let mut pending_newlines = 0usize;
    let mut i = 0;

    while i < chars.len() {
        let c = chars[i];
        match c {
            '\'' | '"' => {
                strip_literal_prefix(&mut out);
                out.push_str(PLACEHOLDER_PREFIX);
                out.push_str(&next_id.to_string());
                next_id += 1;
                i = skip_literal(&chars, i, &mut pending_newlines);
                // implicit concatenation on the same line
                loop {
                    let mut j = i;
                    while j < chars.len() && (chars[j] == ' ' || chars[j] == '\t') {
                        j += 1;
                    }
                    let mut k = j;
                    while k < chars.len() && k - j < 2 && chars[k].is_ascii_alphabetic() {
                        k += 1;
                    }
                    let prefix: String = chars[j..k].iter().collect();
                    if k < chars.len()
                        && (chars[k] == '\'' || chars[k] == '"')
                        && (prefix.is_empty() || is_string_prefix(&prefix))
                    {
                        i = skip_literal(&chars, k, &mut pending_newlines);
                    } else {
                        break;
                    }
                }
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                let trimmed = out.trim_end_matches([' ', '\t', '\r']).len();
                out.truncate(trimmed);
            }
            '\n' => {
                for _ in 0..pending_newlines {
                    out.push('\n');
                }
                pending_newlines = 0;
                out.push('\n');
                i += 1;
            }
            _ => {
                out.push(c);
                i += 1;
            }
        }
    }
    for _ in 0..pending_newlines {
        out.push('\n');
    }
    NormalizedText(out)
}

/// Removes a string prefix such as `rb` or `f` that was already copied to
/// the output, provided it is not the tail of a longer identifier.
fn strip_literal_prefix(out: &mut String) {
    let tail: Vec<(usize, char)> = out
        .char_indices()
        .rev()
        .take_while(|&(_, c)| is_ident_char(c))
        .collect();
    if tail.is_empty() || tail.len() > 2 {
        return;
    }
    let start = tail.last().map(|&(idx, _)| idx).unwrap_or(out.len());
    if is_string_prefix(&out[start..]) {
        out.truncate(start);
    }
}

/// Skips the literal whose opening quote is at `start`; returns the index
/// just past it. Newlines inside the literal are added to `pending`.
fn skip_literal(chars: &[char], start: usize, pending: &mut usize) -> usize {
    let quote = chars[start];
    let triple = chars.get(start + 1) == Some(&quote) && chars.get(start + 2) == Some(&quote);
    let mut i = if triple { start + 3 } else { start + 1 };
    while i < chars.len() {
        let c = chars[i];
        if c == '\\' {
            if chars.get(i + 1) == Some(&'\n') {
                *pending += 1;
            }
            i += 2;
            continue;
        }
        if c == '\n' {
            if !triple {
                return i;
            }
            *pending += 1;
        } else if c == quote {
            if !triple {
                return i + 1;
            }
            if chars.get(i + 1) == Some(&quote) && chars.get(i + 2) == Some(&quote) {
                return i + 3;
            }
        }
        i += 1;
    }
    chars.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(s: &str) -> String {
        preprocess(s).into_string()
    }

    #[test]
    fn strips_trailing_comment() {
        assert_eq!(pp("x = len(s)  # count"), "x = len(s)");
    }

    #[test]
    fn literal_replaced_before_comment() {
        assert_eq!(pp("f(\"a#b\") # real"), "f(STR_0)");
    }

    #[test]
    fn plain_text_unchanged() {
        let t = "a = b + c\nprint(a)\n\n  y = g(h(x))  \n";
        assert_eq!(pp(t), t);
    }

    #[test]
    fn placeholders_number_left_to_right() {
        assert_eq!(pp("f('a', \"b\")\ng('c')"), "f(STR_0, STR_1)\ng(STR_2)");
    }

    #[test]
    fn prefixed_and_triple_quoted() {
        assert_eq!(pp("x = rb'\\d+' + f\"{y}\""), "x = STR_0 + STR_1");
        let src = "s = \"\"\"doc\n# not a comment\n\"\"\".strip()\nz = 1";
        assert_eq!(pp(src), "s = STR_0.strip()\n\n\nz = 1");
    }

    #[test]
    fn prefix_inside_identifier_is_kept() {
        // `bar'x'` is not valid Python but the `bar` must survive intact.
        assert_eq!(pp("bar'x'"), "barSTR_0");
    }

    #[test]
    fn implicit_concatenation_shares_placeholder() {
        assert_eq!(pp("x = 'a' 'b' f'c'"), "x = STR_0");
    }

    #[test]
    fn escaped_quote_does_not_close() {
        assert_eq!(pp(r#"f("a\"b#") # c"#), "f(STR_0)");
    }

    #[test]
    fn unterminated_literal_stops_at_line_end() {
        assert_eq!(pp("x = 'abc\ny = 2"), "x = STR_0\ny = 2");
    }

    #[test]
    fn line_count_preserved() {
        let src = "a = '''x\ny\nz'''\nb = 1\n# only comment\nc = 2";
        let out = pp(src);
        assert_eq!(out.lines().count(), src.lines().count());
        assert_eq!(out.lines().nth(3), Some("b = 1"));
        assert_eq!(out.lines().nth(5), Some("c = 2"));
    }

    #[test]
    fn placeholder_detection() {
        assert!(is_placeholder("STR_12"));
        assert!(!is_placeholder("STR_"));
        assert!(!is_placeholder("STR_x"));
        assert!(!is_placeholder("len"));
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn source() -> impl Strategy<Value = String> {
            prop::collection::vec(
                prop_oneof![
                    Just("'".to_string()),
                    Just("\"".to_string()),
                    Just("#".to_string()),
                    Just("\n".to_string()),
                    Just("\\".to_string()),
                    Just("'''".to_string()),
                    Just("rb".to_string()),
                    "[a-z(),+ ]{1,6}",
                ],
                0..40,
            )
            .prop_map(|parts| parts.concat())
        }

        proptest! {
            #[test]
            fn idempotent(src in source()) {
                let once = preprocess(&src).into_string();
                let twice = preprocess(&once).into_string();
                prop_assert_eq!(once, twice);
            }

            #[test]
            fn no_quotes_or_comments_survive(src in source()) {
                let out = preprocess(&src).into_string();
                prop_assert!(!out.contains('\'') && !out.contains('"') && !out.contains('#'));
            }

            #[test]
            fn newline_count_preserved(src in source()) {
                let out = preprocess(&src).into_string();
                prop_assert_eq!(
                    out.matches('\n').count(),
                    src.matches('\n').count()
                );
            }
        }
    }
}
