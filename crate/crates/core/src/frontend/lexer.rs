use super::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Token {
    Name(String),
    Number,
    /// Operators and punctuation, including brackets.
    Punct(&'static str),
}

impl Token {
    pub fn is_punct(&self, p: &str) -> bool {
        matches!(self, Token::Punct(q) if *q == p)
    }

    pub fn is_name(&self, n: &str) -> bool {
        matches!(self, Token::Name(m) if m == n)
    }
}

// Longest first so that maximal munch works with a linear scan.
const PUNCTS: &[&str] = &[
    "**=", "//=", ">>=", "<<=", "...", "->", ":=", "**", "//", "<<", ">>", "<=", ">=", "==", "!=",
    "<>", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", "+", "-", "*", "/", "%", "@", "&",
    "|", "^", "~", "<", ">", "(", ")", "[", "]", "{", "}", ",", ":", ".", ";", "=",
];

pub const KEYWORDS: &[&str] = &[
    "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class",
    "continue", "def", "del", "elif", "else", "except", "finally", "for", "from", "global", "if",
    "import", "in", "is", "lambda", "nonlocal", "not", "or", "pass", "raise", "return", "try",
    "while", "with", "yield",
];

pub fn is_keyword(name: &str) -> bool {
    KEYWORDS.contains(&name)
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    'outer: while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '\\' {
            // explicit line continuation
            i += 1;
            continue;
        }
        if c == '_' || c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i] == '_' || chars[i].is_alphanumeric()) {
                i += 1;
            }
            tokens.push(Token::Name(chars[start..i].iter().collect()));
            continue;
        }
        if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
        {
            let hex = c == '0' && matches!(chars.get(i + 1), Some('x' | 'X'));
            while i < chars.len() {
                let d = chars[i];
                if d.is_ascii_alphanumeric() || d == '_' || d == '.' {
                    i += 1;
                    if !hex
                        && matches!(d, 'e' | 'E')
                        && matches!(chars.get(i), Some('+' | '-'))
                    {
                        i += 1;
                    }
                } else {
                    break;
                }
            }
            tokens.push(Token::Number);
            continue;
        }
        for p in PUNCTS {
            let len = p.chars().count();
            if i + len <= chars.len() && chars[i..i + len].iter().copied().eq(p.chars()) {
                tokens.push(Token::Punct(p));
                i += len;
                continue 'outer;
            }
        }
        return Err(ParseError::UnexpectedChar(c));
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximal_munch() {
        let toks = tokenize("a**=b//c").unwrap();
        assert_eq!(
            toks,
            vec![
                Token::Name("a".into()),
                Token::Punct("**="),
                Token::Name("b".into()),
                Token::Punct("//"),
                Token::Name("c".into()),
            ]
        );
    }

    #[test]
    fn numbers() {
        let toks = tokenize("1e-3 + 0x1F + .5j + 1_000").unwrap();
        let numbers = toks.iter().filter(|t| **t == Token::Number).count();
        assert_eq!(numbers, 4);
        assert_eq!(toks.len(), 7);
    }

    #[test]
    fn stray_character() {
        assert_eq!(tokenize("a $ b"), Err(ParseError::UnexpectedChar('$')));
    }
}
