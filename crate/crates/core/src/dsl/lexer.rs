use serde::Serialize;

/// A byte range in the source with its 1-based line and column (in chars).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Span {
    pub offset: usize,
    pub length: usize,
    pub line: usize,
    pub column: usize,
}

impl Span {
    /// The source text covered by the span.
    pub fn slice<'a>(&self, src: &'a str) -> &'a str {
        &src[self.offset..self.offset + self.length]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Lexical,
    Syntax,
    Reference,
    Validation,
    /// A construction the declaration requests failed or hit the size guard.
    Construction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
    pub span: Span,
}

impl Diagnostic {
    pub fn new(severity: Severity, message: impl Into<String>, span: Span) -> Self {
        Self {
            severity,
            message: message.into(),
            span,
        }
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{}:{}: {:?} error: {}",
            self.span.line, self.span.column, self.severity, self.message
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tok {
    Ident,
    LBrace,
    RBrace,
    Semi,
    Colon,
    Comma,
    Dot,
    Eq,
    Star,
    /// `->`
    Arrow,
    /// `|->`
    MapsTo,
    /// `=>`
    DArrow,
    Eof,
}

impl Tok {
    pub fn describe(self) -> &'static str {
        match self {
            Tok::Ident => "an identifier",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::Semi => "`;`",
            Tok::Colon => "`:`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Eq => "`=`",
            Tok::Star => "`*`",
            Tok::Arrow => "`->`",
            Tok::MapsTo => "`|->`",
            Tok::DArrow => "`=>`",
            Tok::Eof => "end of input",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Token {
    pub kind: Tok,
    pub span: Span,
}

pub fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

/// Identifiers: `[A-Za-z0-9_][A-Za-z0-9_']*`.
pub fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphanumeric() || c == '_') && cs.all(is_ident_char)
}

/// Splits `src` into tokens; unknown characters become lexical diagnostics.
/// The token list always ends with `Eof`.
pub fn lex(src: &str) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut toks = Vec::new();
    let mut diags = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let (mut line, mut col) = (1usize, 1usize);
    let mut i = 0;
    let byte_at = |k: usize| chars.get(k).map_or(src.len(), |c| c.0);
    while i < chars.len() {
        let (off, c) = chars[i];
        let start = (line, col);
        let push = |kind: Tok, n: usize, toks: &mut Vec<Token>| {
            toks.push(Token {
                kind,
                span: Span {
                    offset: off,
                    length: byte_at(i + n) - off,
                    line: start.0,
                    column: start.1,
                },
            });
        };
        let peek = |k: usize| chars.get(i + k).map(|c| c.1);
        let n = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => 1,
            '/' if peek(1) == Some('/') => {
                while i < chars.len() && chars[i].1 != '\n' {
                    i += 1;
                    col += 1;
                }
                continue;
            }
            c if is_ident_char(c) && c != '\'' => {
                let mut n = 1;
                while peek(n).is_some_and(is_ident_char) {
                    n += 1;
                }
                push(Tok::Ident, n, &mut toks);
                n
            }
            '{' => {
                push(Tok::LBrace, 1, &mut toks);
                1
            }
            '}' => {
                push(Tok::RBrace, 1, &mut toks);
                1
            }
            ';' => {
                push(Tok::Semi, 1, &mut toks);
                1
            }
            ':' => {
                push(Tok::Colon, 1, &mut toks);
                1
            }
            ',' => {
                push(Tok::Comma, 1, &mut toks);
                1
            }
            '.' => {
                push(Tok::Dot, 1, &mut toks);
                1
            }
            '*' => {
                push(Tok::Star, 1, &mut toks);
                1
            }
            '-' if peek(1) == Some('>') => {
                push(Tok::Arrow, 2, &mut toks);
                2
            }
            '|' if peek(1) == Some('-') && peek(2) == Some('>') => {
                push(Tok::MapsTo, 3, &mut toks);
                3
            }
            '=' if peek(1) == Some('>') => {
                push(Tok::DArrow, 2, &mut toks);
                2
            }
            '=' => {
                push(Tok::Eq, 1, &mut toks);
                1
            }
            other => {
                let span = Span {
                    offset: off,
                    length: other.len_utf8(),
                    line,
                    column: col,
                };
                diags.push(Diagnostic::new(
                    Severity::Lexical,
                    format!("unexpected character `{other}`"),
                    span,
                ));
                1
            }
        };
        i += n;
        col += n;
    }
    toks.push(Token {
        kind: Tok::Eof,
        span: Span {
            offset: src.len(),
            length: 0,
            line,
            column: col,
        },
    });
    (toks, diags)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_spans() {
        let src = "functor F : C -> D {\n  objects: a |-> b; // note\n}";
        let (toks, diags) = lex(src);
        assert!(diags.is_empty());
        let kinds: Vec<Tok> = toks.iter().map(|t| t.kind).collect();
        use Tok::*;
        assert_eq!(
            kinds,
            [Ident, Ident, Colon, Ident, Arrow, Ident, LBrace, Ident, Colon, Ident, MapsTo, Ident, Semi, RBrace, Eof]
        );
        let b = toks[11];
        assert_eq!(b.span.slice(src), "b");
        assert_eq!((b.span.line, b.span.column), (2, 18));
    }

    #[test]
    fn unknown_characters_are_lexical() {
        let src = "category C { objects: a; } # x é";
        let (_, diags) = lex(src);
        assert_eq!(diags.len(), 2);
        assert_eq!(diags[0].span.slice(src), "#");
        assert_eq!(diags[1].span.slice(src), "é");
        assert!(diags.iter().all(|d| d.severity == Severity::Lexical));
    }

    #[test]
    fn identifiers() {
        assert!(is_ident("le_0_1"));
        assert!(is_ident("0__1__id_1"));
        assert!(is_ident("f'"));
        assert!(!is_ident("'f"));
        assert!(!is_ident("(a,b)"));
        assert!(!is_ident(""));
    }
}
