use std::sync::Arc;

use crate::model::{Diagnostic, SourceSpan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Identifier; trailing primes are kept so `Ad2a'` is one token.
    Ident(String),
    Str(String),
    Int(u32),
    /// Raw text between `[` and `]`.
    Label(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Slash,
    Pipe,
    Amp,
    Star,
    Arrow,
    Plus,
    Minus,
    Tilde,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Str(_) => "string".into(),
            Tok::Int(n) => format!("integer {n}"),
            Tok::Label(_) => "label".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Star => "`*`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: u32,
    col: u32,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek2(&self) -> Option<char> {
        let mut it = self.src[self.pos..].chars();
        it.next();
        it.next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn here(&self) -> (u32, u32) {
        (self.line, self.col)
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

/// Tokenizes `src`. Lexical errors are reported as P01 and the offending
/// character is skipped, so the token stream is always usable.
pub fn tokenize(src: &str, file: &Arc<str>) -> (Vec<Token>, Vec<Diagnostic>) {
    let mut cur = Cursor {
        src,
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut toks = Vec::new();
    let mut diags = Vec::new();
    let span = |start: (u32, u32), end: (u32, u32)| SourceSpan::new(file.clone(), start, end);

    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        let start = cur.here();
        let tok = match c {
            '{' | '}' | '(' | ')' | ',' | ';' | ':' | '/' | '|' | '&' | '*' | '+' | '~' => {
                cur.bump();
                match c {
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '/' => Tok::Slash,
                    '|' => Tok::Pipe,
                    '&' => Tok::Amp,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    _ => Tok::Tilde,
                }
            }
            '-' => {
                cur.bump();
                if cur.peek() == Some('>') {
                    cur.bump();
                    Tok::Arrow
                } else {
                    Tok::Minus
                }
            }
            '"' => {
                cur.bump();
                let mut s = String::new();
                let mut closed = false;
                while let Some(c) = cur.bump() {
                    match c {
                        '"' => {
                            closed = true;
                            break;
                        }
                        '\\' => match cur.bump() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            Some('t') => s.push('\t'),
                            Some(other) => {
                                diags.push(
                                    Diagnostic::error(
                                        "P01",
                                        format!("unknown escape `\\{other}` in string"),
                                    )
                                    .with_span(span(start, cur.here())),
                                );
                                s.push(other);
                            }
                            None => break,
                        },
                        c => s.push(c),
                    }
                }
                if !closed {
                    diags.push(
                        Diagnostic::error("P01", "unterminated string")
                            .with_span(span(start, cur.here())),
                    );
                }
                Tok::Str(s)
            }
            '[' => {
                cur.bump();
                let mut s = String::new();
                let mut closed = false;
                while let Some(c) = cur.peek() {
                    if c == ']' {
                        cur.bump();
                        closed = true;
                        break;
                    }
                    if c == '\n' || c == '[' {
                        break;
                    }
                    s.push(c);
                    cur.bump();
                }
                if !closed {
                    diags.push(
                        Diagnostic::error("P01", "unterminated label")
                            .with_span(span(start, cur.here())),
                    );
                }
                Tok::Label(s)
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while let Some(c) = cur.peek().filter(char::is_ascii_digit) {
                    s.push(c);
                    cur.bump();
                }
                match s.parse() {
                    Ok(n) => Tok::Int(n),
                    Err(_) => {
                        diags.push(
                            Diagnostic::error("P01", format!("integer `{s}` out of range"))
                                .with_span(span(start, cur.here())),
                        );
                        Tok::Int(u32::MAX)
                    }
                }
            }
            c if is_ident_start(c) => {
                let mut s = String::new();
                while let Some(c) = cur.peek() {
                    if c == '-' && cur.peek2() == Some('>') {
                        break;
                    }
                    if !is_ident_char(c) {
                        break;
                    }
                    s.push(c);
                    cur.bump();
                }
                while cur.peek() == Some('\'') {
                    s.push('\'');
                    cur.bump();
                }
                Tok::Ident(s)
            }
            other => {
                cur.bump();
                diags.push(
                    Diagnostic::error("P01", format!("unexpected character `{other}`"))
                        .with_span(span(start, cur.here())),
                );
                continue;
            }
        };
        toks.push(Token {
            tok,
            span: span(start, end_of(&cur)),
        });
    }
    let here = cur.here();
    toks.push(Token {
        tok: Tok::Eof,
        span: span(here, here),
    });
    (toks, diags)
}

/// Column of the last consumed character (spans are inclusive).
fn end_of(cur: &Cursor<'_>) -> (u32, u32) {
    (cur.line, cur.col.saturating_sub(1).max(1))
}
