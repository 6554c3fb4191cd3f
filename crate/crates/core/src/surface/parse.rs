use std::fmt;

use thiserror::Error;

use super::NameTable;
use crate::level::Level;

/// Largest numeral literal accepted; numerals expand to nested successors.
pub const MAX_NUMERAL: u32 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: expected {}, found {found}", ExpectedList(.expected))]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

struct ExpectedList<'a>(&'a [&'static str]);

impl fmt::Display for ExpectedList<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            [one] => write!(f, "{one}"),
            many => write!(f, "one of {}", many.join(" ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Nat(String),
    Ident(String),
    Bad(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Open => "`(`".into(),
            Tok::Close => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Bad(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    /// Next token with its starting position.
    fn next(&mut self) -> (Tok, usize, usize) {
        while self.chars.peek().is_some_and(|c| c.is_whitespace()) {
            self.bump();
        }
        let (line, column) = (self.line, self.column);
        let Some(c) = self.bump() else { return (Tok::End, line, column) };
        let tok = match c {
            '(' => Tok::Open,
            ')' => Tok::Close,
            ',' => Tok::Comma,
            '0'..='9' => Tok::Nat(self.take_while(c, |c| c.is_ascii_digit())),
            'A'..='Z' | 'a'..='z' | '_' => {
                Tok::Ident(self.take_while(c, |c| c.is_ascii_alphanumeric() || c == '_'))
            }
            other => Tok::Bad(other),
        };
        (tok, line, column)
    }

    fn take_while(&mut self, first: char, keep: impl Fn(char) -> bool) -> String {
        let mut s = String::from(first);
        while let Some(&c) = self.chars.peek() {
            if !keep(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }
}

struct Parser<'a, 'n> {
    lexer: Lexer<'a>,
    tok: Tok,
    line: usize,
    column: usize,
    names: &'n mut NameTable,
}

const LEVEL_START: &[&str] = &["`0`", "numeral", "`s`", "`max`", "`imax`", "identifier"];

impl Parser<'_, '_> {
    fn advance(&mut self) {
        (self.tok, self.line, self.column) = self.lexer.next();
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError { line: self.line, column: self.column, expected: expected.to_vec(), found: self.tok.describe() }
    }

    fn expect(&mut self, tok: Tok, shown: &'static str) -> Result<(), ParseError> {
        if self.tok != tok {
            return Err(self.error(&[shown]));
        }
        self.advance();
        Ok(())
    }

    fn level(&mut self) -> Result<Level, ParseError> {
        match self.tok.clone() {
            Tok::Nat(digits) => {
                let n = digits.parse::<u32>().ok().filter(|n| *n <= MAX_NUMERAL);
                let Some(n) = n else {
                    return Err(self.error(&["numeral at most 100000"]));
                };
                self.advance();
                Ok(Level::numeral(n))
            }
            Tok::Ident(id) => {
                self.advance();
                match id.as_str() {
                    "s" => {
                        self.expect(Tok::Open, "`(`")?;
                        let inner = self.level()?;
                        self.expect(Tok::Close, "`)`")?;
                        Ok(Level::succ(inner))
                    }
                    "max" | "imax" => {
                        self.expect(Tok::Open, "`(`")?;
                        let left = self.level()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let right = self.level()?;
                        self.expect(Tok::Close, "`)`")?;
                        Ok(if id == "max" { Level::max(left, right) } else { Level::imax(left, right) })
                    }
                    _ => Ok(Level::Var(self.names.intern(&id))),
                }
            }
            _ => Err(self.error(LEVEL_START)),
        }
    }
}

/// Parses one level expression, interning its variables into `names`.
pub fn parse_level(text: &str, names: &mut NameTable) -> Result<Level, ParseError> {
    let lexer = Lexer { chars: text.chars().peekable(), line: 1, column: 1 };
    let mut p = Parser { lexer, tok: Tok::End, line: 1, column: 1, names };
    p.advance();
    let t = p.level()?;
    if p.tok != Tok::End {
        return Err(p.error(&["end of input"]));
    }
    Ok(t)
}
