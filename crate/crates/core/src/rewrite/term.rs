//! First-order terms, their prefix-application syntax, and sort checking.

use std::fmt;

use thiserror::Error;

use super::signature::{Sort, Sym};

/// Index of a pattern variable within one rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatVar(pub u16);

/// A term: a symbol applied to exactly `arity` children, or a pattern variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RTerm {
    App(Sym, Vec<RTerm>),
    Var(PatVar),
}

impl RTerm {
    /// A symbol applied to arguments. Panics on an arity mismatch.
    pub fn app(sym: Sym, args: Vec<RTerm>) -> RTerm {
        assert_eq!(sym.arity(), args.len(), "arity mismatch for {sym}");
        RTerm::App(sym, args)
    }

    pub fn constant(sym: Sym) -> RTerm {
        RTerm::app(sym, Vec::new())
    }

    pub fn head(&self) -> Option<Sym> {
        match self {
            RTerm::App(s, _) => Some(*s),
            RTerm::Var(_) => None,
        }
    }

    pub fn args(&self) -> &[RTerm] {
        match self {
            RTerm::App(_, args) => args,
            RTerm::Var(_) => &[],
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            RTerm::Var(_) => false,
            RTerm::App(_, args) => args.iter().all(RTerm::is_ground),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            RTerm::Var(_) => 1,
            RTerm::App(_, args) => 1 + args.iter().map(RTerm::size).sum::<usize>(),
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<PatVar>) {
        match self {
            RTerm::Var(v) => out.push(*v),
            RTerm::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn subterm(&self, path: &[usize]) -> &RTerm {
        path.iter().fold(self, |t, i| &t.args()[*i])
    }

    pub fn subterm_mut(&mut self, path: &[usize]) -> &mut RTerm {
        let mut t = self;
        for i in path {
            t = match t {
                RTerm::App(_, args) => &mut args[*i],
                RTerm::Var(_) => panic!("path runs through a variable"),
            };
        }
        t
    }

    /// Sort of a ground term, checking every application against the signature.
    pub fn sort(&self) -> Result<Sort, SortError> {
        match self {
            RTerm::Var(_) => Err(SortError::NotGround),
            RTerm::App(sym, args) => {
                if args.len() != sym.arity() {
                    return Err(SortError::Arity { sym: *sym, found: args.len() });
                }
                for (i, (arg, want)) in args.iter().zip(sym.arg_sorts()).enumerate() {
                    let got = arg.sort()?;
                    if got != *want {
                        return Err(SortError::Mismatch { sym: *sym, index: i, want: *want, got });
                    }
                }
                Ok(sym.result_sort())
            }
        }
    }

    /// Writes the term with variables named by `names`.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        Shown { term: self, names, nested: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error("pattern variable in a term expected to be ground")]
    NotGround,
    #[error("{sym} applied to {found} arguments")]
    Arity { sym: Sym, found: usize },
    #[error("argument {index} of {sym} has sort {got}, expected {want}")]
    Mismatch { sym: Sym, index: usize, want: Sort, got: Sort },
    #[error("pattern variable used at sorts {first} and {second}")]
    VarConflict { first: Sort, second: Sort },
    #[error("rule rewrites sort {lhs} to sort {rhs}")]
    RuleSides { lhs: Sort, rhs: Sort },
}

struct Shown<'a> {
    term: &'a RTerm,
    names: &'a [String],
    nested: bool,
}

impl fmt::Display for Shown<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.term {
            RTerm::Var(v) => match self.names.get(v.0 as usize) {
                Some(n) => f.write_str(n),
                None => write!(f, "?{}", v.0),
            },
            RTerm::App(sym, args) if args.is_empty() => f.write_str(sym.name()),
            RTerm::App(sym, args) => {
                if self.nested {
                    f.write_str("(")?;
                }
                f.write_str(sym.name())?;
                for a in args {
                    write!(f, " {}", Shown { term: a, names: self.names, nested: true })?;
                }
                if self.nested {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for RTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&[]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermParseError {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token `{0}`")]
    Unexpected(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("pattern variable `{0}` is not allowed here")]
    VariableNotAllowed(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Ident(String),
}

fn tokenize(text: &str) -> Result<Vec<Tok>, TermParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '(' {
            out.push(Tok::Open);
            chars.next();
        } else if c == ')' {
            out.push(Tok::Close);
            chars.next();
        } else if c.is_alphanumeric() || c == '_' {
            let mut id = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_alphanumeric() || c == '_' {
                    id.push(c);
                    chars.next();
                } else {
                    break;
                }
            }
            out.push(Tok::Ident(id));
        } else {
            return Err(TermParseError::Unexpected(c.to_string()));
        }
    }
    Ok(out)
}

/// Parser for prefix application, `f a (g b c)`. Symbols consume exactly their
/// arity in arguments; identifiers outside the signature are pattern variables.
pub(crate) struct TermParser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: Option<&'a mut Vec<String>>,
}

impl<'a> TermParser<'a> {
    pub(crate) fn new(text: &str, vars: Option<&'a mut Vec<String>>) -> Result<Self, TermParseError> {
        Ok(TermParser { toks: tokenize(text)?, pos: 0, vars })
    }

    pub(crate) fn finish(self) -> Result<(), TermParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some(t) => Err(TermParseError::Unexpected(tok_text(t))),
        }
    }

    pub(crate) fn term(&mut self) -> Result<RTerm, TermParseError> {
        match self.next()? {
            Tok::Open => {
                let t = self.term()?;
                self.expect_close()?;
                Ok(t)
            }
            Tok::Close => Err(TermParseError::Unexpected(")".into())),
            Tok::Ident(id) => match Sym::from_name(&id) {
                Some(sym) => {
                    let args = (0..sym.arity()).map(|_| self.atom()).collect::<Result<_, _>>()?;
                    Ok(RTerm::App(sym, args))
                }
                None => self.variable(id),
            },
        }
    }

    fn atom(&mut self) -> Result<RTerm, TermParseError> {
        match self.next()? {
            Tok::Open => {
                let t = self.term()?;
                self.expect_close()?;
                Ok(t)
            }
            Tok::Close => Err(TermParseError::Unexpected(")".into())),
            Tok::Ident(id) => match Sym::from_name(&id) {
                Some(sym) if sym.arity() == 0 => Ok(RTerm::App(sym, Vec::new())),
                Some(_) => Err(TermParseError::Unexpected(id)),
                None => self.variable(id),
            },
        }
    }

    fn variable(&mut self, id: String) -> Result<RTerm, TermParseError> {
        if !id.starts_with(|c: char| c.is_ascii_uppercase()) {
            return Err(TermParseError::UnknownSymbol(id));
        }
        let Some(vars) = self.vars.as_deref_mut() else {
            return Err(TermParseError::VariableNotAllowed(id));
        };
        let idx = match vars.iter().position(|v| *v == id) {
            Some(i) => i,
            None => {
                vars.push(id);
                vars.len() - 1
            }
        };
        Ok(RTerm::Var(PatVar(idx as u16)))
    }

    fn next(&mut self) -> Result<Tok, TermParseError> {
        let t = self.toks.get(self.pos).cloned().ok_or(TermParseError::UnexpectedEnd)?;
        self.pos += 1;
        Ok(t)
    }

    fn expect_close(&mut self) -> Result<(), TermParseError> {
        match self.next()? {
            Tok::Close => Ok(()),
            t => Err(TermParseError::Unexpected(tok_text(&t))),
        }
    }
}

fn tok_text(t: &Tok) -> String {
    match t {
        Tok::Open => "(".into(),
        Tok::Close => ")".into(),
        Tok::Ident(s) => s.clone(),
    }
}

/// Parses a ground term in prefix-application syntax.
pub fn parse_term(text: &str) -> Result<RTerm, TermParseError> {
    let mut p = TermParser::new(text, None)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}
