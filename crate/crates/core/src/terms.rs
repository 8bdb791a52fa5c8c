//! Terms built from atoms, the Sasaki connective `&` and the orthocomplement `'`,
//! and sequents `lhs <= rhs` between them.
//!
//! Concrete syntax:
//!
//! ```text
//! sequent := term "<=" term
//! term    := postfix ("&" postfix)*      -- left associative
//! postfix := primary "'"*
//! primary := atom | "(" term ")"
//! atom    := [a-z][a-zA-Z0-9_]*
//! ```
//!
//! Nothing is normalized while parsing: `a''` stays a double orthocomplement.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A term of the language. Serializes to the JSON tree
/// `{"atom": name} | {"sasaki": [l, r]} | {"ortho": t}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Term {
    Atom(String),
    Sasaki(Box<Term>, Box<Term>),
    Ortho(Box<Term>),
}

impl Term {
    pub fn atom(name: impl Into<String>) -> Term {
        Term::Atom(name.into())
    }

    pub fn sasaki(left: Term, right: Term) -> Term {
        Term::Sasaki(Box::new(left), Box::new(right))
    }

    pub fn ortho(inner: Term) -> Term {
        Term::Ortho(Box::new(inner))
    }

    /// `t'`, consuming `self`.
    pub fn perp(self) -> Term {
        Term::ortho(self)
    }

    /// Number of `&` nodes.
    pub fn connective_count(&self) -> usize {
        match self {
            Term::Atom(_) => 0,
            Term::Sasaki(l, r) => 1 + l.connective_count() + r.connective_count(),
            Term::Ortho(t) => t.connective_count(),
        }
    }

    /// Number of `&` and `'` nodes together.
    pub fn size(&self) -> usize {
        match self {
            Term::Atom(_) => 0,
            Term::Sasaki(l, r) => 1 + l.size() + r.size(),
            Term::Ortho(t) => 1 + t.size(),
        }
    }

    /// Longest run of directly nested orthocomplements anywhere in the term.
    pub fn max_ortho_run(&self) -> usize {
        fn go(t: &Term, run: usize) -> usize {
            match t {
                Term::Atom(_) => run,
                Term::Ortho(inner) => go(inner, run + 1),
                Term::Sasaki(l, r) => run.max(go(l, 0)).max(go(r, 0)),
            }
        }
        go(self, 0)
    }

    /// If the term is `t''`, returns `t`.
    pub fn strip_double_ortho(&self) -> Option<&Term> {
        match self {
            Term::Ortho(inner) => match inner.as_ref() {
                Term::Ortho(t) => Some(t),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_sasaki(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::Sasaki(l, r) => Some((l, r)),
            _ => None,
        }
    }

    /// Atom names in first-occurrence order, without repetition.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Term::Atom(name) => {
                if !out.contains(&name.as_str()) {
                    out.push(name);
                }
            }
            Term::Sasaki(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
            Term::Ortho(t) => t.collect_atoms(out),
        }
    }

    /// All subterms including `self`, deduplicated, in pre-order.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out: Vec<&Term> = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if !out.contains(&t) {
                out.push(t);
            }
            match t {
                Term::Atom(_) => {}
                Term::Sasaki(l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
                Term::Ortho(inner) => stack.push(inner),
            }
        }
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Atom(name) => f.write_str(name),
            Term::Sasaki(l, r) => {
                write!(f, "{l} & ")?;
                if matches!(**r, Term::Sasaki(..)) {
                    write!(f, "({r})")
                } else {
                    write!(f, "{r}")
                }
            }
            Term::Ortho(t) => {
                if matches!(**t, Term::Sasaki(..)) {
                    write!(f, "({t})'")
                } else {
                    write!(f, "{t}'")
                }
            }
        }
    }
}

/// Prints with the minimal parenthesization the grammar allows.
pub fn format_term(t: &Term) -> String {
    t.to_string()
}

/// The judgment `lhs <= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sequent {
    pub lhs: Term,
    pub rhs: Term,
}

impl Sequent {
    pub fn new(lhs: Term, rhs: Term) -> Sequent {
        Sequent { lhs, rhs }
    }

    pub fn atoms(&self) -> Vec<&str> {
        let mut out = self.lhs.atoms();
        for a in self.rhs.atoms() {
            if !out.contains(&a) {
                out.push(a);
            }
        }
        out
    }

    pub fn connective_count(&self) -> usize {
        self.lhs.connective_count() + self.rhs.connective_count()
    }

    pub fn max_ortho_run(&self) -> usize {
        self.lhs.max_ortho_run().max(self.rhs.max_ortho_run())
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} <= {}", self.lhs, self.rhs)
    }
}

impl std::str::FromStr for Term {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_term(s)
    }
}

impl std::str::FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_sequent(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Expected {
    Atom,
    OpenParen,
    CloseParen,
    Amp,
    Prime,
    Leq,
    End,
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expected::Atom => "atom",
            Expected::OpenParen => "'('",
            Expected::CloseParen => "')'",
            Expected::Amp => "'&'",
            Expected::Prime => "\"'\"",
            Expected::Leq => "'<='",
            Expected::End => "end of input",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unexpected {found} at byte {offset}, expected {}", list(expected))]
    Unexpected { offset: usize, found: String, expected: BTreeSet<Expected> },
    #[error("invalid character {ch:?} at byte {offset}")]
    InvalidChar { offset: usize, ch: char },
    #[error("missing '<=' in sequent")]
    MissingSeparator,
    #[error("second '<=' at byte {offset}; a sequent has exactly one")]
    DuplicateSeparator { offset: usize },
}

impl ParseError {
    pub fn offset(&self) -> Option<usize> {
        match self {
            ParseError::Unexpected { offset, .. }
            | ParseError::InvalidChar { offset, .. }
            | ParseError::DuplicateSeparator { offset } => Some(*offset),
            ParseError::MissingSeparator => None,
        }
    }
}

fn list(expected: &BTreeSet<Expected>) -> String {
    expected.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" or ")
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Ident(&'a str),
    Open,
    Close,
    Amp,
    Prime,
    Leq,
}

impl fmt::Display for Tok<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "atom `{s}`"),
            Tok::Open => f.write_str("'('"),
            Tok::Close => f.write_str("')'"),
            Tok::Amp => f.write_str("'&'"),
            Tok::Prime => f.write_str("\"'\""),
            Tok::Leq => f.write_str("'<='"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok<'_>)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'(' => {
                toks.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::Close));
                i += 1;
            }
            b'&' => {
                toks.push((i, Tok::Amp));
                i += 1;
            }
            b'\'' => {
                toks.push((i, Tok::Prime));
                i += 1;
            }
            b'<' if bytes.get(i + 1) == Some(&b'=') => {
                toks.push((i, Tok::Leq));
                i += 2;
            }
            b'a'..=b'z' => {
                let start = i;
                i += 1;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                toks.push((start, Tok::Ident(&text[start..i])));
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::InvalidChar { offset: i, ch });
            }
        }
    }
    Ok(toks)
}

struct Parser<'t, 'a> {
    toks: &'t [(usize, Tok<'a>)],
    pos: usize,
    /// Byte offset reported when the token slice runs out.
    end: usize,
}

impl<'t, 'a> Parser<'t, 'a> {
    fn peek(&self) -> Option<&'t Tok<'a>> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn unexpected(&self, expected: &[Expected]) -> ParseError {
        let (offset, found) = match self.toks.get(self.pos) {
            Some((off, tok)) => (*off, tok.to_string()),
            None => (self.end, "end of input".to_string()),
        };
        ParseError::Unexpected { offset, found, expected: expected.iter().copied().collect() }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.postfix()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.postfix()?;
            acc = Term::sasaki(acc, rhs);
        }
        Ok(acc)
    }

    fn postfix(&mut self) -> Result<Term, ParseError> {
        let mut t = self.primary()?;
        while self.peek() == Some(&Tok::Prime) {
            self.pos += 1;
            t = Term::ortho(t);
        }
        Ok(t)
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Term::atom(*name))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.unexpected(&[Expected::CloseParen, Expected::Amp, Expected::Prime]));
                }
                self.pos += 1;
                Ok(t)
            }
            _ => Err(self.unexpected(&[Expected::Atom, Expected::OpenParen])),
        }
    }

    fn finish(&self, t: Term, follow: &[Expected]) -> Result<Term, ParseError> {
        if self.pos == self.toks.len() {
            Ok(t)
        } else {
            let mut expected = vec![Expected::Amp, Expected::Prime];
            expected.extend_from_slice(follow);
            Err(self.unexpected(&expected))
        }
    }
}

fn parse_tokens(toks: &[(usize, Tok<'_>)], end: usize, follow: &[Expected]) -> Result<Term, ParseError> {
    let mut p = Parser { toks, pos: 0, end };
    let t = p.term()?;
    p.finish(t, follow)
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let toks = tokenize(text)?;
    parse_tokens(&toks, text.len(), &[Expected::End])
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let toks = tokenize(text)?;
    let mut seps = toks.iter().enumerate().filter(|(_, (_, t))| *t == Tok::Leq);
    let (split, (sep_offset, _)) = seps.next().ok_or(ParseError::MissingSeparator)?;
    if let Some((_, (offset, _))) = seps.next() {
        return Err(ParseError::DuplicateSeparator { offset: *offset });
    }
    let lhs = parse_tokens(&toks[..split], *sep_offset, &[Expected::Leq])?;
    let rhs = parse_tokens(&toks[split + 1..], text.len(), &[Expected::End])?;
    Ok(Sequent::new(lhs, rhs))
}
