//! Concrete syntax for formulas and a line-oriented trace format.
//!
//! Formula grammar, loosest binding first:
//!
//! ```text
//! formula  := or_expr
//! or_expr  := and_expr { "|" and_expr }
//! and_expr := bin_temp { "&" bin_temp }
//! bin_temp := unary [ ("U" | "R") interval bin_temp ]
//! unary    := "!" unary | ("F" | "G") interval unary | atom
//! atom     := "true" | "false" | ident | "(" formula ")"
//! interval := "[" nat "," nat "]"
//! ident    := letter { letter | digit | "_" }   (not a keyword)
//! ```
//!
//! `|` and `&` associate to the left, `U` and `R` to the right. Intervals
//! with `lo > hi` parse fine; well-definedness is checked separately.
//!
//! Traces have one state per line. A state is a comma-separated list of
//! identifiers; a blank line or a lone `-` is the empty state.

use std::fmt::{self, Write as _};

use thiserror::Error;

use crate::ast::{Formula, Interval, State, Trace};

/// Byte range `[start, end)` in the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn new(start: usize, end: usize) -> Self {
        SourceSpan { start, end }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {span}: {message}")]
pub struct ParseError {
    pub span: SourceSpan,
    pub message: String,
}

impl ParseError {
    fn new(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseError {
            span,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Bang,
    Amp,
    Pipe,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Nat(usize),
    Ident(String),
    KwTrue,
    KwFalse,
    KwF,
    KwG,
    KwU,
    KwR,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Bang => f.write_str("'!'"),
            Tok::Amp => f.write_str("'&'"),
            Tok::Pipe => f.write_str("'|'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Comma => f.write_str("','"),
            Tok::Nat(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier '{s}'"),
            Tok::KwTrue => f.write_str("'true'"),
            Tok::KwFalse => f.write_str("'false'"),
            Tok::KwF => f.write_str("'F'"),
            Tok::KwG => f.write_str("'G'"),
            Tok::KwU => f.write_str("'U'"),
            Tok::KwR => f.write_str("'R'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn lex(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'!' => Tok::Bang,
            b'&' => Tok::Amp,
            b'|' => Tok::Pipe,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::LBracket,
            b']' => Tok::RBracket,
            b',' => Tok::Comma,
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let digits = &text[start..=i];
                let n = digits.parse().map_err(|_| {
                    ParseError::new(SourceSpan::new(start, i + 1), format!("bound {digits} is too large"))
                })?;
                Tok::Nat(n)
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                match &text[start..=i] {
                    "true" => Tok::KwTrue,
                    "false" => Tok::KwFalse,
                    "F" => Tok::KwF,
                    "G" => Tok::KwG,
                    "U" => Tok::KwU,
                    "R" => Tok::KwR,
                    word => Tok::Ident(word.to_string()),
                }
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    SourceSpan::new(start, start + ch.len_utf8()),
                    format!("unexpected character '{ch}'"),
                ));
            }
        };
        i += 1;
        out.push((tok, SourceSpan::new(start, i)));
    }
    out.push((Tok::Eof, SourceSpan::new(text.len(), text.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, SourceSpan)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> SourceSpan {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &str) -> ParseError {
        ParseError::new(self.span(), format!("expected {expected}, found {}", self.peek()))
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and_expr()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            lhs = Formula::or(lhs, self.and_expr()?);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.bin_temp()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.bin_temp()?);
        }
        Ok(lhs)
    }

    fn bin_temp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::KwU => {
                self.bump();
                let iv = self.interval()?;
                let rhs = self.bin_temp()?;
                Ok(Formula::Until(Box::new(lhs), Box::new(rhs), iv))
            }
            Tok::KwR => {
                self.bump();
                let iv = self.interval()?;
                let rhs = self.bin_temp()?;
                Ok(Formula::Release(Box::new(lhs), Box::new(rhs), iv))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::KwF => {
                self.bump();
                let iv = self.interval()?;
                Ok(Formula::Future(Box::new(self.unary()?), iv))
            }
            Tok::KwG => {
                self.bump();
                let iv = self.interval()?;
                Ok(Formula::Global(Box::new(self.unary()?), iv))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::KwTrue => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::KwFalse => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(name) => Ok(Formula::Prop(name)),
                _ => unreachable!(),
            },
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn nat(&mut self) -> Result<usize, ParseError> {
        match self.peek() {
            Tok::Nat(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("a natural number")),
        }
    }

    fn interval(&mut self) -> Result<Interval, ParseError> {
        self.expect(Tok::LBracket, "'['")?;
        let lo = self.nat()?;
        self.expect(Tok::Comma, "','")?;
        let hi = self.nat()?;
        self.expect(Tok::RBracket, "']'")?;
        Ok(Interval::new(lo, hi))
    }
}

/// Parses a formula. Ill-formed intervals (`lo > hi`) are accepted.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return Err(p.unexpected("end of input"));
    }
    Ok(f)
}

/// Fully parenthesized rendering that [`parse_formula`] maps back to the
/// same tree.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_formula(&mut out, f);
    out
}

fn write_formula(out: &mut String, f: &Formula) {
    match f {
        Formula::True => out.push_str("true"),
        Formula::False => out.push_str("false"),
        Formula::Prop(p) => out.push_str(p),
        Formula::Not(g) => {
            out.push_str("(! ");
            write_formula(out, g);
            out.push(')');
        }
        Formula::And(g, h) | Formula::Or(g, h) => {
            let op = if matches!(f, Formula::And(..)) { " & " } else { " | " };
            out.push('(');
            write_formula(out, g);
            out.push_str(op);
            write_formula(out, h);
            out.push(')');
        }
        Formula::Future(g, iv) | Formula::Global(g, iv) => {
            let op = if matches!(f, Formula::Future(..)) { 'F' } else { 'G' };
            let _ = write!(out, "({op}{iv} ");
            write_formula(out, g);
            out.push(')');
        }
        Formula::Until(g, h, iv) | Formula::Release(g, h, iv) => {
            let op = if matches!(f, Formula::Until(..)) { 'U' } else { 'R' };
            out.push('(');
            write_formula(out, g);
            let _ = write!(out, " {op}{iv} ");
            write_formula(out, h);
            out.push(')');
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

/// Parses the line-oriented trace format. LF and CRLF line endings are both
/// accepted; a final newline is optional.
pub fn parse_trace(text: &str) -> Result<Trace, ParseError> {
    let mut states = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches('\n').trim_end_matches('\r');
        states.push(parse_state(line, offset)?);
        offset += raw.len();
    }
    Ok(Trace::new(states))
}

fn parse_state(line: &str, offset: usize) -> Result<State, ParseError> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed == "-" {
        return Ok(State::new());
    }
    let mut state = State::new();
    let mut col = 0;
    for item in line.split(',') {
        let name = item.trim();
        if !is_ident(name) {
            let start = offset + col + (item.len() - item.trim_start().len());
            return Err(ParseError::new(
                SourceSpan::new(start, start + name.len()),
                format!("malformed proposition name '{name}'"),
            ));
        }
        state.insert(name);
        col += item.len() + 1;
    }
    Ok(state)
}

/// Renders a trace in the format read by [`parse_trace`]: propositions in
/// sorted order, `-` for empty states, every line LF-terminated.
pub fn print_trace(t: &Trace) -> String {
    let mut out = String::new();
    for s in t.states() {
        if s.is_empty() {
            out.push('-');
        } else {
            let names: Vec<&str> = s.props().iter().map(String::as_str).collect();
            out.push_str(&names.join(","));
        }
        out.push('\n');
    }
    out
}
