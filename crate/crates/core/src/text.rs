//! Quiver files, the expression grammar, and canonical printing.
//!
//! Quiver file:
//!
//! ```text
//! # comment
//! vertices: v1 v2
//! arrow a : v1 -> v2
//! special v1 a
//! ```
//!
//! Expressions: `expr := ['-'] term (('+'|'-') term)*`,
//! `term := factor ('*' factor)*`, `factor := scalar | atom | '(' expr ')'`,
//! `atom := 'e(' vertex ')' | arrow | arrow "'"`,
//! `scalar := integer ['/' positive-integer]`. Products read right to left
//! like composition: `b * a` applies `a` first. The postfix `'` marks a ghost.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};
use crate::quiver::{Letter, Quiver, RawQuiver};
use crate::tensor::TensorElement;
use crate::word::Word;

/// A syntax error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

// ---------------------------------------------------------------------------
// printing

pub fn print_word(q: &Quiver, w: &Word) -> String {
    if w.is_empty() {
        return format!("e({})", q.vertex_name(w.source()));
    }
    let parts: Vec<String> = w
        .letters()
        .iter()
        .rev()
        .map(|l| {
            let name = &q.arrow(l.arrow).name;
            if l.ghost {
                format!("{name}'")
            } else {
                name.clone()
            }
        })
        .collect();
    parts.join(" * ")
}

fn push_term(out: &mut String, first: bool, coef: &Scalar, body: &str) {
    let negative = coef.is_negative();
    match (first, negative) {
        (true, false) => {}
        (true, true) => out.push('-'),
        (false, false) => out.push_str(" + "),
        (false, true) => out.push_str(" - "),
    }
    let magnitude = if negative { -coef } else { coef.clone() };
    if !magnitude.is_one() {
        let _ = write!(out, "{magnitude} * ");
    }
    out.push_str(body);
}

/// Canonical text of an element; `"0"` for zero.
pub fn print_element(q: &Quiver, x: &Element) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in x.terms().enumerate() {
        push_term(&mut out, i == 0, c, &print_word(q, w));
    }
    out
}

/// Tensors print as `u (x) w` with factors in written order.
pub fn print_tensor(q: &Quiver, t: &TensorElement) -> String {
    if t.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (factors, c)) in t.terms().enumerate() {
        let body: Vec<String> = factors
            .iter()
            .map(|w| {
                let s = print_word(q, w);
                if w.len() > 1 {
                    format!("({s})")
                } else {
                    s
                }
            })
            .collect();
        push_term(&mut out, i == 0, c, &body.join(" (x) "));
    }
    out
}

pub fn print_quiver(q: &Quiver) -> String {
    let raw = q.to_raw();
    let mut out = String::new();
    let _ = writeln!(out, "vertices: {}", raw.vertices.join(" "));
    for (name, s, t) in &raw.arrows {
        let _ = writeln!(out, "arrow {name} : {s} -> {t}");
    }
    for (v, a) in &raw.special {
        let _ = writeln!(out, "special {v} {a}");
    }
    out
}

// ---------------------------------------------------------------------------
// quiver files

pub fn parse_quiver(src: &str) -> Result<Quiver> {
    let mut raw = RawQuiver::new();
    let mut seen_vertices = false;
    for (i, line) in src.lines().enumerate() {
        let lineno = i + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let col = line.len() - line.trim_start().len() + 1;
        if let Some(rest) = trimmed.strip_prefix("vertices:") {
            if seen_vertices {
                return Err(ParseError::at(lineno, col, "second `vertices:` line").into());
            }
            seen_vertices = true;
            raw.vertices.extend(
                rest.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_owned),
            );
        } else if let Some(rest) = trimmed.strip_prefix("arrow ") {
            let bad = || ParseError::at(lineno, col, "expected `arrow <name> : <src> -> <dst>`");
            let (name, ends) = rest.split_once(':').ok_or_else(bad)?;
            let (s, t) = ends.split_once("->").ok_or_else(bad)?;
            let (name, s, t) = (name.trim(), s.trim(), t.trim());
            if [name, s, t]
                .iter()
                .any(|x| x.is_empty() || x.contains(char::is_whitespace))
            {
                return Err(bad().into());
            }
            raw.arrows.push((name.into(), s.into(), t.into()));
        } else if let Some(rest) = trimmed.strip_prefix("special ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let [v, a] = parts[..] else {
                return Err(ParseError::at(lineno, col, "expected `special <vertex> <arrow>`").into());
            };
            raw.special.push((v.into(), a.into()));
        } else {
            return Err(ParseError::at(lineno, col, format!("unrecognized line `{trimmed}`")).into());
        }
    }
    if !seen_vertices {
        return Err(ParseError::at(1, 1, "missing `vertices:` line").into());
    }
    Ok(raw.validate()?)
}

// ---------------------------------------------------------------------------
// expressions

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Prime,
}

fn tokenize(src: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        let simple = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '\'' => Some(Tok::Prime),
            _ => None,
        };
        if let Some(t) = simple {
            out.push((t, start));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits parse");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(src[start..i].to_owned()), start));
        } else {
            let ch = src[start..].chars().next().unwrap();
            return Err(ParseError::at(1, start + 1, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

enum Value {
    Scalar(Scalar),
    Elem(Element),
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    q: &'a Quiver,
    field: Field,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1) + 1
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        ParseError::at(1, self.column(), msg).into()
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn to_element(&self, v: Value) -> Element {
        match v {
            Value::Elem(e) => e,
            Value::Scalar(s) => Element::unit_sum(self.field, self.q.vertex_ids()).scale(&s),
        }
    }

    fn expr(&mut self) -> Result<Element> {
        let negate = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let first = self.term()?;
        let mut acc = self.to_element(first);
        if negate {
            acc = -&acc;
        }
        loop {
            let sign = match self.peek() {
                Some(Tok::Plus) => true,
                Some(Tok::Minus) => false,
                _ => break,
            };
            self.pos += 1;
            let t = self.term()?;
            let t = self.to_element(t);
            acc = if sign { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Value> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = match (acc, rhs) {
                (Value::Scalar(a), Value::Scalar(b)) => Value::Scalar(&a * &b),
                (Value::Scalar(a), Value::Elem(x)) | (Value::Elem(x), Value::Scalar(a)) => Value::Elem(x.scale(&a)),
                (Value::Elem(x), Value::Elem(y)) => Value::Elem(x.mul_free(&y)),
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Value> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut den = BigInt::one();
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if d.is_positive() => {
                            den = d;
                            self.pos += 1;
                        }
                        Some(Tok::Int(d)) if d.is_zero() => {
                            return Err(self.err("zero denominator"));
                        }
                        _ => return Err(self.err("expected a positive integer denominator")),
                    }
                }
                let col = self.column();
                self.field
                    .from_fraction(&n, &den)
                    .map(Value::Scalar)
                    .map_err(|e| ParseError::at(1, col, e.to_string()).into())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Value::Elem(x))
            }
            Some(Tok::Ident(name)) => {
                let col = self.column();
                self.pos += 1;
                if name == "e" && self.peek() == Some(&Tok::LParen) {
                    self.pos += 1;
                    let vcol = self.column();
                    let Some(Tok::Ident(v)) = self.peek().cloned() else {
                        return Err(self.err("expected a vertex name"));
                    };
                    self.pos += 1;
                    self.expect(Tok::RParen, "`)`")?;
                    let vid = self
                        .q
                        .vertex_id(&v)
                        .ok_or_else(|| ParseError::at(1, vcol, format!("unknown vertex `{v}`")))?;
                    return Ok(Value::Elem(Element::vertex(self.field, vid)));
                }
                let aid = self
                    .q
                    .arrow_id(&name)
                    .ok_or_else(|| ParseError::at(1, col, format!("unknown arrow `{name}`")))?;
                let ghost = if self.peek() == Some(&Tok::Prime) {
                    self.pos += 1;
                    true
                } else {
                    false
                };
                Ok(Value::Elem(Element::letter(
                    self.field,
                    self.q,
                    Letter { arrow: aid, ghost },
                )))
            }
            Some(_) => Err(self.err("expected a scalar, atom or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parses an expression into an element of the free algebra.
pub fn parse_expr(src: &str, q: &Quiver, field: Field) -> Result<Element> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        q,
        field,
    };
    let x = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(x)
}
