//! Text form of ordinals.
//!
//! Grammar (ASCII, whitespace insignificant, `w` denotes omega):
//!
//! ```text
//! expr          := term ('+' term)*
//! term          := atom ('*' nat)?
//! atom          := 'w' ('^' atom_or_paren)? | nat
//! atom_or_paren := atom | '(' expr ')'
//! ```
//!
//! `^` binds tighter than `*`, which binds tighter than `+`. Input does not
//! have to be in normal form: the parser folds the syntax tree through
//! ordinal arithmetic, so `"1+w"` parses to `w` and `"w*2+w"` to `w*3`.
//! `render` always emits the canonical spelling, and `parse(render(a)) == a`
//! for every ordinal.

use crate::ordinal::Ordinal;
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;

/// Default bound on `^` nesting depth.
pub const DEFAULT_MAX_DEPTH: usize = 64;

const EXPECTED_ATOM: &[&str] = &["'w'", "digit"];
const EXPECTED_ATOM_OR_PAREN: &[&str] = &["'w'", "digit", "'('"];
const EXPECTED_DIGIT: &[&str] = &["digit"];
const EXPECTED_CLOSE: &[&str] = &["')'"];
const EXPECTED_TAIL: &[&str] = &["'+'", "'*'", "end of input"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the error was detected.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Unexpected {
        /// The offending character, or `None` at end of input.
        found: Option<char>,
        expected: &'static [&'static str],
    },
    DepthExceeded {
        max: usize,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ParseErrorKind::Unexpected { found, expected } => {
                write!(f, "parse error at byte {}: expected ", self.position)?;
                for (i, e) in expected.iter().enumerate() {
                    if i > 0 {
                        write!(f, " or ")?;
                    }
                    write!(f, "{e}")?;
                }
                match found {
                    Some(c) => write!(f, ", found {c:?}"),
                    None => write!(f, ", found end of input"),
                }
            }
            ParseErrorKind::DepthExceeded { max } => {
                write!(
                    f,
                    "parse error at byte {}: exponent nesting exceeds depth {max}",
                    self.position
                )
            }
        }
    }
}

impl std::error::Error for ParseError {}

/// Parses with the default nesting bound.
pub fn parse(input: &str) -> Result<Ordinal, ParseError> {
    parse_with_depth(input, DEFAULT_MAX_DEPTH)
}

pub fn parse_with_depth(input: &str, max_depth: usize) -> Result<Ordinal, ParseError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        max_depth,
    };
    p.skip_ws();
    let value = p.expr(0)?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.unexpected(EXPECTED_TAIL));
    }
    Ok(value)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    max_depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, expected: &'static [&'static str]) -> ParseError {
        // report the full character, not just its first byte
        let found = std::str::from_utf8(&self.src[self.pos.min(self.src.len())..])
            .ok()
            .and_then(|s| s.chars().next());
        ParseError {
            position: self.pos,
            kind: ParseErrorKind::Unexpected { found, expected },
        }
    }

    fn expr(&mut self, depth: usize) -> Result<Ordinal, ParseError> {
        let mut acc = self.term(depth)?;
        loop {
            self.skip_ws();
            if self.eat(b'+') {
                self.skip_ws();
                acc = acc.add(&self.term(depth)?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self, depth: usize) -> Result<Ordinal, ParseError> {
        let atom = self.atom(depth)?;
        self.skip_ws();
        if self.eat(b'*') {
            self.skip_ws();
            let n = self.nat()?;
            Ok(atom.mul(&Ordinal::from_big(n)))
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self, depth: usize) -> Result<Ordinal, ParseError> {
        if depth > self.max_depth {
            return Err(ParseError {
                position: self.pos,
                kind: ParseErrorKind::DepthExceeded {
                    max: self.max_depth,
                },
            });
        }
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                self.skip_ws();
                if self.eat(b'^') {
                    self.skip_ws();
                    let e = self.atom_or_paren(depth + 1)?;
                    Ok(Ordinal::omega_pow(&e))
                } else {
                    Ok(Ordinal::omega())
                }
            }
            Some(b) if b.is_ascii_digit() => self.nat().map(Ordinal::from_big),
            _ => Err(self.unexpected(EXPECTED_ATOM)),
        }
    }

    fn atom_or_paren(&mut self, depth: usize) -> Result<Ordinal, ParseError> {
        if self.eat(b'(') {
            self.skip_ws();
            let e = self.expr(depth)?;
            self.skip_ws();
            if !self.eat(b')') {
                return Err(self.unexpected(EXPECTED_CLOSE));
            }
            Ok(e)
        } else {
            match self.peek() {
                Some(b) if b == b'w' || b.is_ascii_digit() => self.atom(depth),
                _ => Err(self.unexpected(EXPECTED_ATOM_OR_PAREN)),
            }
        }
    }

    fn nat(&mut self) -> Result<BigUint, ParseError> {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.unexpected(EXPECTED_DIGIT));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit run parses"))
    }
}

/// Canonical spelling: `"0"`, `"w"`, `"w^2*3+w+5"`, exponents parenthesized
/// exactly when they are not a single atom.
pub fn render(a: &Ordinal) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (exponent, coefficient)) in a.terms().enumerate() {
        if i > 0 {
            out.push('+');
        }
        if exponent.is_zero() {
            out.push_str(&coefficient.to_string());
            continue;
        }
        out.push('w');
        if *exponent != Ordinal::one() {
            out.push('^');
            let inner = render(exponent);
            if exponent_is_atom(exponent) {
                out.push_str(&inner);
            } else {
                out.push('(');
                out.push_str(&inner);
                out.push(')');
            }
        }
        if !coefficient.is_one() {
            out.push('*');
            out.push_str(&coefficient.to_string());
        }
    }
    out
}

/// True when `render(e)` is a single `atom` of the grammar, i.e. a digit run
/// or `w^...` with coefficient 1.
fn exponent_is_atom(e: &Ordinal) -> bool {
    let mut terms = e.terms();
    if terms.len() != 1 {
        return false;
    }
    let (exponent, coefficient) = terms.next().expect("one term");
    exponent.is_zero() || coefficient.is_one()
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}
