//! Text syntax for Weyl sums: `(re,im)*W[c1,c2,...] + ...`.
//!
//! Whitespace is ignored everywhere. A term may drop its coefficient
//! (`W[1,0]` means `(1,0)*W[1,0]`), terms may be joined by `-` as well as
//! `+`, and the single token `0` denotes the zero element.

use std::sync::Arc;

use num_complex::Complex64;

use super::{WeylAlgebra, WeylElement};
use crate::error::{Error, Result};
use crate::presymplectic::GroupElement;

pub fn parse_element(algebra: &Arc<WeylAlgebra>, text: &str) -> Result<WeylElement> {
    let mut parser = Parser::new(text);
    if parser.tokens.len() == 1 && parser.tokens[0].1 == '0' {
        return Ok(WeylElement::zero(algebra));
    }
    let mut terms = Vec::new();
    let mut sign = 1.0;
    if parser.eat('-') {
        sign = -1.0;
    } else {
        parser.eat('+');
    }
    loop {
        let start = parser.position();
        let (coeff, u) = parser.term()?;
        if u.rank() != algebra.rank() {
            return Err(Error::Parse {
                position: start,
                message: format!(
                    "symbol has {} coordinates, algebra has rank {}",
                    u.rank(),
                    algebra.rank()
                ),
            });
        }
        terms.push((u, coeff * sign));
        if parser.at_end() {
            break;
        }
        sign = if parser.eat('+') {
            1.0
        } else if parser.eat('-') {
            -1.0
        } else {
            return Err(parser.error("expected `+` or `-` between terms"));
        };
    }
    WeylElement::from_terms(algebra, terms)
}

/// Parses `a,b;c,d;...` into integer vectors.
pub fn parse_vectors(text: &str) -> Result<Vec<GroupElement>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for chunk in text.split(';') {
        out.push(parse_vector_at(chunk, offset)?);
        offset += chunk.len() + 1;
    }
    Ok(out)
}

fn parse_vector_at(chunk: &str, offset: usize) -> Result<GroupElement> {
    let trimmed = chunk.trim();
    if trimmed.is_empty() {
        return Ok(GroupElement::new(vec![]));
    }
    let mut coords = Vec::new();
    let mut local = 0;
    for part in chunk.split(',') {
        let value = part.trim().parse::<i64>().map_err(|_| Error::Parse {
            position: offset + local,
            message: format!("expected integer, found `{}`", part.trim()),
        })?;
        coords.push(value);
        local += part.len() + 1;
    }
    Ok(GroupElement::new(coords))
}

struct Parser {
    /// Non-whitespace characters with their byte offsets.
    tokens: Vec<(usize, char)>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser {
            tokens: text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            cursor: 0,
            end: text.len(),
        }
    }

    fn position(&self) -> usize {
        self.tokens.get(self.cursor).map_or(self.end, |t| t.0)
    }

    fn at_end(&self) -> bool {
        self.cursor >= self.tokens.len()
    }

    fn peek(&self) -> Option<char> {
        self.tokens.get(self.cursor).map(|t| t.1)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.cursor += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn error(&self, message: &str) -> Error {
        let found = match self.peek() {
            Some(c) => format!(", found `{c}`"),
            None => ", found end of input".to_string(),
        };
        Error::Parse {
            position: self.position(),
            message: format!("{message}{found}"),
        }
    }

    fn term(&mut self) -> Result<(Complex64, GroupElement)> {
        let coeff = if self.eat('(') {
            let re = self.number()?;
            self.expect(',')?;
            let im = self.number()?;
            self.expect(')')?;
            self.expect('*')?;
            Complex64::new(re, im)
        } else {
            Complex64::new(1.0, 0.0)
        };
        self.expect('W')?;
        self.expect('[')?;
        let mut coords = Vec::new();
        if !self.eat(']') {
            loop {
                coords.push(self.integer()?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok((coeff, GroupElement::new(coords)))
    }

    fn lexeme(&mut self, allowed: impl Fn(char, Option<char>) -> bool) -> (usize, String) {
        let start = self.position();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !allowed(c, s.chars().last()) {
                break;
            }
            s.push(c);
            self.cursor += 1;
        }
        (start, s)
    }

    fn describe(&self, lexeme: &str) -> String {
        match (lexeme, self.peek()) {
            ("", Some(c)) => format!("`{c}`"),
            ("", None) => "end of input".to_string(),
            (s, _) => format!("`{s}`"),
        }
    }

    fn number(&mut self) -> Result<f64> {
        let (start, s) = self.lexeme(|c, prev| {
            c.is_ascii_digit()
                || c == '.'
                || c == 'e'
                || c == 'E'
                || ((c == '-' || c == '+') && matches!(prev, None | Some('e') | Some('E')))
        });
        s.parse::<f64>().map_err(|_| Error::Parse {
            position: start,
            message: format!("expected a number, found {}", self.describe(&s)),
        })
    }

    fn integer(&mut self) -> Result<i64> {
        let (start, s) = self.lexeme(|c, prev| c.is_ascii_digit() || (c == '-' && prev.is_none()));
        s.parse::<i64>().map_err(|_| Error::Parse {
            position: start,
            message: format!("expected an integer, found {}", self.describe(&s)),
        })
    }
}
