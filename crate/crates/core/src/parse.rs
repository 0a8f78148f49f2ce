//! Text grammar for words and presentations.
//!
//! ```text
//! word         := factor (('*' | whitespace) factor)*
//! factor       := atom ('^' integer)?
//! atom         := name | '(' word ')' | '1'
//! presentation := '<' name (',' name)* '|' relation (',' relation)* '>'
//! relation     := word ('=' word)*
//! ```
//!
//! `#` starts a comment running to the end of the line. A relation
//! `w1 = w2` becomes the relator `w1 * w2^-1`; a chain `w1 = w2 = w3` gives
//! one relator per adjacent pair.

use alloc::string::ToString;
use alloc::vec::Vec;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::word::{free_reduce, is_valid_name, Generator, Letter, Presentation, Word};

/// Longest word the parser will expand to, in letters.
pub const MAX_EXPANDED_LEN: usize = 1 << 24;

pub fn parse_word(text: &str, alphabet: &[Generator]) -> Result<Word> {
    let mut p = Parser::new(text);
    let letters = p.word(alphabet)?;
    p.expect_end()?;
    Ok(free_reduce(letters))
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let mut p = Parser::new(text);
    p.expect(b'<')?;
    let mut gens: Vec<Generator> = Vec::new();
    p.skip_ws();
    if p.peek() != Some(b'|') {
        loop {
            let (_, name) = p.name()?;
            let g = Generator::new(name)?;
            if gens.contains(&g) {
                return Err(Error::DuplicateGenerator(g.as_str().to_string()));
            }
            gens.push(g);
            p.skip_ws();
            if p.peek() == Some(b',') {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(b'|')?;
    let mut relators = Vec::new();
    p.skip_ws();
    if p.peek() != Some(b'>') {
        loop {
            let mut sides = alloc::vec![p.word(&gens)?];
            loop {
                p.skip_ws();
                if p.peek() == Some(b'=') {
                    p.pos += 1;
                    sides.push(p.word(&gens)?);
                } else {
                    break;
                }
            }
            if sides.len() == 1 {
                relators.push(free_reduce(sides.pop().unwrap_or_default()));
            } else {
                for pair in sides.windows(2) {
                    let rhs = free_reduce(pair[1].iter().copied());
                    relators.push(free_reduce(pair[0].iter().copied()).concat(&rhs.inverse()));
                }
            }
            p.skip_ws();
            if p.peek() == Some(b',') {
                p.pos += 1;
            } else {
                break;
            }
        }
    }
    p.expect(b'>')?;
    p.expect_end()?;
    Presentation::new(gens, relators)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn err_at(&self, kind: ParseErrorKind, position: usize) -> Error {
        Error::Parse(ParseError::new(kind, position))
    }

    fn unexpected(&self) -> Error {
        match self.peek() {
            None => self.err_at(ParseErrorKind::UnexpectedEnd, self.pos),
            Some(_) => {
                let c = core::str::from_utf8(&self.src[self.pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('\u{fffd}');
                self.err_at(ParseErrorKind::UnexpectedChar(c), self.pos)
            }
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c == b'#' {
                while let Some(c) = self.peek() {
                    if c == b'\n' {
                        break;
                    }
                    self.pos += 1;
                }
            } else if c.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos == self.src.len() {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn name(&mut self) -> Result<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        if !matches!(self.peek(), Some(b'a'..=b'z')) {
            return Err(self.unexpected());
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        // Only ASCII was consumed, so the slice is valid UTF-8.
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or_default();
        debug_assert!(is_valid_name(s));
        Ok((start, s))
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(b'a'..=b'z' | b'(' | b'1'))
    }

    fn word(&mut self, alphabet: &[Generator]) -> Result<Vec<Letter>> {
        let mut out = self.factor(alphabet)?;
        loop {
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else if !self.starts_atom() {
                break;
            }
            let f = self.factor(alphabet)?;
            if out.len() + f.len() > MAX_EXPANDED_LEN {
                return Err(self.err_at(ParseErrorKind::ExponentOverflow, self.pos));
            }
            out.extend(f);
        }
        Ok(out)
    }

    fn factor(&mut self, alphabet: &[Generator]) -> Result<Vec<Letter>> {
        let base = self.atom(alphabet)?;
        self.skip_ws();
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let at = self.pos;
        let exp = self.integer()?;
        let reps = usize::try_from(exp.unsigned_abs())
            .ok()
            .filter(|&r| {
                r.checked_mul(base.len())
                    .is_some_and(|n| n <= MAX_EXPANDED_LEN)
            })
            .ok_or_else(|| self.err_at(ParseErrorKind::ExponentOverflow, at))?;
        let unit: Vec<Letter> = if exp < 0 {
            base.iter().rev().map(|l| l.inverse()).collect()
        } else {
            base
        };
        let mut out = Vec::with_capacity(unit.len() * reps);
        for _ in 0..reps {
            out.extend_from_slice(&unit);
        }
        Ok(out)
    }

    fn atom(&mut self, alphabet: &[Generator]) -> Result<Vec<Letter>> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word(alphabet)?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'1') => {
                self.pos += 1;
                if matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    return Err(self.unexpected());
                }
                Ok(Vec::new())
            }
            Some(b'a'..=b'z') => {
                let (start, name) = self.name()?;
                match alphabet.iter().position(|g| g.as_str() == name) {
                    Some(i) => Ok(alloc::vec![Letter::pos(i)]),
                    None => Err(Error::Parse(ParseError {
                        kind: ParseErrorKind::UnknownGenerator,
                        position: start,
                        name: Some(name.to_string()),
                    })),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let digits = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if self.pos == digits {
            return Err(self.unexpected());
        }
        let text = core::str::from_utf8(&self.src[digits..self.pos]).unwrap_or_default();
        let mag: i64 = text
            .parse()
            .map_err(|_| self.err_at(ParseErrorKind::ExponentOverflow, start))?;
        Ok(if neg { -mag } else { mag })
    }
}
