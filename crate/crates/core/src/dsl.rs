//! Text syntax for presentations and words.
//!
//! ```text
//! presentation := '<' gens '|' rels '>'
//! gens         := ident (',' ident)*
//! rels         := (rel (',' rel)*)?
//! rel          := word ('=' word)?
//! word         := '1' | factor+
//! factor       := (ident | '(' word ')') ('^' int)?
//! ```
//!
//! Identifiers are `[A-Za-z][A-Za-z0-9_]*`, optionally followed by a level
//! suffix `@k`. Juxtaposition multiplies; `*` and `.` may also be used. A
//! relator `1` is identity padding.

use std::fmt;

use thiserror::Error;

use crate::freegroup::{Generator, Letter, Word};
use crate::presentation::{Presentation, PresentationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser { src, pos: 0 }
    }

    fn error(&self, at: usize, message: impl Into<String>) -> ParseError {
        let before = &self.src[..at];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap().chars().count() + 1;
        ParseError::Syntax { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{c}`")))
        }
    }

    fn unexpected(&mut self, wanted: &str) -> ParseError {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek_raw() {
            Some(c) => self.error(at, format!("expected {wanted}, found `{c}`")),
            None => self.error(at, format!("expected {wanted}, found end of input")),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn ident(&mut self) -> Result<Generator, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let mut len = rest
            .char_indices()
            .take_while(|&(i, c)| if i == 0 { c.is_ascii_alphabetic() } else { c.is_ascii_alphanumeric() || c == '_' })
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        if len == 0 {
            return Err(self.unexpected("a generator name"));
        }
        if rest[len..].starts_with('@') {
            let tail = &rest[len + 1..];
            let sign = usize::from(tail.starts_with('-'));
            let digits = tail[sign..].chars().take_while(char::is_ascii_digit).count();
            if digits == 0 {
                return Err(self.error(start + len + 1, "expected a level after `@`"));
            }
            len += 1 + sign + digits;
        }
        self.pos = start + len;
        Generator::new(&rest[..len]).map_err(|e| self.error(start, e.to_string()))
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let sign = usize::from(rest.starts_with('-') || rest.starts_with('+'));
        let digits = rest[sign..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.unexpected("an integer exponent"));
        }
        self.pos = start + sign + digits;
        rest[..sign + digits].parse().map_err(|_| self.error(start, "exponent out of range"))
    }

    fn starts_factor(&mut self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_alphabetic() || c == '(')
    }

    fn factor(&mut self) -> Result<Word, ParseError> {
        let base = if self.eat('(') {
            let w = self.word()?;
            self.expect(')')?;
            w
        } else {
            Word::letter(&self.ident()?)
        };
        if self.eat('^') {
            let at = self.pos;
            let n = self.int()?;
            if n == 0 {
                return Err(self.error(at, "exponent must be nonzero"));
            }
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    /// A product of factors, or `1`.
    fn word(&mut self) -> Result<Word, ParseError> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Word::identity());
        }
        if !self.starts_factor() {
            return Err(self.unexpected("a word"));
        }
        let mut w = self.factor()?;
        loop {
            if self.eat('*') || self.eat('.') {
                w = w.concat(&self.factor()?);
            } else if self.starts_factor() {
                w = w.concat(&self.factor()?);
            } else {
                return Ok(w);
            }
        }
    }

    /// A relator, `None` for explicit `1` padding.
    fn relator(&mut self) -> Result<Option<Word>, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let explicit_one = self.peek() == Some('1');
        let lhs = self.word()?;
        let r = if self.eat('=') { lhs.concat(&self.word()?.inverse()) } else { lhs };
        match (r.is_identity(), explicit_one && self.src[start..self.pos].trim() == "1") {
            (true, true) => Ok(None),
            (true, false) => Err(self.error(start, "relator reduces to the identity")),
            (false, _) => Ok(Some(r)),
        }
    }

    fn generator_list(&mut self, close: char) -> Result<Vec<Generator>, ParseError> {
        let mut gens = Vec::new();
        if self.peek() == Some(close) {
            return Ok(gens);
        }
        loop {
            let at = {
                self.skip_ws();
                self.pos
            };
            let g = self.ident()?;
            if gens.contains(&g) {
                return Err(self.error(at, format!("duplicate generator `{g}`")));
            }
            gens.push(g);
            if !self.eat(',') {
                return Ok(gens);
            }
        }
    }

    fn presentation(&mut self) -> Result<Presentation, ParseError> {
        self.expect('<')?;
        let gens = self.generator_list('|')?;
        self.expect('|')?;
        let mut relators = Vec::new();
        let mut padding = 0;
        if self.peek() != Some('>') {
            loop {
                let at = {
                    self.skip_ws();
                    self.pos
                };
                match self.relator()? {
                    Some(r) => {
                        if let Some(l) = r.letters().iter().find(|l| !gens.contains(&l.gen)) {
                            return Err(self.error(at, format!("unknown generator `{}`", l.gen)));
                        }
                        relators.push(r);
                    }
                    None => padding += 1,
                }
                if !self.eat(',') {
                    break;
                }
            }
        }
        self.expect('>')?;
        if !self.at_end() {
            return Err(self.unexpected("end of input"));
        }
        let p = Presentation::new(gens, relators)?;
        let n = p.relators().len() + padding;
        Ok(p.pad_relators(n))
    }
}

pub fn parse_presentation(s: &str) -> Result<Presentation, ParseError> {
    Parser::new(s).presentation()
}

/// Parses a word over any generators.
pub fn parse_word(s: &str) -> Result<Word, ParseError> {
    let mut p = Parser::new(s);
    let w = p.word()?;
    if !p.at_end() {
        return Err(p.unexpected("end of input"));
    }
    Ok(w)
}

/// Parses a word and checks it against the generators of `p`.
pub fn parse_word_in(p: &Presentation, s: &str) -> Result<Word, ParseError> {
    let w = parse_word(s)?;
    p.check_word(&w)?;
    Ok(w)
}

/// Parses a comma-separated list of words; an empty string gives no words.
pub fn parse_words(s: &str) -> Result<Vec<Word>, ParseError> {
    let mut p = Parser::new(s);
    let mut out = Vec::new();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        out.push(p.word()?);
        if !p.eat(',') {
            break;
        }
    }
    if !p.at_end() {
        return Err(p.unexpected("`,` or end of input"));
    }
    Ok(out)
}

/// Parses `name=int` pairs separated by commas.
pub fn parse_assignments(s: &str) -> Result<Vec<(Generator, i64)>, ParseError> {
    let mut p = Parser::new(s);
    let mut out = Vec::new();
    if p.at_end() {
        return Ok(out);
    }
    loop {
        let g = p.ident()?;
        p.expect('=')?;
        out.push((g, p.int()?));
        if !p.eat(',') {
            break;
        }
    }
    if !p.at_end() {
        return Err(p.unexpected("`,` or end of input"));
    }
    Ok(out)
}

/// Formats a word in the input syntax, grouping runs into powers.
pub struct WordSyntax<'a>(pub &'a Word);

impl fmt::Display for WordSyntax<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.0.letters();
        if letters.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let l: &Letter = &letters[i];
            let mut j = i + 1;
            while j < letters.len() && letters[j] == *l {
                j += 1;
            }
            let n = (j - i) as i64 * l.sign();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            if n == 1 {
                write!(f, "{}", l.gen)?;
            } else {
                write!(f, "{}^{}", l.gen, n)?;
            }
            i = j;
        }
        Ok(())
    }
}

/// Inverse of [`parse_presentation`] up to whitespace and relator spelling.
pub fn serialize_presentation(p: &Presentation) -> String {
    let gens: Vec<String> = p.generators().iter().map(ToString::to_string).collect();
    let rels: Vec<String> = p.relators().iter().map(|r| WordSyntax(r).to_string()).collect();
    if rels.is_empty() {
        format!("< {} | >", gens.join(", "))
    } else {
        format!("< {} | {} >", gens.join(", "), rels.join(", "))
    }
}
