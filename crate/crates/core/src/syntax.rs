//! Shared scanning machinery for the three term grammars.
//!
//! All grammars are whitespace-insensitive. A failed parse reports the byte
//! offset of the offending token and the production that was expected there.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {offset}: expected {expected}, found {found}")]
pub struct ParseError {
    pub offset: usize,
    pub expected: String,
    pub found: String,
    pub input: String,
}

impl ParseError {
    /// The input line followed by a caret under the failure offset.
    pub fn caret(&self) -> String {
        let width = self.input[..self.offset.min(self.input.len())].chars().count();
        format!("{}\n{}^", self.input, " ".repeat(width))
    }
}

pub(crate) struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    pub fn reset(&mut self, pos: usize) {
        self.pos = pos;
    }

    /// Next non-whitespace character, without consuming it.
    pub fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    /// Consumes `tok` after optional whitespace, if present.
    pub fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    /// Consumes `tok` only when it follows the previous token directly.
    pub fn eat_adjacent(&mut self, tok: &str) -> bool {
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &str, production: &str) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.error(production))
        }
    }

    pub fn error(&mut self, expected: impl fmt::Display) -> ParseError {
        self.skip_ws();
        let found = match self.rest().chars().next() {
            None => "end of input".to_string(),
            Some(c) => format!("`{c}`"),
        };
        ParseError {
            offset: self.pos,
            expected: expected.to_string(),
            found,
            input: self.src.to_string(),
        }
    }

    /// Succeeds only when nothing but whitespace remains.
    pub fn finish(&mut self) -> Result<(), ParseError> {
        if self.peek().is_none() {
            Ok(())
        } else {
            Err(self.error("` + ` or end of input"))
        }
    }
}
