//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr := par { "+" par }
//! par  := seq { "||" seq }
//! seq  := star { "." star }
//! star := atom { "*" | "^*" }
//! atom := "0" | "1" | LETTER | "(" expr ")"
//! ```
//!
//! Whitespace is ignored between tokens; binary operators associate to the left.

use super::SprExpr;
use crate::error::ParseError;
use crate::step::Letter;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn error(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn expr(&mut self) -> Result<SprExpr, ParseError> {
        let mut x = self.par()?;
        while self.eat("+") {
            x = SprExpr::sum(x, self.par()?);
        }
        Ok(x)
    }

    fn par(&mut self) -> Result<SprExpr, ParseError> {
        let mut x = self.seq()?;
        while self.eat("||") {
            x = SprExpr::par(x, self.seq()?);
        }
        Ok(x)
    }

    fn seq(&mut self) -> Result<SprExpr, ParseError> {
        let mut x = self.star()?;
        while self.eat(".") {
            x = SprExpr::seq(x, self.star()?);
        }
        Ok(x)
    }

    fn star(&mut self) -> Result<SprExpr, ParseError> {
        let mut x = self.atom()?;
        loop {
            if self.eat("*") {
                x = SprExpr::star(x);
            } else if self.eat("^*") {
                x = SprExpr::parstar(x);
            } else {
                return Ok(x);
            }
        }
    }

    fn atom(&mut self) -> Result<SprExpr, ParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'0') => {
                self.pos += 1;
                Ok(SprExpr::Zero)
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(SprExpr::One)
            }
            Some(b'(') => {
                self.pos += 1;
                let x = self.expr()?;
                if !self.eat(")") {
                    return Err(self.error("expected `)`"));
                }
                Ok(x)
            }
            Some(c) => match Letter::new(c as char) {
                Some(a) => {
                    self.pos += 1;
                    Ok(SprExpr::Letter(a))
                }
                None if c.is_ascii_graphic() => Err(self.error(format!("unexpected `{}`", c as char))),
                None => Err(self.error("unknown symbol")),
            },
        }
    }
}

pub fn parse(text: &str) -> Result<SprExpr, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let x = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error("trailing input"));
    }
    Ok(x)
}
