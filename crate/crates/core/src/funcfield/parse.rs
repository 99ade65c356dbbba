//! Recursive-descent parser for rational expressions in `x` and `y`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | base ('^' '-'? int)?
//! base   := int | 'x' | 'y' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored and integer literals are reduced mod p.

use thiserror::Error;

use super::{ArithError, BiRat, Field, RatFunc};

const MAX_EXPONENT: i64 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("division by zero at position {pos}")]
    DivisionByZero { pos: usize },
    #[error("variable '{var}' is not allowed here (position {pos})")]
    UnexpectedVariable { pos: usize, var: char },
    #[error("exponent out of range at position {pos}")]
    ExponentTooLarge { pos: usize },
}

trait ExprValue: Field {
    fn literal(p: u32, n: i64) -> Self;
    fn var(p: u32, name: char) -> Option<Self>;
}

impl ExprValue for RatFunc {
    fn literal(p: u32, n: i64) -> Self {
        RatFunc::constant(p, n)
    }
    fn var(p: u32, name: char) -> Option<Self> {
        (name == 'x').then(|| RatFunc::x(p))
    }
}

impl ExprValue for BiRat {
    fn literal(p: u32, n: i64) -> Self {
        BiRat::from_ratfunc(RatFunc::constant(p, n))
    }
    fn var(p: u32, name: char) -> Option<Self> {
        match name {
            'x' => Some(BiRat::x(p)),
            'y' => Some(BiRat::y(p)),
            _ => None,
        }
    }
}

pub fn parse_ratfunc(text: &str, p: u32) -> Result<RatFunc, ParseError> {
    Parser::new(text, p).parse_all()
}

pub fn parse_birat(text: &str, p: u32) -> Result<BiRat, ParseError> {
    Parser::new(text, p).parse_all()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    p: u32,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, p: u32) -> Self {
        Self { src: text.as_bytes(), pos: 0, p }
    }

    fn syntax<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_all<V: ExprValue>(mut self) -> Result<V, ParseError> {
        if self.peek().is_none() {
            return self.syntax("empty expression");
        }
        let v = self.expr()?;
        if self.peek().is_some() {
            return self.syntax("unexpected trailing input");
        }
        Ok(v)
    }

    fn expr<V: ExprValue>(&mut self) -> Result<V, ParseError> {
        let mut acc: V = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term<V: ExprValue>(&mut self) -> Result<V, ParseError> {
        let mut acc: V = self.factor()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.factor()?);
            } else if self.peek() == Some(b'/') {
                let pos = self.pos;
                self.pos += 1;
                let rhs: V = self.factor()?;
                acc = acc.div(&rhs).map_err(|_| ParseError::DivisionByZero { pos })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<V: ExprValue>(&mut self) -> Result<V, ParseError> {
        if self.eat(b'-') {
            return Ok(self.factor::<V>()?.neg());
        }
        let base: V = self.base()?;
        if self.peek() == Some(b'^') {
            let pos = self.pos;
            self.pos += 1;
            let negative = self.eat(b'-');
            let e = self.integer()?;
            if e > MAX_EXPONENT {
                return Err(ParseError::ExponentTooLarge { pos });
            }
            let e = if negative { -e } else { e };
            return base.pow(e).map_err(|err| match err {
                ArithError::DivisionByZero => ParseError::DivisionByZero { pos },
                _ => ParseError::Syntax { pos, message: err.to_string() },
            });
        }
        Ok(base)
    }

    fn base<V: ExprValue>(&mut self) -> Result<V, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(b')') {
                    return self.syntax("expected ')'");
                }
                Ok(v)
            }
            Some(c @ (b'x' | b'y')) => {
                let pos = self.pos;
                self.pos += 1;
                V::var(self.p, c as char)
                    .ok_or(ParseError::UnexpectedVariable { pos, var: c as char })
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.literal_mod_p()?;
                Ok(V::literal(self.p, n))
            }
            Some(_) => self.syntax("unexpected character"),
            None => self.syntax("unexpected end of input"),
        }
    }

    /// Digits reduced mod p as they are read, so long literals cannot overflow.
    fn literal_mod_p(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let p = self.p as u64;
        let mut acc = 0u64;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            acc = (acc * 10 + (c - b'0') as u64) % p;
            self.pos += 1;
        }
        if self.pos == start {
            return self.syntax("expected integer");
        }
        Ok(acc as i64)
    }

    fn integer(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut acc = 0i64;
        while let Some(&c) = self.src.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            acc = acc.saturating_mul(10).saturating_add((c - b'0') as i64);
            self.pos += 1;
        }
        if self.pos == start {
            return self.syntax("expected integer exponent");
        }
        Ok(acc)
    }
}
