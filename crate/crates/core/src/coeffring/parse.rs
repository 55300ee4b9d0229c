//! Expression grammar: `+ - * / ^`, integer literals, identifiers, `exp(...)`, parentheses.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('+' | '-') unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | identifier | 'exp' '(' expr ')' | '(' expr ')'
//! ```

use crate::error::{Error, Result};
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawKind {
    Int(BigInt),
    Ident(String),
    Neg(Box<RawExpr>),
    Add(Box<RawExpr>, Box<RawExpr>),
    Sub(Box<RawExpr>, Box<RawExpr>),
    Mul(Box<RawExpr>, Box<RawExpr>),
    Div(Box<RawExpr>, Box<RawExpr>),
    Pow(Box<RawExpr>, i64),
    Exp(Box<RawExpr>),
}

/// Unnormalized syntax tree; `column` is 1-based within the source string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawExpr {
    pub kind: RawKind,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), col));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(Error::Parse {
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            column: self.col(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RawExpr> {
        let mut lhs = self.term()?;
        loop {
            let column = self.col();
            if self.eat('+') {
                let rhs = self.term()?;
                lhs = RawExpr { kind: RawKind::Add(Box::new(lhs), Box::new(rhs)), column };
            } else if self.eat('-') {
                let rhs = self.term()?;
                lhs = RawExpr { kind: RawKind::Sub(Box::new(lhs), Box::new(rhs)), column };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<RawExpr> {
        let mut lhs = self.unary()?;
        loop {
            let column = self.col();
            if self.eat('*') {
                let rhs = self.unary()?;
                lhs = RawExpr { kind: RawKind::Mul(Box::new(lhs), Box::new(rhs)), column };
            } else if self.eat('/') {
                let rhs = self.unary()?;
                lhs = RawExpr { kind: RawKind::Div(Box::new(lhs), Box::new(rhs)), column };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<RawExpr> {
        let column = self.col();
        if self.eat('-') {
            let inner = self.unary()?;
            return Ok(RawExpr { kind: RawKind::Neg(Box::new(inner)), column });
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RawExpr> {
        let base = self.atom()?;
        let column = self.col();
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let e: i64 = match i64::try_from(&n) {
                    Ok(e) if e <= 255 => e,
                    _ => return self.err("exponent too large"),
                };
                let e = if negative { -e } else { e };
                Ok(RawExpr { kind: RawKind::Pow(Box::new(base), e), column })
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> Result<RawExpr> {
        let column = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RawExpr { kind: RawKind::Int(n), column })
            }
            Some(Tok::Ident(name)) if name == "exp" => {
                self.pos += 1;
                if !self.eat('(') {
                    return self.err("expected `(` after exp");
                }
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(RawExpr { kind: RawKind::Exp(Box::new(inner)), column })
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(RawExpr { kind: RawKind::Ident(name), column })
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of expression"),
        }
    }
}

/// Parses without resolving identifiers.
pub fn parse_raw(src: &str) -> Result<RawExpr> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: src.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
