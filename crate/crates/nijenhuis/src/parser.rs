//! Recursive-descent parser for coefficient expressions.
//!
//! Grammar (loosest to tightest binding):
//!
//! ```text
//! expr    := '-' expr | sum
//! sum     := product (('+' | '-') product)*
//! product := factor (('*' factor) | ('/' integer))*
//! factor  := atom ('^' integer)?
//! atom    := integer | ident | '(' expr ')' | 'exp' '(' expr ')'
//! ```
//!
//! Unary minus binds loosest: `-a + b` parses as `-(a + b)` and `-a^2` as
//! `-(a^2)`. Division is only defined by nonzero integer literals, so `1/2`
//! and `x/3` are exact rationals while `x/y` is rejected. `exp` is only
//! available when lowering into a series ring.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::ring::{Elem, Mode, Rat, RingError};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdent { pos: usize, name: String },
    #[error("division by non-constant or zero at position {pos}")]
    BadDivisor { pos: usize },
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Expression AST. Exponents are literal non-negative integers; `Exp` is
/// legal only when the target ring is a truncated series.
#[derive(Debug, Clone, PartialEq)]
pub enum ExprAst {
    Lit(Rat),
    Var(usize),
    Add(Box<ExprAst>, Box<ExprAst>),
    Sub(Box<ExprAst>, Box<ExprAst>),
    Mul(Box<ExprAst>, Box<ExprAst>),
    Neg(Box<ExprAst>),
    Pow(Box<ExprAst>, u32),
    Exp(Box<ExprAst>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            '-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            '*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            '/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            '^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            '(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            ')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = src[start..i].parse().expect("digits");
                toks.push((start, Tok::Int(n)));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < bytes.len()
                    && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((start, Tok::Ident(src[start..i].to_string())));
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: &Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax { pos: self.here(), msg: format!("expected {what}") })
        }
    }

    fn expr(&mut self) -> Result<ExprAst, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            return Ok(ExprAst::Neg(Box::new(self.expr()?)));
        }
        self.sum()
    }

    fn sum(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    lhs = ExprAst::Add(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let rhs = self.product()?;
                    lhs = ExprAst::Sub(Box::new(lhs), Box::new(rhs));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<ExprAst, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    lhs = ExprAst::Mul(Box::new(lhs), Box::new(rhs));
                }
                Some(Tok::Slash) => {
                    self.pos += 1;
                    let pos = self.here();
                    match self.bump() {
                        Some(Tok::Int(q)) if !q.is_zero() => {
                            let inv = Rat::new(BigInt::from(1), q);
                            lhs = ExprAst::Mul(Box::new(lhs), Box::new(ExprAst::Lit(inv)));
                        }
                        _ => return Err(ParseError::BadDivisor { pos }),
                    }
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<ExprAst, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            let pos = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let exp: u32 = n.try_into().map_err(|_| ParseError::Syntax {
                        pos,
                        msg: "exponent out of range".to_string(),
                    })?;
                    return Ok(ExprAst::Pow(Box::new(base), exp));
                }
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "expected non-negative integer exponent".to_string(),
                    })
                }
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<ExprAst, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(ExprAst::Lit(Rat::from_integer(n))),
            Some(Tok::Ident(name)) if name == "exp" => {
                self.expect(&Tok::LParen, "`(` after exp")?;
                let arg = self.expr()?;
                self.expect(&Tok::RParen, "closing `)`")?;
                Ok(ExprAst::Exp(Box::new(arg)))
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(idx) => Ok(ExprAst::Var(idx)),
                None => Err(ParseError::UnknownIdent { pos, name }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(&Tok::RParen, "closing `)`")?;
                Ok(inner)
            }
            _ => Err(ParseError::Syntax { pos, msg: "expected expression".to_string() }),
        }
    }
}

/// Parse to an AST, resolving identifiers against `vars`.
pub fn parse_ast(src: &str, vars: &[String]) -> Result<ExprAst, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks: &toks, pos: 0, end: src.len(), vars };
    let ast = p.expr()?;
    if p.pos != toks.len() {
        return Err(ParseError::Syntax {
            pos: p.here(),
            msg: "unexpected trailing input".to_string(),
        });
    }
    Ok(ast)
}

/// Parse `src` over the named variables and lower into the given ring.
pub fn parse_expression(src: &str, vars: &[String], mode: Mode) -> Result<Elem, ParseError> {
    let ast = parse_ast(src, vars)?;
    lower(&ast, vars.len(), mode)
}

fn lower(ast: &ExprAst, num_vars: usize, mode: Mode) -> Result<Elem, ParseError> {
    Ok(match ast {
        ExprAst::Lit(c) => Elem::constant(num_vars, mode, c.clone()),
        ExprAst::Var(i) => Elem::var(num_vars, mode, *i),
        ExprAst::Add(a, b) => lower(a, num_vars, mode)?.try_add(&lower(b, num_vars, mode)?)?,
        ExprAst::Sub(a, b) => lower(a, num_vars, mode)?.try_sub(&lower(b, num_vars, mode)?)?,
        ExprAst::Mul(a, b) => lower(a, num_vars, mode)?.try_mul(&lower(b, num_vars, mode)?)?,
        ExprAst::Neg(a) => lower(a, num_vars, mode)?.neg(),
        ExprAst::Pow(a, n) => lower(a, num_vars, mode)?.pow(*n),
        ExprAst::Exp(a) => lower(a, num_vars, mode)?.series_exp()?,
    })
}
