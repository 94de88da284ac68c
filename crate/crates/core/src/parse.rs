//! Tiny expression parser for Laurent polynomials in `x`, `y`, `z`.
//!
//! Grammar: `+ - * / ^` with parentheses and integer literals; juxtaposition
//! is not multiplication, `*` is required. Division must be exact in the
//! Laurent ring (it always is for the catalog expressions, whose denominators
//! are monomials).

use crate::laurent::LaurentPolynomial;
use crate::{rat, Error, Rat, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(i64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Token)>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push((i, Token::Plus));
                i += 1;
            }
            '-' => {
                out.push((i, Token::Minus));
                i += 1;
            }
            '*' => {
                out.push((i, Token::Star));
                i += 1;
            }
            '/' => {
                out.push((i, Token::Slash));
                i += 1;
            }
            '^' => {
                out.push((i, Token::Caret));
                i += 1;
            }
            '(' => {
                out.push((i, Token::LParen));
                i += 1;
            }
            ')' => {
                out.push((i, Token::RParen));
                i += 1;
            }
            'x' => {
                out.push((i, Token::Var(0)));
                i += 1;
            }
            'y' => {
                out.push((i, Token::Var(1)));
                i += 1;
            }
            'z' => {
                out.push((i, Token::Var(2)));
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: i64 = src[start..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "integer literal out of range".into(),
                })?;
                out.push((start, Token::Num(n)));
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {c:?}"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    rank: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn src_pos(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or_else(|| self.tokens.last().map(|(p, _)| p + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPolynomial> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Star) => {
                    self.bump();
                    acc = acc.multiply(&self.factor()?)?;
                }
                Some(Token::Slash) => {
                    self.bump();
                    acc = acc.divide_exact(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<LaurentPolynomial> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.bump();
            let neg = if self.peek() == Some(&Token::Minus) {
                self.bump();
                true
            } else {
                false
            };
            let pos = self.src_pos();
            let Some(Token::Num(n)) = self.bump() else {
                return Err(Error::Parse {
                    pos,
                    msg: "expected integer exponent after ^".into(),
                });
            };
            let powed = base.pow(n as usize);
            if neg {
                return LaurentPolynomial::one(self.rank).divide_exact(&powed);
            }
            return Ok(powed);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<LaurentPolynomial> {
        let pos = self.src_pos();
        match self.bump() {
            Some(Token::Num(n)) => Ok(LaurentPolynomial::constant(self.rank, rat(n))),
            Some(Token::Var(i)) => {
                if i >= self.rank {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("variable index {i} exceeds rank {}", self.rank),
                    });
                }
                let mut exp = vec![0i64; self.rank];
                exp[i] = 1;
                Ok(LaurentPolynomial::monomial(exp, Rat::from_integer(1.into())))
            }
            Some(Token::Minus) => {
                let inner = self.factor()?;
                Ok(inner.scale(&-rat(1)))
            }
            Some(Token::LParen) => {
                let inner = self.expr()?;
                let pos = self.src_pos();
                if self.bump() != Some(Token::RParen) {
                    return Err(Error::Parse {
                        pos,
                        msg: "expected closing parenthesis".into(),
                    });
                }
                Ok(inner)
            }
            other => Err(Error::Parse {
                pos,
                msg: format!("unexpected token {other:?}"),
            }),
        }
    }
}

/// Parse `src` as a Laurent polynomial in a lattice of the given rank.
pub fn parse_laurent(src: &str, rank: usize) -> Result<LaurentPolynomial> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        rank,
    };
    let out = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::Parse {
            pos: p.src_pos(),
            msg: "trailing input".into(),
        });
    }
    Ok(out)
}
