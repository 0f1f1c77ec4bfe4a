//! Recursive-descent parser for the expression text format.
//!
//! ```text
//! expr    := term (('+' | '*' | '/') term)*      one operator per chain
//! term    := label | '(' expr ')'
//!          | 'du' '(' expr (',' expr)+ (';' arclist?)? ')'
//!          | 'block' '(' label (',' label)* (';' arclist?)? ')'
//! arclist := label '->' label (',' label '->' label)*
//! label   := [A-Za-z0-9_]+
//! ```
//!
//! Mixing operators in one chain (`a + b * c`) is rejected; parenthesize.
//! `#` starts a comment that runs to the end of the line.

use std::collections::BTreeSet;

use super::{CoExpr, Op};
use crate::digraph::Digraph;
use crate::error::ExprError;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Label(String),
    LParen,
    RParen,
    Comma,
    Semi,
    Arrow,
    Plus,
    Star,
    Slash,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Label(l) => format!("label `{l}`"),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Semi => "`;`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Plus => "`+`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::End => "end of input".into(),
    }
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b',' => Tok::Comma,
            b';' => Tok::Semi,
            b'+' => Tok::Plus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i + 1 < bytes.len()
                    && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_')
                {
                    i += 1;
                }
                Tok::Label(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(ExprError::Syntax {
                    pos: i,
                    msg: format!("unexpected character `{ch}`"),
                });
            }
        };
        i += 1;
        toks.push((start, tok));
    }
    toks.push((text.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ExprError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            self.error(format!(
                "expected {}, found {}",
                describe(&want),
                describe(self.peek())
            ))
        }
    }

    fn label(&mut self) -> Result<String, ExprError> {
        match self.peek().clone() {
            Tok::Label(l) => {
                self.bump();
                Ok(l)
            }
            other => self.error(format!("expected a label, found {}", describe(&other))),
        }
    }

    fn expr(&mut self) -> Result<CoExpr, ExprError> {
        let first = self.term()?;
        let op = match self.peek() {
            Tok::Plus => Op::Union,
            Tok::Star => Op::Series,
            Tok::Slash => Op::Order,
            _ => return Ok(first),
        };
        let op_tok = self.peek().clone();
        let mut children = vec![first];
        loop {
            match self.peek() {
                t if *t == op_tok => {
                    self.bump();
                    children.push(self.term()?);
                }
                Tok::Plus | Tok::Star | Tok::Slash => {
                    return self.error("mixed operators in one chain; add parentheses")
                }
                _ => break,
            }
        }
        Ok(CoExpr::Compose { op, children })
    }

    fn term(&mut self) -> Result<CoExpr, ExprError> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Label(l) if l == "du" && *self.peek2() == Tok::LParen => {
                self.bump();
                self.bump();
                let mut children = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    children.push(self.expr()?);
                }
                if children.len() < 2 {
                    return self.error("du needs at least two operands");
                }
                let arcs = self.arc_tail()?;
                self.expect(Tok::RParen)?;
                Ok(CoExpr::Compose {
                    op: Op::DirectedUnion(arcs.into_iter().collect::<BTreeSet<_>>()),
                    children,
                })
            }
            Tok::Label(l) if l == "block" && *self.peek2() == Tok::LParen => {
                self.bump();
                self.bump();
                let mut labels = vec![self.label()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    labels.push(self.label()?);
                }
                let at = self.offset();
                let arcs = self.arc_tail()?;
                self.expect(Tok::RParen)?;
                let g = Digraph::new(labels, arcs.iter()).map_err(|e| ExprError::Syntax {
                    pos: at,
                    msg: format!("invalid block: {e}"),
                })?;
                Ok(CoExpr::Block(g))
            }
            Tok::Label(l) => {
                self.bump();
                Ok(CoExpr::Leaf(l))
            }
            other => self.error(format!("expected an operand, found {}", describe(&other))),
        }
    }

    /// Optional `; u->v, ...` before a closing parenthesis.
    fn arc_tail(&mut self) -> Result<Vec<(String, String)>, ExprError> {
        let mut arcs = Vec::new();
        if *self.peek() != Tok::Semi {
            return Ok(arcs);
        }
        self.bump();
        if *self.peek() == Tok::RParen {
            return Ok(arcs);
        }
        loop {
            let u = self.label()?;
            self.expect(Tok::Arrow)?;
            let v = self.label()?;
            arcs.push((u, v));
            if *self.peek() != Tok::Comma {
                return Ok(arcs);
            }
            self.bump();
        }
    }
}

/// Parses and validates an expression.
pub fn parse_expr(text: &str) -> Result<CoExpr, ExprError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.error(format!("unexpected {}", describe(p.peek())));
    }
    e.validate()?;
    Ok(e)
}
