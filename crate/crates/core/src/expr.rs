//! The ring-expression language used to name rings on the command line.
//!
//! ```text
//! expr := term ( "x" term )*
//! term := "Z" "(" INT ")" | "GF" "(" INT ")"
//!       | "M" "(" INT "," expr ")" | "UT" "(" INT "," expr ")"
//!       | "B" "(" INT ")" | "Prod" "(" expr ("," expr)* ")"
//!       | "(" expr ")"
//! INT  := decimal ≥ 1
//! ```
//!
//! Whitespace is ignored and keywords are case sensitive. Parsing only
//! builds the tree; [`RingExpr::build`] constructs the ring.

use std::fmt;

use thiserror::Error;

use crate::error::Result;
use crate::ring::{boolean_power, Ring};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingExpr {
    Zn(u64),
    Gf(u64),
    Matrix(u64, Box<RingExpr>),
    Triangular(u64, Box<RingExpr>),
    Prod(Vec<RingExpr>),
    /// `Z_2^k`.
    Boolean(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Kw(&'static str),
    Int(u64),
    LParen,
    RParen,
    Comma,
    Times,
    End,
    Bad(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Kw(k) => write!(f, "`{k}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Times => f.write_str("`x`"),
            Tok::End => f.write_str("end of input"),
            Tok::Bad(c) => write!(f, "`{c}`"),
        }
    }
}

// Longest keywords first so that `Prod` is not read as something shorter.
const KEYWORDS: [&str; 6] = ["Prod", "GF", "UT", "Z", "M", "B"];

fn lex(text: &str) -> Vec<(Tok, usize)> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            'x' => Tok::Times,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((s.parse().map_or(Tok::Bad(c), Tok::Int), col));
                continue;
            }
            _ => {
                let rest: String = chars[i..].iter().take(4).collect();
                match KEYWORDS.iter().find(|k| rest.starts_with(*k)) {
                    Some(k) => {
                        i += k.len();
                        out.push((Tok::Kw(k), col));
                        continue;
                    }
                    None => Tok::Bad(c),
                }
            }
        };
        out.push((tok, col));
        i += 1;
    }
    out.push((Tok::End, chars.len() + 1));
    out
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn fail<T>(&self, expected: &[&str]) -> std::result::Result<T, ParseError> {
        let (tok, column) = &self.toks[self.pos];
        Err(ParseError {
            column: *column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: tok.to_string(),
        })
    }

    fn expect(&mut self, want: Tok, name: &str) -> std::result::Result<(), ParseError> {
        if *self.peek() == want {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn int(&mut self) -> std::result::Result<u64, ParseError> {
        match *self.peek() {
            Tok::Int(n) if n >= 1 => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail(&["positive integer"]),
        }
    }

    fn expr(&mut self) -> std::result::Result<RingExpr, ParseError> {
        let mut terms = vec![self.term()?];
        while *self.peek() == Tok::Times {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { RingExpr::Prod(terms) })
    }

    fn term(&mut self) -> std::result::Result<RingExpr, ParseError> {
        const TERM_START: [&str; 7] = ["`Z`", "`GF`", "`M`", "`UT`", "`B`", "`Prod`", "`(`"];
        let tok = self.peek().clone();
        match tok {
            Tok::Kw(k) => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let node = match k {
                    "Z" => RingExpr::Zn(self.int()?),
                    "GF" => RingExpr::Gf(self.int()?),
                    "B" => RingExpr::Boolean(self.int()?),
                    "M" | "UT" => {
                        let n = self.int()?;
                        self.expect(Tok::Comma, "`,`")?;
                        let inner = Box::new(self.expr()?);
                        if k == "M" { RingExpr::Matrix(n, inner) } else { RingExpr::Triangular(n, inner) }
                    }
                    _ => {
                        let mut items = vec![self.expr()?];
                        while *self.peek() == Tok::Comma {
                            self.pos += 1;
                            items.push(self.expr()?);
                        }
                        if *self.peek() != Tok::RParen {
                            return self.fail(&["`,`", "`)`"]);
                        }
                        RingExpr::Prod(items)
                    }
                };
                self.expect(Tok::RParen, "`)`")?;
                Ok(node)
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.fail(&TERM_START),
        }
    }
}

pub fn parse_ring_expr(text: &str) -> std::result::Result<RingExpr, ParseError> {
    let mut p = Parser { toks: lex(text), pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return p.fail(&["`x`", "end of input"]);
    }
    Ok(e)
}

impl fmt::Display for RingExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingExpr::Zn(n) => write!(f, "Z({n})"),
            RingExpr::Gf(q) => write!(f, "GF({q})"),
            RingExpr::Boolean(k) => write!(f, "B({k})"),
            RingExpr::Matrix(n, e) => write!(f, "M({n}, {e})"),
            RingExpr::Triangular(n, e) => write!(f, "UT({n}, {e})"),
            RingExpr::Prod(items) => {
                let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
                write!(f, "Prod({})", parts.join(", "))
            }
        }
    }
}

impl RingExpr {
    /// Constructs the ring; semantic errors (such as `GF(6)`) surface here.
    pub fn build(&self) -> Result<Ring> {
        let ring = match self {
            RingExpr::Zn(n) => Ring::zn(*n)?,
            RingExpr::Gf(q) => Ring::gf(*q)?,
            RingExpr::Boolean(k) => boolean_power(*k as usize)?,
            RingExpr::Matrix(n, e) => Ring::matrix(*n as usize, &e.build()?)?,
            RingExpr::Triangular(n, e) => Ring::triangular(*n as usize, &e.build()?)?,
            RingExpr::Prod(items) => {
                let factors = items.iter().map(RingExpr::build).collect::<Result<Vec<_>>>()?;
                Ring::product(&factors)?
            }
        };
        Ok(ring.relabel(self.to_string()))
    }
}
