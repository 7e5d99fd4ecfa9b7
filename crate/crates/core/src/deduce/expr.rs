//! Linear expressions and constraints over named integer variables.
//!
//! Grammar: `expr := ['-'] term (('+' | '-') term)*`,
//! `term := int | var | int '*' var`, `constraint := expr cmp expr` with
//! `cmp` one of `<=`, `>=`, `=`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinExpr {
    pub terms: BTreeMap<String, BigInt>,
    pub constant: BigInt,
}

impl LinExpr {
    pub fn constant(c: impl Into<BigInt>) -> Self {
        LinExpr {
            terms: BTreeMap::new(),
            constant: c.into(),
        }
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        self.terms.is_empty().then_some(&self.constant)
    }

    pub fn variables(&self) -> impl Iterator<Item = &str> + '_ {
        self.terms.keys().map(String::as_str)
    }

    fn add_term(&mut self, var: Option<&str>, c: BigInt) {
        match var {
            None => self.constant += c,
            Some(v) => {
                let e = self.terms.entry(v.to_string()).or_default();
                *e += c;
                if e.is_zero() {
                    self.terms.remove(v);
                }
            }
        }
    }

    /// `self - other`.
    pub fn minus(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        for (v, c) in &other.terms {
            out.add_term(Some(v), -c);
        }
        out.constant -= &other.constant;
        out
    }
}

impl fmt::Display for LinExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.terms {
            let mag = c.abs();
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            if mag.is_one() {
                write!(f, "{sep}{v}")?;
            } else {
                write!(f, "{sep}{mag}*{v}")?;
            }
            first = false;
        }
        if first {
            write!(f, "{}", self.constant)
        } else if !self.constant.is_zero() {
            let sep = if self.constant.is_negative() { " - " } else { " + " };
            write!(f, "{sep}{}", self.constant.abs())
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Le,
    Ge,
    Eq,
}

/// `expr cmp 0`, kept with its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub text: String,
    pub expr: LinExpr,
    pub cmp: Cmp,
}

impl Constraint {
    pub fn holds(&self, value: &BigInt) -> bool {
        match self.cmp {
            Cmp::Le => !value.is_positive(),
            Cmp::Ge => !value.is_negative(),
            Cmp::Eq => value.is_zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Cmp(Cmp),
}

struct Lexer<'a> {
    item: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl<'a> Lexer<'a> {
    fn new(item: &'a str, text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().collect();
        let mut toks = Vec::new();
        let mut i = 0;
        let err = |column: usize, msg: String| Error::Syntax {
            item: item.to_string(),
            column,
            msg,
        };
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
                toks.push((col, Tok::Int(s.parse().unwrap())));
            } else if c.is_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'') {
                    i += 1;
                }
                toks.push((col, Tok::Ident(chars[start..i].iter().collect())));
            } else {
                let next = chars.get(i + 1).copied();
                let (tok, len) = match (c, next) {
                    ('+', _) => (Tok::Plus, 1),
                    ('-', _) => (Tok::Minus, 1),
                    ('*', _) => (Tok::Star, 1),
                    ('<', Some('=')) => (Tok::Cmp(Cmp::Le), 2),
                    ('>', Some('=')) => (Tok::Cmp(Cmp::Ge), 2),
                    ('=', Some('=')) => (Tok::Cmp(Cmp::Eq), 2),
                    ('=', _) => (Tok::Cmp(Cmp::Eq), 1),
                    _ => return Err(err(col, format!("unexpected character {c:?}"))),
                };
                toks.push((col, tok));
                i += len;
            }
        }
        Ok(Lexer {
            item,
            toks,
            pos: 0,
            end: chars.len() + 1,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(c, _)| *c)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            item: self.item.to_string(),
            column: self.column(),
            msg: msg.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<LinExpr> {
        let mut out = LinExpr::default();
        let mut sign = BigInt::one();
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            sign = -sign;
        }
        loop {
            let (var, c) = self.term()?;
            out.add_term(var.as_deref(), sign * c);
            match self.peek() {
                Some(Tok::Plus) => sign = BigInt::one(),
                Some(Tok::Minus) => sign = -BigInt::one(),
                _ => return Ok(out),
            }
            self.bump();
        }
    }

    fn term(&mut self) -> Result<(Option<String>, BigInt)> {
        match self.bump() {
            Some(Tok::Ident(v)) => {
                if self.peek() == Some(&Tok::Star) {
                    return Err(self.error("non-linear term: a variable can only be multiplied by an integer on its left"));
                }
                Ok((Some(v), BigInt::one()))
            }
            Some(Tok::Int(c)) => match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    match self.bump() {
                        Some(Tok::Ident(v)) => {
                            if self.peek() == Some(&Tok::Star) {
                                return Err(self.error("non-linear term"));
                            }
                            Ok((Some(v), c))
                        }
                        _ => {
                            self.pos -= 1;
                            Err(self.error("expected a variable after '*'"))
                        }
                    }
                }
                Some(Tok::Ident(_)) => Err(self.error("expected '*' between coefficient and variable")),
                Some(Tok::Int(_)) => Err(self.error("expected an operator")),
                _ => Ok((None, c)),
            },
            _ => {
                self.pos -= 1;
                Err(self.error("expected an integer or a variable"))
            }
        }
    }

    fn finish(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.error("unexpected trailing input")),
        }
    }
}

/// Parses an affine expression such as `2*f - g + 3`.
pub fn parse_expr(item: &str, text: &str) -> Result<LinExpr> {
    let mut lx = Lexer::new(item, text)?;
    let e = lx.expr()?;
    lx.finish()?;
    Ok(e)
}

/// Parses `lhs cmp rhs` into `lhs - rhs cmp 0`.
pub fn parse_constraint(item: &str, text: &str) -> Result<Constraint> {
    let mut lx = Lexer::new(item, text)?;
    let lhs = lx.expr()?;
    let cmp = match lx.bump() {
        Some(Tok::Cmp(c)) => c,
        _ => {
            lx.pos -= 1;
            return Err(lx.error("expected one of <=, >=, ="));
        }
    };
    let rhs = lx.expr()?;
    lx.finish()?;
    Ok(Constraint {
        text: text.to_string(),
        expr: lhs.minus(&rhs),
        cmp,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_expressions() {
        let e = parse_expr("x", "2*f - g + 3 - 1").unwrap();
        assert_eq!(e.to_string(), "2*f - g + 2");
        assert_eq!(parse_expr("x", "-f").unwrap().to_string(), "-f");
        assert_eq!(parse_expr("x", "0").unwrap().as_constant(), Some(&BigInt::from(0)));
        assert_eq!(parse_expr("x", "f - f").unwrap().as_constant(), Some(&BigInt::from(0)));
    }

    #[test]
    fn parses_constraints() {
        let c = parse_constraint("c", "g>=4*f-5").unwrap();
        assert_eq!(c.cmp, Cmp::Ge);
        assert_eq!(c.expr.to_string(), "-4*f + g + 5");
        let c = parse_constraint("c", "f = 2").unwrap();
        assert_eq!(c.cmp, Cmp::Eq);
        assert!(c.holds(&BigInt::from(0)));
    }

    fn column_of(r: Result<Constraint>) -> usize {
        match r {
            Err(Error::Syntax { column, .. }) => column,
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(column_of(parse_constraint("c", "g >= 4f")), 7);
        assert_eq!(column_of(parse_constraint("c", "f*g >= 1")), 2);
        assert_eq!(column_of(parse_constraint("c", "f >= ")), 6);
        assert_eq!(column_of(parse_constraint("c", "f 2")), 3);
        assert_eq!(column_of(parse_constraint("c", "f >= 2 >= 1")), 8);
        assert_eq!(column_of(parse_constraint("c", "f > 2")), 3);
        assert!(matches!(parse_expr("x", "2*3"), Err(Error::Syntax { column: 3, .. })));
    }
}
