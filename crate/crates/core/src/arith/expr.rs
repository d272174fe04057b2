//! Literal syntax shared by every ring: integers, the ring's named
//! generators, `+ - * / ^` and parentheses, e.g. `x^4+2*x+1` or
//! `(x+1)/(x^2)*t^3`. Literals are evaluated directly in the target ring.

use super::Ring;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(u128),
    Ident(String),
    Sym(char),
}

fn tokenize(input: &str) -> Result<Vec<(Token, usize)>> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut n: u128 = 0;
            while i < chars.len() && chars[i].is_ascii_digit() {
                n = n
                    .checked_mul(10)
                    .and_then(|n| n.checked_add(chars[i].to_digit(10).unwrap() as u128))
                    .ok_or_else(|| Error::parse(col, "integer literal too large"))?;
                i += 1;
            }
            out.push((Token::Num(n), col));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Token::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Token::Sym(c), col));
            i += 1;
        } else {
            return Err(Error::parse(col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a, R: Ring> {
    ring: &'a R,
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_col: usize,
}

impl<R: Ring> Parser<'_, R> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn eat(&mut self, sym: char) -> bool {
        if self.peek() == Some(&Token::Sym(sym)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<R::Elem> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = self.ring.neg(&acc);
        }
        loop {
            if self.eat('+') {
                acc = self.ring.add(&acc, &self.term()?);
            } else if self.eat('-') {
                acc = self.ring.sub(&acc, &self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<R::Elem> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = self.ring.mul(&acc, &self.factor()?);
            } else if self.peek() == Some(&Token::Sym('/')) {
                let col = self.col();
                self.pos += 1;
                let divisor = self.factor()?;
                acc = self
                    .ring
                    .div(&acc, &divisor)
                    .map_err(|_| Error::parse(col, "division by zero or a non-unit"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<R::Elem> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let col = self.col();
        match self.tokens.get(self.pos) {
            Some((Token::Num(n), _)) => {
                let n = u64::try_from(*n).map_err(|_| Error::parse(col, "exponent too large"))?;
                self.pos += 1;
                Ok(self.ring.pow(&base, n))
            }
            _ => Err(Error::parse(col, "expected a nonnegative integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<R::Elem> {
        let col = self.col();
        let Some((tok, _)) = self.tokens.get(self.pos).cloned() else {
            return Err(Error::parse(col, "unexpected end of literal"));
        };
        self.pos += 1;
        match tok {
            Token::Num(n) => {
                let p = self.ring.characteristic() as u128;
                Ok(self.ring.from_int((n % p) as i64))
            }
            Token::Ident(name) => self
                .ring
                .variable(&name)
                .ok_or_else(|| Error::parse(col, format!("unknown variable `{name}`"))),
            Token::Sym('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.col(), "expected `)`"));
                }
                Ok(inner)
            }
            Token::Sym(c) => Err(Error::parse(col, format!("unexpected `{c}`"))),
        }
    }
}

/// Evaluates a literal in `ring`.
pub(crate) fn evaluate<R: Ring>(ring: &R, literal: &str) -> Result<R::Elem> {
    let tokens = tokenize(literal)?;
    if tokens.is_empty() {
        return Err(Error::parse(1, "empty literal"));
    }
    let mut parser = Parser {
        ring,
        tokens,
        pos: 0,
        end_col: literal.chars().count() + 1,
    };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::parse(parser.col(), "trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use crate::arith::{GaloisField, PolyRing, Ring};
    use crate::error::Error;

    #[test]
    fn precedence_and_signs() {
        let r = PolyRing::new(5).unwrap();
        assert_eq!(r.parse("-x+2*x^2").unwrap(), r.parse("2*x^2+4*x").unwrap());
        assert_eq!(r.parse("(x+1)^2").unwrap(), r.parse("x^2+2*x+1").unwrap());
        assert_eq!(r.parse("x^2/x").unwrap(), r.x());
    }

    #[test]
    fn reports_columns() {
        let r = PolyRing::new(3).unwrap();
        match r.parse("x^4+*x").unwrap_err() {
            Error::Parse { column, .. } => assert_eq!(column, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(r.parse("y+1"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse("x/(x+1)"), Err(Error::Parse { .. })));
        assert!(matches!(r.parse(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn extension_generator() {
        let f9 = GaloisField::new(3, 2).unwrap();
        assert_eq!(f9.parse("u*u").unwrap(), f9.from_int(2));
        assert_eq!(f9.parse("1/u").unwrap(), f9.parse("2*u").unwrap());
    }
}
