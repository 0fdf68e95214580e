//! Element grammar shared by every field.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/')? unary)*      juxtaposition multiplies: 6x^2, u t
//! unary    := '-' unary | power
//! power    := atom ('^' exponent)?
//! exponent := int | '-' int | '{' '-'? int ('/' int)? '}'
//! atom     := int | ident | '(' expr ')'
//! ```
//!
//! Identifiers are resolved by the field (`t`, `t1`, `t2`, `u`, `w`, `x`).
//! Fractional exponents are only meaningful on bare identifiers, e.g.
//! `t^{1/2}` in the Hahn-type field.

use num_bigint::BigInt;
use num_traits::One;

use super::Field;
use crate::error::{Error, Result};
use crate::ordgroup::Q;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Int(text.parse().unwrap()));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^(){}".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    k: &'a F,
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<'a, F: Field> Parser<'a, F> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} in {:?}", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<F::Elem> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.k.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.k.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<F::Elem> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let f = self.unary()?;
                acc = self.k.mul(&acc, &f);
            } else if self.eat('/') {
                let f = self.unary()?;
                acc = self.k.div(&acc, &f).ok_or(Error::ZeroDenominator)?;
            } else if self.starts_atom() {
                let f = self.power()?;
                acc = self.k.mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<F::Elem> {
        if self.eat('-') {
            let v = self.unary()?;
            return Ok(self.k.neg(&v));
        }
        self.power()
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err("expected an integer")),
        }
    }

    fn exponent(&mut self) -> Result<Q> {
        let close = if self.eat('{') {
            Some('}')
        } else if self.eat('(') {
            Some(')')
        } else {
            None
        };
        let neg = self.eat('-');
        let n = self.int()?;
        let mut e = Q::from_integer(if neg { -n } else { n });
        if let Some(c) = close {
            if self.eat('/') {
                let d = self.int()?;
                if d == BigInt::from(0) {
                    return Err(Error::ZeroDenominator);
                }
                e /= Q::from_integer(d);
            }
            if !self.eat(c) {
                return Err(self.err("unclosed exponent"));
            }
        }
        Ok(e)
    }

    fn power(&mut self) -> Result<F::Elem> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let e = if self.eat('^') { self.exponent()? } else { Q::one() };
                self.k
                    .symbol_pow(&name, &e)
                    .ok_or_else(|| self.err(&format!("cannot interpret {name}^{e}")))
            }
            _ => {
                let base = self.atom()?;
                if !self.eat('^') {
                    return Ok(base);
                }
                let e = self.exponent()?;
                if !e.is_integer() {
                    return Err(self.err("fractional exponents apply only to generators"));
                }
                let e: i64 = e
                    .to_integer()
                    .try_into()
                    .map_err(|_| self.err("exponent too large"))?;
                self.k.powi(&base, e).ok_or(Error::ZeroDenominator)
            }
        }
    }

    fn atom(&mut self) -> Result<F::Elem> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(self.k.from_int(&n))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("unbalanced parenthesis"));
                }
                Ok(v)
            }
            _ => Err(self.err("expected a number, generator or '('")),
        }
    }
}

pub fn parse_element<F: Field>(k: &F, s: &str) -> Result<F::Elem> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { k, toks, pos: 0, src: s };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// True when a printed element needs parentheses to be used as a factor.
pub fn is_compound(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    let mut depth = 0i32;
    for c in body.chars() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            '+' | '-' | '/' if depth == 0 => return true,
            ' ' if depth == 0 => return true,
            _ => {}
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{FiniteField, FunctionField};

    #[test]
    fn precedence_and_juxtaposition() {
        let f = FunctionField::new(FiniteField::new(5, 1).unwrap(), "x");
        let a = f.parse("6x^2 + 2*x - 1").unwrap();
        let b = f.parse("x^2 + 2x + 4").unwrap();
        assert_eq!(a, b);
        let c = f.parse("(x^2 - 1)/(x - 1)").unwrap();
        assert_eq!(c, f.parse("x + 1").unwrap());
        assert_eq!(f.parse("x^-2").unwrap(), f.parse("1/x^2").unwrap());
        assert_eq!(f.parse("-x^{2}").unwrap(), f.parse("0 - x*x").unwrap());
    }

    #[test]
    fn errors() {
        let f = FunctionField::new(FiniteField::new(5, 1).unwrap(), "x");
        assert!(matches!(f.parse("1/(x - x)"), Err(Error::ZeroDenominator)));
        assert!(matches!(f.parse("y + 1"), Err(Error::Parse(_))));
        assert!(matches!(f.parse("x^{1/2}"), Err(Error::Parse(_))));
        assert!(matches!(f.parse("(x + 1"), Err(Error::Parse(_))));
        assert!(matches!(f.parse(""), Err(Error::Parse(_))));
    }

    #[test]
    fn compound_detection() {
        assert!(!is_compound("u"));
        assert!(!is_compound("-3"));
        assert!(is_compound("u + 1"));
        assert!(is_compound("1/t"));
        assert!(!is_compound("t^{1/2}"));
    }
}
