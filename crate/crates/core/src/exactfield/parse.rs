//! Canonical text form: printing helpers and an expression parser.

use num_bigint::BigInt;

use super::{Field, FieldError, Rational};

/// Joins `(coefficient, monomial)` strings into a signed sum.
pub(crate) fn join_terms(terms: impl Iterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (c, m) in terms {
        let compound = c.contains(' ');
        let t = if m.is_empty() {
            if compound {
                format!("({c})")
            } else {
                c
            }
        } else if c == "1" {
            m
        } else if c == "-1" {
            format!("-{m}")
        } else if compound {
            format!("({c})*{m}")
        } else {
            format!("{c}*{m}")
        };
        if out.is_empty() {
            out = t;
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

/// Values an arithmetic expression can be evaluated into.
pub trait ExprRing: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div(&self, o: &Self) -> Result<Self, FieldError>;
}

impl<F: Field> ExprRing for F {
    fn add(&self, o: &Self) -> Self {
        self.clone() + o.clone()
    }
    fn sub(&self, o: &Self) -> Self {
        self.clone() - o.clone()
    }
    fn mul(&self, o: &Self) -> Self {
        self.clone() * o.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn div(&self, o: &Self) -> Result<Self, FieldError> {
        self.checked_div(o)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, FieldError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = cs[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| FieldError::Parse(t.clone()))?));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FieldError::Parse(format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a, T> {
    toks: Vec<Tok>,
    pos: usize,
    number: &'a dyn Fn(&Rational) -> Result<T, FieldError>,
    symbol: &'a dyn Fn(&str) -> Option<T>,
}

impl<T: ExprRing> Parser<'_, T> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<T, FieldError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<T, FieldError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                acc = acc.div(&self.unary()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<T, FieldError> {
        if self.eat('-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<T, FieldError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let n = match self.toks.get(self.pos) {
            Some(Tok::Num(n)) => u32::try_from(n).map_err(|_| FieldError::Parse("exponent".into()))?,
            _ => return Err(FieldError::Parse("expected exponent".into())),
        };
        self.pos += 1;
        let mut acc = (self.number)(&Rational::from_integer(1.into()))?;
        for _ in 0..n {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<T, FieldError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                (self.number)(&Rational::from_integer(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                (self.symbol)(&s).ok_or_else(|| FieldError::Parse(format!("unknown symbol {s}")))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(FieldError::Parse("missing )".into()));
                }
                Ok(v)
            }
            t => Err(FieldError::Parse(format!("unexpected token {t:?}"))),
        }
    }
}

pub(crate) fn parse_with<T: ExprRing>(
    s: &str,
    number: &dyn Fn(&Rational) -> Result<T, FieldError>,
    symbol: &dyn Fn(&str) -> Option<T>,
) -> Result<T, FieldError> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0, number, symbol };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(FieldError::Parse(format!("trailing input in {s:?}")));
    }
    Ok(v)
}

/// Parses a field element; `symbols` maps names such as `e` or `a` to values.
pub fn parse_element<F: Field>(s: &str, ctx: &F::Ctx, symbols: &[(&str, F)]) -> Result<F, FieldError> {
    parse_with(
        s,
        &|q| F::from_rational(ctx, q),
        &|name| symbols.iter().find(|(n, _)| *n == name).map(|(_, v)| v.clone()),
    )
}
