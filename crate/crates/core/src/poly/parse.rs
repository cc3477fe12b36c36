use super::monomial::Monomial;
use super::polynomial::{Polynomial, Rational};
use crate::error::ParseError;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt::Write;

/// Default variable names `x1, ..., xn`.
pub fn default_var_names(nvars: usize) -> Vec<String> {
    (1..=nvars).map(|i| format!("x{i}")).collect()
}

/// Parses a polynomial over the given variable names.
///
/// Grammar: sums and differences of products and quotients of powers, where a
/// power is an integer, a variable or a parenthesised expression optionally
/// raised to a nonnegative integer with `^`. Division is only allowed by a
/// nonzero constant, so `3/5*s` and `-s/5` are accepted.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        vars,
    };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error(&format!("unexpected character '{}'", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> ParseError {
        ParseError::new(1, self.pos + 1, msg)
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

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.product()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = &acc + &self.product()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = &acc - &self.product()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    match d.constant_value() {
                        Some(v) if !v.is_zero() => acc = acc.scale(&v.recip()),
                        Some(_) => return Err(ParseError::new(1, at + 1, "division by zero")),
                        None => {
                            return Err(ParseError::new(
                                1,
                                at + 1,
                                "division is only allowed by a nonzero constant",
                            ))
                        }
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a nonnegative integer exponent"));
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let e: u32 = digits
                .parse()
                .map_err(|_| ParseError::new(1, start + 1, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.vars.len();
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let v: BigInt = digits.parse().unwrap();
                Ok(Polynomial::constant(n, Rational::from_integer(v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.vars.iter().position(|v| v == name) {
                    Some(i) => Ok(Polynomial::var(n, i)),
                    None => Err(ParseError::new(
                        1,
                        start + 1,
                        format!("unknown variable '{name}'"),
                    )),
                }
            }
            Some(c) => Err(self.error(&format!("unexpected character '{}'", c as char))),
        }
    }
}

fn write_monomial(out: &mut String, m: &Monomial, vars: &[String]) {
    let mut first = true;
    for (v, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(&vars[v]);
        if e > 1 {
            let _ = write!(out, "^{e}");
        }
    }
}

/// Formats in the grammar accepted by [`parse_polynomial`], terms in decreasing grevlex order.
pub fn format_polynomial(p: &Polynomial, vars: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let negative = c.is_negative();
        let a = c.abs();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&a.to_string());
        } else {
            if !a.is_one() {
                let _ = write!(out, "{a}*");
            }
            write_monomial(&mut out, m, vars);
        }
    }
    out
}

impl Polynomial {
    pub fn parse(text: &str, vars: &[String]) -> Result<Polynomial, ParseError> {
        parse_polynomial(text, vars)
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        format_polynomial(self, vars)
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_polynomial(self, &default_var_names(self.nvars())))
    }
}
