//! Parser for quasi-polynomial coefficient strings.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := primary ['^' uint]
//! primary := uint ['/' uint] | 'x' | func '(' rate ')' | '(' expr ')'
//! func    := exp | sin | cos | sinh | cosh
//! rate    := ['-'] [uint ['/' uint] ['*']] 'x'
//! ```

use crate::algebra::Rational;
use crate::error::ParseError;
use crate::lie1d::QuasiPoly;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Sym(char),
}

struct Parser<'a> {
    input: &'a str,
    toks: Vec<Tok>,
    pos: usize,
}

fn lex(input: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
            }
            out.push(Tok::Num(s.parse().map_err(|_| format!("number `{s}` too large"))?));
        } else if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric()) {
                s.push(d);
                chars.next();
            }
            out.push(Tok::Ident(s));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Sym(c));
            chars.next();
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(out)
}

impl Parser<'_> {
    fn err(&self, reason: impl Into<String>) -> ParseError {
        ParseError::Field {
            input: self.input.to_string(),
            reason: reason.into(),
        }
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

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn number(&mut self) -> Option<Result<Rational, ParseError>> {
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return None;
        };
        self.pos += 1;
        if self.eat('/') {
            return Some(match self.peek().cloned() {
                Some(Tok::Num(0)) => Err(self.err("zero denominator")),
                Some(Tok::Num(d)) => {
                    self.pos += 1;
                    Ok(Rational::new(n, d))
                }
                _ => Err(self.err("expected denominator")),
            });
        }
        Some(Ok(Rational::from_int(n)))
    }

    fn expr(&mut self) -> Result<QuasiPoly, ParseError> {
        let mut neg = self.eat('-');
        if !neg {
            self.eat('+');
        }
        let mut acc = QuasiPoly::zero();
        loop {
            let t = self.term()?;
            acc = if neg { &acc - &t } else { &acc + &t };
            if self.eat('+') {
                neg = false;
            } else if self.eat('-') {
                neg = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QuasiPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QuasiPoly, ParseError> {
        let base = self.primary()?;
        if self.eat('^') {
            return match self.peek().cloned() {
                Some(Tok::Num(e)) if e <= 64 => {
                    self.pos += 1;
                    Ok(base.pow(e as u32))
                }
                _ => Err(self.err("expected a small exponent after `^`")),
            };
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<QuasiPoly, ParseError> {
        if let Some(n) = self.number() {
            return Ok(QuasiPoly::constant(n?));
        }
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if name == "x" {
                    return Ok(QuasiPoly::x_pow(1));
                }
                self.expect('(')?;
                let r = self.rate()?;
                self.expect(')')?;
                match name.as_str() {
                    "exp" => Ok(QuasiPoly::exp(r)),
                    "sin" => Ok(QuasiPoly::sin(r)),
                    "cos" => Ok(QuasiPoly::cos(r)),
                    "sinh" => Ok(QuasiPoly::sinh(r)),
                    "cosh" => Ok(QuasiPoly::cosh(r)),
                    other => Err(self.err(format!("unknown function `{other}`"))),
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn rate(&mut self) -> Result<Rational, ParseError> {
        let neg = self.eat('-');
        let r = match self.number() {
            Some(n) => {
                let n = n?;
                self.eat('*');
                n
            }
            None => Rational::one(),
        };
        match self.peek() {
            Some(Tok::Ident(x)) if x == "x" => self.pos += 1,
            _ => return Err(self.err("function argument must be `a*x`")),
        }
        Ok(if neg { -r } else { r })
    }
}

pub fn parse_quasi(input: &str) -> Result<QuasiPoly, ParseError> {
    let toks = lex(input).map_err(|reason| ParseError::Field {
        input: input.to_string(),
        reason,
    })?;
    let mut p = Parser { input, toks, pos: 0 };
    if p.toks.is_empty() {
        return Err(p.err("empty input"));
    }
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn q(s: &str) -> QuasiPoly {
        parse_quasi(s).unwrap()
    }

    #[test]
    fn parses_grammar() {
        assert_eq!(q("x^2"), QuasiPoly::x_pow(2));
        assert_eq!(q("3/2*exp(2 x)"), QuasiPoly::exp(r!(2)).scale(&r!(3, 2)));
        assert_eq!(q("sin(1/2*x) - cos(-x)"), &QuasiPoly::sin(r!(1, 2)) - &QuasiPoly::cos(r!(1)));
        assert_eq!(q("cosh(x)"), QuasiPoly::cosh(r!(1)));
        assert_eq!(
            q("(1 - x)^2"),
            &(&QuasiPoly::one() - &QuasiPoly::x_pow(1).scale(&r!(2))) + &QuasiPoly::x_pow(2)
        );
        assert_eq!(q("-sinh(x)"), -&QuasiPoly::sinh(r!(1)));
    }

    #[test]
    fn roundtrip() {
        for s in [
            "1",
            "-x",
            "x^3*exp(-x)*sin(2*x) + 1/3",
            "exp(1/2*x) - 1/2*exp(-1/2*x)",
            "x*cos(x) + x^2*sin(x)",
        ] {
            let p = q(s);
            assert_eq!(q(&p.to_string()), p, "{s}");
        }
    }

    #[test]
    fn errors() {
        for bad in ["", "y", "exp(y)", "sin x", "1/0", "x^", "tan(x)", "(x", "x)"] {
            assert!(parse_quasi(bad).is_err(), "{bad}");
        }
    }
}
