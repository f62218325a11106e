//! Recursive-descent parser for polynomial strings.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power ('*' power)*
//! power   := primary ['^' uint]
//! primary := uint ['/' uint] | ident | '(' expr ')'
//! ```

use crate::algebra::{MultiPoly, Rational};
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(input: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..i].iter().collect()));
            }
            a if a.is_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Tok::Ident(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<MultiPoly, String> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.pos += 1;
            }
            Some(Tok::Plus) => self.pos += 1,
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -&first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, String> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly, String> {
        let base = self.primary()?;
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(n)) => {
                    let k: u32 = n.parse().map_err(|_| format!("exponent `{n}` too large"))?;
                    return Ok(base.pow(k));
                }
                _ => return Err("expected exponent after `^`".into()),
            }
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<MultiPoly, String> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let mut text = n;
                if self.peek() == Some(&Tok::Slash) {
                    self.pos += 1;
                    match self.next() {
                        Some(Tok::Num(d)) => {
                            text.push('/');
                            text.push_str(&d);
                        }
                        _ => return Err("expected denominator after `/`".into()),
                    }
                }
                let r: Rational = text.parse().map_err(|e| format!("{e}"))?;
                Ok(MultiPoly::constant(self.vars, r))
            }
            Some(Tok::Ident(name)) => {
                if !self.vars.contains(&name) {
                    return Err(format!("unknown symbol `{name}`"));
                }
                Ok(MultiPoly::var(self.vars, &name))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err("unbalanced parenthesis".into()),
                }
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

pub(crate) fn parse_poly(input: &str, vars: &[impl AsRef<str>]) -> Result<MultiPoly, ParseError> {
    let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
    let err = |reason: String| ParseError::Poly {
        input: input.to_string(),
        reason,
    };
    let toks = lex(input).map_err(err)?;
    if toks.is_empty() {
        return Err(err("empty input".into()));
    }
    let mut p = Parser { toks, pos: 0, vars: &vars };
    let out = p.expr().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_symbols_and_garbage() {
        assert!(parse_poly("x + z", &["x"]).is_err());
        assert!(parse_poly("x +", &["x"]).is_err());
        assert!(parse_poly("(x", &["x"]).is_err());
        assert!(parse_poly("x $ 1", &["x"]).is_err());
        assert!(parse_poly("1/0", &["x"]).is_err());
    }

    #[test]
    fn display_is_reparseable() {
        let vars = ["y21", "r12"];
        let p = parse_poly("-3/8*y21^2*r12 + (y21 - 1)*(r12 + 2) - 7", &vars).unwrap();
        let again = parse_poly(&p.to_string(), &vars).unwrap();
        assert_eq!(p, again);
    }
}
