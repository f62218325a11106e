//! Quasi-polynomials `Σ c · x^k · e^{ax} · trig(bx)` with `trig ∈ {1, cos, sin}`.
//!
//! Canonical form: `b ≥ 0`, `b = 0` only with `trig = 1`, no zero
//! coefficients. `sinh` and `cosh` are rewritten through exponentials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{Elementary, Rational, TruncatedSeries};
use crate::error::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Trig {
    One,
    Cos,
    Sin,
}

/// `x^k e^{ax} trig(bx)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub k: u32,
    pub a: Rational,
    pub b: Rational,
    pub trig: Trig,
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct QuasiPoly {
    terms: BTreeMap<Atom, Rational>,
}

impl QuasiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, Rational::zero(), Rational::zero(), Trig::One)
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// `c · x^k e^{ax} trig(bx)`, normalised.
    pub fn term(c: Rational, k: u32, a: Rational, b: Rational, trig: Trig) -> Self {
        let mut out = Self::zero();
        out.push(c, k, a, b, trig);
        out
    }

    pub fn x_pow(k: u32) -> Self {
        Self::term(Rational::one(), k, Rational::zero(), Rational::zero(), Trig::One)
    }

    pub fn exp(a: Rational) -> Self {
        Self::term(Rational::one(), 0, a, Rational::zero(), Trig::One)
    }

    pub fn cos(b: Rational) -> Self {
        Self::term(Rational::one(), 0, Rational::zero(), b, Trig::Cos)
    }

    pub fn sin(b: Rational) -> Self {
        Self::term(Rational::one(), 0, Rational::zero(), b, Trig::Sin)
    }

    pub fn cosh(b: Rational) -> Self {
        let half = Rational::new(1, 2);
        (&Self::exp(b.clone()) + &Self::exp(-b)).scale(&half)
    }

    pub fn sinh(b: Rational) -> Self {
        let half = Rational::new(1, 2);
        (&Self::exp(b.clone()) - &Self::exp(-b)).scale(&half)
    }

    fn push(&mut self, c: Rational, k: u32, a: Rational, b: Rational, trig: Trig) {
        if c.is_zero() {
            return;
        }
        let (c, b, trig) = match trig {
            Trig::One => (c, Rational::zero(), Trig::One),
            _ if b.is_zero() => match trig {
                Trig::Sin => return,
                _ => (c, b, Trig::One),
            },
            Trig::Cos => (c, b.abs(), Trig::Cos),
            Trig::Sin if b.is_negative() => (-c, -b, Trig::Sin),
            Trig::Sin => (c, b, Trig::Sin),
        };
        let key = Atom { k, a, b, trig };
        let entry = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, atom: &Atom) -> Rational {
        self.terms.get(atom).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QuasiPoly {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (t, c) in &self.terms {
            if t.k > 0 {
                out.push(c * &Rational::from_int(t.k), t.k - 1, t.a.clone(), t.b.clone(), t.trig);
            }
            out.push(c * &t.a, t.k, t.a.clone(), t.b.clone(), t.trig);
            match t.trig {
                Trig::One => {}
                Trig::Cos => out.push(-(c * &t.b), t.k, t.a.clone(), t.b.clone(), Trig::Sin),
                Trig::Sin => out.push(c * &t.b, t.k, t.a.clone(), t.b.clone(), Trig::Cos),
            }
        }
        out
    }

    /// `Σ poly[k] · self^k`.
    pub fn compose_into(&self, poly: &[Rational]) -> Self {
        let mut acc = Self::zero();
        for c in poly.iter().rev() {
            acc = &(&acc * self) + &Self::constant(c.clone());
        }
        acc
    }

    /// Taylor expansion at the origin.
    pub fn series(&self, variable: &str, order: usize) -> TruncatedSeries {
        let mut acc = TruncatedSeries::zero(variable, order);
        for (t, c) in &self.terms {
            let mut coeffs = vec![Rational::zero(); order];
            if (t.k as usize) < order {
                coeffs[t.k as usize] = c.clone();
            }
            let mut s = TruncatedSeries::new(variable, coeffs, order);
            if !t.a.is_zero() {
                s = s.mul(&TruncatedSeries::elementary(Elementary::Exp, &t.a, variable, order));
            }
            match t.trig {
                Trig::One => {}
                Trig::Cos => s = s.mul(&TruncatedSeries::elementary(Elementary::Cos, &t.b, variable, order)),
                Trig::Sin => s = s.mul(&TruncatedSeries::elementary(Elementary::Sin, &t.b, variable, order)),
            }
            acc = acc.add(&s);
        }
        acc
    }

    pub fn parse(input: &str) -> Result<Self, ParseError> {
        super::parse::parse_quasi(input)
    }
}

fn mul_atoms(out: &mut QuasiPoly, c: Rational, s: &Atom, t: &Atom) {
    let k = s.k + t.k;
    let a = &s.a + &t.a;
    let half = &c * &Rational::new(1, 2);
    let (sum, diff) = (&s.b + &t.b, &s.b - &t.b);
    match (s.trig, t.trig) {
        (Trig::One, _) => out.push(c, k, a, t.b.clone(), t.trig),
        (_, Trig::One) => out.push(c, k, a, s.b.clone(), s.trig),
        (Trig::Cos, Trig::Cos) => {
            out.push(half.clone(), k, a.clone(), diff, Trig::Cos);
            out.push(half, k, a, sum, Trig::Cos);
        }
        (Trig::Sin, Trig::Sin) => {
            out.push(half.clone(), k, a.clone(), diff, Trig::Cos);
            out.push(-half, k, a, sum, Trig::Cos);
        }
        (Trig::Sin, Trig::Cos) => {
            out.push(half.clone(), k, a.clone(), sum, Trig::Sin);
            out.push(half, k, a, diff, Trig::Sin);
        }
        (Trig::Cos, Trig::Sin) => {
            out.push(half.clone(), k, a.clone(), sum, Trig::Sin);
            out.push(-half, k, a, diff, Trig::Sin);
        }
    }
}

impl Add<&QuasiPoly> for &QuasiPoly {
    type Output = QuasiPoly;
    fn add(self, rhs: &QuasiPoly) -> QuasiPoly {
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.push(c.clone(), t.k, t.a.clone(), t.b.clone(), t.trig);
        }
        out
    }
}

impl Sub<&QuasiPoly> for &QuasiPoly {
    type Output = QuasiPoly;
    fn sub(self, rhs: &QuasiPoly) -> QuasiPoly {
        self + &(-rhs)
    }
}

impl Neg for &QuasiPoly {
    type Output = QuasiPoly;
    fn neg(self) -> QuasiPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul<&QuasiPoly> for &QuasiPoly {
    type Output = QuasiPoly;
    fn mul(self, rhs: &QuasiPoly) -> QuasiPoly {
        let mut out = QuasiPoly::zero();
        for (s, c) in &self.terms {
            for (t, d) in &rhs.terms {
                mul_atoms(&mut out, c * d, s, t);
            }
        }
        out
    }
}

fn rate(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.is_one() {
        write!(f, "x")
    } else if (-r).is_one() {
        write!(f, "-x")
    } else {
        write!(f, "{r}*x")
    }
}

impl fmt::Display for Atom {
    /// Factors joined by `*`; the empty product prints nothing.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut sep = "";
        match self.k {
            0 => {}
            1 => {
                write!(f, "x")?;
                sep = "*";
            }
            k => {
                write!(f, "x^{k}")?;
                sep = "*";
            }
        }
        if !self.a.is_zero() {
            write!(f, "{sep}exp(")?;
            rate(f, &self.a)?;
            write!(f, ")")?;
            sep = "*";
        }
        let name = match self.trig {
            Trig::One => return Ok(()),
            Trig::Cos => "cos",
            Trig::Sin => "sin",
        };
        write!(f, "{sep}{name}(")?;
        rate(f, &self.b)?;
        write!(f, ")")
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (t, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let atom = t.to_string();
            if atom.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{atom}")?;
            } else {
                write!(f, "{mag}*{atom}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
