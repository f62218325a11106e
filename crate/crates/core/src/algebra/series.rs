//! Truncated power series with exact rational coefficients.
//!
//! A series of order `N` stores the coefficients of degrees `0..N`; every
//! operation truncates to the smaller order of its operands and never reads
//! past it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Default truncation order for identity checks.
pub const DEFAULT_SERIES_ORDER: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Elementary {
    Exp,
    Sin,
    Cos,
    Sinh,
    Cosh,
    Tan,
    Tanh,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    variable: String,
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    pub fn new(variable: &str, mut coeffs: Vec<Rational>, order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        coeffs.resize(order, Rational::zero());
        TruncatedSeries {
            variable: variable.to_string(),
            coeffs,
        }
    }

    pub fn zero(variable: &str, order: usize) -> Self {
        Self::new(variable, Vec::new(), order)
    }

    pub fn constant(variable: &str, c: Rational, order: usize) -> Self {
        Self::new(variable, vec![c], order)
    }

    /// The series of the variable itself.
    pub fn identity(variable: &str, order: usize) -> Self {
        Self::new(variable, vec![Rational::zero(), Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order >= 1 && order <= self.order(), "cannot extend a truncated series");
        Self::new(&self.variable, self.coeffs[..order].to_vec(), order)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.variable, self.coeffs.iter().map(|x| x * c).collect(), self.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let c = (0..n).map(|k| &self.coeffs[k] + &other.coeffs[k]).collect();
        Self::new(&self.variable, c, n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut c = vec![Rational::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                c[i + j] += &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        Self::new(&self.variable, c, n)
    }

    /// Series quotient; the divisor must not vanish at the origin.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let n = self.order().min(other.order());
        let d0 = &other.coeffs[0];
        if d0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut q: Vec<Rational> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for j in 1..=k {
                acc -= &(&other.coeffs[j] * &q[k - j]);
            }
            q.push(&acc / d0);
        }
        Ok(Self::new(&self.variable, q, n))
    }

    /// Term-wise derivative; the result has order one less.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 1 {
            return Self::zero(&self.variable, 1);
        }
        let c = (1..n).map(|k| &self.coeffs[k] * &Rational::from(k as i64)).collect();
        Self::new(&self.variable, c, n - 1)
    }

    /// `outer ∘ inner` to the common order. `inner` must have zero constant term.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        if outer.order() != inner.order() {
            return Err(Error::OrderMismatch(outer.order(), inner.order()));
        }
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let n = outer.order();
        // Horner: (((c_{n-1}) y + c_{n-2}) y + ...) + c_0
        let mut acc = Self::zero(&inner.variable, n);
        for c in outer.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// Taylor series of `kind(scale · var)` at the origin.
    pub fn elementary(kind: Elementary, scale: &Rational, variable: &str, order: usize) -> Self {
        assert!(order >= 1, "series order must be positive");
        let mut base = Vec::with_capacity(order);
        let mut pow = Rational::one();
        for k in 0..order {
            // scale^k / k!
            base.push(&pow * &Rational::inv_factorial(k as u32));
            pow = &pow * scale;
        }
        let pick = |f: &dyn Fn(usize) -> Option<Rational>| -> Self {
            let c = (0..order)
                .map(|k| f(k).map(|s| &s * &base[k]).unwrap_or_else(Rational::zero))
                .collect();
            Self::new(variable, c, order)
        };
        let one = Rational::one;
        match kind {
            Elementary::Exp => pick(&|_| Some(one())),
            Elementary::Sinh => pick(&|k| (k % 2 == 1).then(one)),
            Elementary::Cosh => pick(&|k| (k % 2 == 0).then(one)),
            Elementary::Sin => pick(&|k| match k % 4 {
                1 => Some(one()),
                3 => Some(-one()),
                _ => None,
            }),
            Elementary::Cos => pick(&|k| match k % 4 {
                0 => Some(one()),
                2 => Some(-one()),
                _ => None,
            }),
            Elementary::Tan => {
                let s = Self::elementary(Elementary::Sin, scale, variable, order);
                let c = Self::elementary(Elementary::Cos, scale, variable, order);
                s.div(&c).expect("cos(0) = 1")
            }
            Elementary::Tanh => {
                let s = Self::elementary(Elementary::Sinh, scale, variable, order);
                let c = Self::elementary(Elementary::Cosh, scale, variable, order);
                s.div(&c).expect("cosh(0) = 1")
            }
        }
    }

    /// Evaluate a polynomial (coefficients low to high) at this series.
    pub fn poly_at(&self, poly: &[Rational]) -> Result<Self> {
        let n = self.order();
        let mut acc = Self::zero(&self.variable, n);
        for c in poly.iter().rev() {
            acc = acc.mul(self);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sep = match (first, c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mag = c.abs();
            let mono = match k {
                0 => String::new(),
                1 => self.variable.clone(),
                _ => format!("{}^{}", self.variable, k),
            };
            if mono.is_empty() {
                write!(f, "{sep}{mag}")?;
            } else if mag.is_one() {
                write!(f, "{sep}{mono}")?;
            } else {
                write!(f, "{sep}{mag}*{mono}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({}^{})", self.variable, self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn s(c: Vec<Rational>, n: usize) -> TruncatedSeries {
        TruncatedSeries::new("x", c, n)
    }

    #[test]
    fn tan_to_order_six() {
        // sin/cos long division by hand: x + x^3/3 + 2x^5/15
        let t = TruncatedSeries::elementary(Elementary::Tan, &r!(1), "x", 6);
        assert_eq!(t, s(vec![r!(0), r!(1), r!(0), r!(1, 3), r!(0), r!(2, 15)], 6));
    }

    #[test]
    fn exp_of_zero_scale() {
        let e = TruncatedSeries::elementary(Elementary::Exp, &r!(0), "x", 4);
        assert_eq!(e, TruncatedSeries::constant("x", r!(1), 4));
    }

    #[test]
    fn cos_to_order_three() {
        let c = TruncatedSeries::elementary(Elementary::Cos, &r!(1), "x", 3);
        assert_eq!(c, s(vec![r!(1), r!(0), r!(-1, 2)], 3));
    }

    #[test]
    fn tanh_leading_terms() {
        // tanh x = x - x^3/3 + 2x^5/15
        let t = TruncatedSeries::elementary(Elementary::Tanh, &r!(1), "x", 6);
        assert_eq!(t, s(vec![r!(0), r!(1), r!(0), r!(-1, 3), r!(0), r!(2, 15)], 6));
    }

    #[test]
    fn compose_square_with_tan() {
        // y^2 ∘ (x + x^3/3): x^2 + 2/3 x^4 needs degrees up to 4 (order 5)
        let outer = s(vec![r!(0), r!(0), r!(1)], 5);
        let inner = s(vec![r!(0), r!(1), r!(0), r!(1, 3)], 5);
        let out = TruncatedSeries::compose(&outer, &inner).unwrap();
        assert_eq!(out, s(vec![r!(0), r!(0), r!(1), r!(0), r!(2, 3)], 5));

        // at order 4 the x^4 term is truncated away
        let out4 = TruncatedSeries::compose(&outer.truncate(4), &inner.truncate(4)).unwrap();
        assert_eq!(out4, s(vec![r!(0), r!(0), r!(1)], 4));
    }

    #[test]
    fn compose_identity_and_constant() {
        let inner = TruncatedSeries::elementary(Elementary::Sin, &r!(3), "x", 8);
        let id = TruncatedSeries::identity("y", 8);
        assert_eq!(TruncatedSeries::compose(&id, &inner).unwrap(), inner);
        let one = TruncatedSeries::constant("y", r!(1), 8);
        assert_eq!(
            TruncatedSeries::compose(&one, &TruncatedSeries::identity("x", 8)).unwrap(),
            TruncatedSeries::constant("x", r!(1), 8)
        );
    }

    #[test]
    fn compose_rejects_constant_inner() {
        let outer = TruncatedSeries::identity("y", 4);
        let inner = TruncatedSeries::constant("x", r!(1), 4);
        assert_eq!(TruncatedSeries::compose(&outer, &inner), Err(Error::NonzeroConstantTerm));
        let inner = TruncatedSeries::identity("x", 5);
        assert_eq!(TruncatedSeries::compose(&outer, &inner), Err(Error::OrderMismatch(4, 5)));
    }

    #[test]
    fn tan_cos_is_sin() {
        for n in [4, 8, 16, 24] {
            let t = TruncatedSeries::elementary(Elementary::Tan, &r!(1), "x", n);
            let c = TruncatedSeries::elementary(Elementary::Cos, &r!(1), "x", n);
            let sn = TruncatedSeries::elementary(Elementary::Sin, &r!(1), "x", n);
            assert_eq!(t.mul(&c), sn, "order {n}");
        }
    }

    #[test]
    fn division_by_vanishing_series() {
        let a = TruncatedSeries::identity("x", 4);
        assert_eq!(a.div(&a), Err(Error::DivisionByZero));
    }
}
