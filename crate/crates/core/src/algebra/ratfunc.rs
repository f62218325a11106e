//! Quotients of multivariate polynomials.
//!
//! Univariate quotients are reduced by a full Euclidean gcd. Multivariate
//! ones get content normalisation, removal of a common monomial factor, and
//! exact cancellation when the denominator divides the numerator.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::series::TruncatedSeries;
use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

/// Dense univariate coefficients, low degree first, no trailing zeros.
type Dense = Vec<Rational>;

fn dense_of(p: &MultiPoly, var: &str) -> Dense {
    let mut out: Dense = Vec::new();
    let idx = p.index_of(var);
    for (e, c) in p.terms() {
        let k = idx.map(|i| e[i] as usize).unwrap_or(0);
        if out.len() <= k {
            out.resize(k + 1, Rational::zero());
        }
        out[k] += c;
    }
    trim(&mut out);
    out
}

fn trim(p: &mut Dense) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

fn poly_of(d: &Dense, var: &str, vars: &[String]) -> MultiPoly {
    let idx = vars.iter().position(|v| v == var).expect("var in ring");
    MultiPoly::from_terms(
        vars,
        d.iter().enumerate().map(|(k, c)| {
            let mut e = vec![0; vars.len()];
            e[idx] = k as u32;
            (e, c.clone())
        }),
    )
}

fn dense_rem(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor");
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &(c * &f);
        }
        r.pop();
        trim(&mut r);
    }
    r
}

fn dense_div(a: &Dense, b: &Dense) -> Dense {
    let mut r = a.clone();
    let lb = b.last().expect("nonzero divisor").clone();
    if r.len() < b.len() {
        return Vec::new();
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] -= &(c * &f);
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    q
}

fn dense_gcd(a: &Dense, b: &Dense) -> Dense {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        for c in x.iter_mut() {
            *c = &*c / &l;
        }
    }
    x
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let vars = {
            let mut v = num.vars().to_vec();
            for d in den.vars() {
                if !v.contains(d) {
                    v.push(d.clone());
                }
            }
            v
        };
        let num = num.with_vars(&vars)?;
        let den = den.with_vars(&vars)?;
        Ok(RationalFunction { num, den }.reduced())
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.vars());
        RationalFunction { num: p, den }
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduced(self) -> Self {
        let RationalFunction { mut num, mut den } = self;
        if num.is_zero() {
            return RationalFunction {
                den: MultiPoly::one(num.vars()),
                num,
            };
        }
        let mut occurring = num.occurring_vars();
        for v in den.occurring_vars() {
            if !occurring.contains(&v) {
                occurring.push(v);
            }
        }
        if occurring.len() == 1 {
            let var = &occurring[0];
            let vars = num.vars().to_vec();
            let (a, b) = (dense_of(&num, var), dense_of(&den, var));
            let g = dense_gcd(&a, &b);
            if g.len() > 1 {
                num = poly_of(&dense_div(&a, &g), var, &vars);
                den = poly_of(&dense_div(&b, &g), var, &vars);
            }
        } else if occurring.len() > 1 {
            // common monomial factor
            let n = num.vars().len();
            let mut m = vec![u32::MAX; n];
            for (e, _) in num.terms().chain(den.terms()) {
                for i in 0..n {
                    m[i] = m[i].min(e[i]);
                }
            }
            if m.iter().any(|&k| k > 0 && k != u32::MAX) {
                let mono = MultiPoly::from_terms(num.vars(), [(m, Rational::one())]);
                num = num.div_exact(&mono).expect("monomial divides");
                den = den.div_exact(&mono).expect("monomial divides");
            }
            if !den.is_constant() {
                if let Some(q) = num.div_exact(&den) {
                    num = q;
                    den = MultiPoly::one(num.vars());
                }
            }
        }
        let lead = den.leading_term().map(|(_, c)| c.clone()).expect("nonzero");
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        let den = &self.den * &other.den;
        RationalFunction::new(num, den).expect("nonzero product")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFunction::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero product")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn pow(&self, k: u32) -> Self {
        RationalFunction::new(self.num.pow(k), self.den.pow(k)).expect("nonzero")
    }

    /// Quotient rule.
    pub fn derivative(&self, var: &str) -> Self {
        let num = &(&self.num.derivative(var) * &self.den) - &(&self.num * &self.den.derivative(var));
        RationalFunction::new(num, self.den.pow(2)).expect("nonzero square")
    }

    /// Substitute rational values; errors if the denominator vanishes.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Result<Self> {
        RationalFunction::new(self.num.evaluate(values), self.den.evaluate(values))
    }

    /// Taylor expansion at 0 in `var`. All other variables must be absent
    /// and the denominator must not vanish at 0.
    pub fn series(&self, var: &str, order: usize) -> Result<TruncatedSeries> {
        for v in self.num.occurring_vars().iter().chain(&self.den.occurring_vars()) {
            if v != var {
                return Err(Error::UnknownVariable(v.clone()));
            }
        }
        let n = TruncatedSeries::new(var, dense_trunc(&self.num, var, order), order);
        let d = TruncatedSeries::new(var, dense_trunc(&self.den, var, order), order);
        n.div(&d)
    }
}

fn dense_trunc(p: &MultiPoly, var: &str, order: usize) -> Vec<Rational> {
    let mut d = dense_of(p, var);
    d.truncate(order);
    d
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.constant_value().is_some_and(|c| c.is_one()) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
