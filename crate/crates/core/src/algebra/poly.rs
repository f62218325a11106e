//! Sparse multivariate polynomials over the rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector; zero coefficients are
//! never stored. Each polynomial carries its ordered variable list, and binary
//! operations on polynomials over different lists merge the lists by name
//! (left operand's variables first).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::Rational;
use crate::error::{Error, ParseError, Result};

pub type Exponent = Vec<u32>;

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Clone)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponent, Rational>,
}

impl MultiPoly {
    pub fn zero(vars: &[impl AsRef<str>]) -> Self {
        MultiPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &[impl AsRef<str>], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one(vars: &[impl AsRef<str>]) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The polynomial `name` in the ring over `vars`; `name` is appended to
    /// the variable list if absent.
    pub fn var(vars: &[impl AsRef<str>], name: &str) -> Self {
        let mut p = Self::zero(vars);
        let idx = match p.index_of(name) {
            Some(i) => i,
            None => {
                p.vars.push(name.to_string());
                p.vars.len() - 1
            }
        };
        let mut e = vec![0; p.vars.len()];
        e[idx] = 1;
        p.terms.insert(e, Rational::one());
        p
    }

    pub fn from_terms(vars: &[impl AsRef<str>], terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), p.vars.len(), "exponent length mismatch");
            p.add_term(e, &c);
        }
        p
    }

    fn add_term(&mut self, e: Exponent, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.index_of(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Names of variables that actually occur, in ring order.
    pub fn occurring_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    /// Leading term under graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    /// Re-express over `vars`, which must contain every occurring variable.
    pub fn with_vars(&self, vars: &[impl AsRef<str>]) -> Result<Self> {
        let target: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        if target == self.vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match target.iter().position(|t| t == v) {
                Some(j) => map.push(Some(j)),
                None => {
                    if self.terms.keys().any(|e| e[i] > 0) {
                        return Err(Error::UnknownVariable(v.clone()));
                    }
                    map.push(None);
                }
            }
        }
        let mut out = MultiPoly::zero(&target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] = x;
                }
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    fn merged_vars(&self, other: &MultiPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn aligned(&self, other: &MultiPoly) -> (MultiPoly, MultiPoly) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let vars = self.merged_vars(other);
        (self.with_vars(&vars).expect("superset"), other.with_vars(&vars).expect("superset"))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars);
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = MultiPoly::one(&self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Coefficients `c_0..c_d` with `self = sum c_i * var^i`. Each `c_i`
    /// stays in the same ring but no longer mentions `var`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MultiPoly>> {
        let idx = self.index_of(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        let d = self.degree_in(var) as usize;
        let mut out = vec![MultiPoly::zero(&self.vars); d + 1];
        for (e, c) in &self.terms {
            let k = e[idx] as usize;
            let mut ne = e.clone();
            ne[idx] = 0;
            out[k].terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Drop `var` from the variable list; it must not occur.
    pub fn without_var(&self, var: &str) -> Result<Self> {
        let vars: Vec<&String> = self.vars.iter().filter(|v| *v != var).collect();
        self.with_vars(&vars)
    }

    pub fn derivative(&self, var: &str) -> Self {
        let mut out = MultiPoly::zero(&self.vars);
        let Some(idx) = self.index_of(var) else {
            return out;
        };
        for (e, c) in &self.terms {
            if e[idx] > 0 {
                let mut ne = e.clone();
                ne[idx] -= 1;
                out.add_term(ne, &(c * &Rational::from(e[idx] as i64)));
            }
        }
        out
    }

    /// Substitute polynomials for variables. Unbound variables are left alone.
    /// The result lives over the merged variable list.
    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly>) -> Self {
        let mut vars = self.vars.clone();
        for p in bindings.values() {
            for v in p.vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        let bound: Vec<Option<MultiPoly>> = self
            .vars
            .iter()
            .map(|v| bindings.get(v).map(|p| p.with_vars(&vars).expect("superset")))
            .collect();
        // Powers are cached per variable since exponents repeat across terms.
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); self.vars.len()];
        let mut out = MultiPoly::zero(&vars);
        for (e, c) in &self.terms {
            let mut mono = vec![0u32; vars.len()];
            let mut factor = MultiPoly::constant(&vars, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                match &bound[i] {
                    Some(b) => {
                        let cache = &mut powers[i];
                        if cache.is_empty() {
                            cache.push(MultiPoly::one(&vars));
                        }
                        while cache.len() <= k as usize {
                            let next = cache.last().unwrap() * b;
                            cache.push(next);
                        }
                        factor = &factor * &cache[k as usize];
                    }
                    None => mono[i] = k,
                }
            }
            let mono_poly = MultiPoly::from_terms(&vars, [(mono, Rational::one())]);
            out = &out + &(&factor * &mono_poly);
        }
        out
    }

    /// Substitute rational values for variables.
    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> Self {
        let idx: Vec<Option<&Rational>> = self.vars.iter().map(|v| values.get(v)).collect();
        let mut out = MultiPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut ne = e.clone();
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    if let Some(v) = idx[i] {
                        coeff *= &v.pow(k);
                        ne[i] = 0;
                    }
                }
            }
            out.add_term(ne, &coeff);
        }
        out
    }

    /// Full evaluation; fails with the first unbound occurring variable.
    pub fn eval_rational(&self, values: &BTreeMap<String, Rational>) -> Result<Rational> {
        let p = self.evaluate(values);
        if let Some(v) = p.occurring_vars().into_iter().next() {
            return Err(Error::MissingBinding(v));
        }
        Ok(p.constant_value().expect("constant after full evaluation"))
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_else(Rational::zero)
    }

    /// Scale to make the grlex-leading coefficient one.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Leading terms are taken in grlex order.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        if divisor.is_zero() {
            return None;
        }
        let (mut rem, d) = self.aligned(divisor);
        let (dl, dc) = {
            let (e, c) = d.leading_term().unwrap();
            (e.clone(), c.clone())
        };
        let mut q = MultiPoly::zero(&rem.vars);
        while let Some((e, c)) = rem.leading_term() {
            if !e.iter().zip(&dl).all(|(a, b)| a >= b) {
                return None;
            }
            let qe: Exponent = e.iter().zip(&dl).map(|(a, b)| a - b).collect();
            let t = MultiPoly::from_terms(&rem.vars, [(qe, c / &dc)]);
            rem = &rem - &(&t * &d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Parse `coeff*sym^k*... + ...` over the given variables. Symbols not in
    /// `vars` are rejected.
    pub fn parse(input: &str, vars: &[impl AsRef<str>]) -> Result<Self, ParseError> {
        crate::algebra::parse::parse_poly(input, vars)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (n, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            a.add_term(e, &c);
        }
        a
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let (mut a, b) = self.aligned(rhs);
        for (e, c) in b.terms {
            a.add_term(e, &-c);
        }
        a
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    // monomial product adds exponents
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let (a, b) = self.aligned(rhs);
        let mut out = MultiPoly::zero(&a.vars);
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}

owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn p(s: &str, vars: &[&str]) -> MultiPoly {
        MultiPoly::parse(s, vars).unwrap()
    }

    #[test]
    fn binomial_square() {
        let x = p("x + 1", &["x"]);
        assert_eq!(&x * &x, p("x^2 + 2*x + 1", &["x"]));
        assert_eq!((&x * &x).to_string(), "x^2 + 2*x + 1");
    }

    #[test]
    fn zero_absorbs() {
        let q = p("3*x*y - 2/3*y^4 + 7", &["x", "y"]);
        assert!((&q * &MultiPoly::zero(&["x", "y"])).is_zero());
    }

    #[test]
    fn cleared_factor_product() {
        // ((t+1)^2) * (-t(t+1)u), expanded by hand
        let vars = ["u", "t"];
        let a = p("t^2 + 2*t + 1", &vars);
        let b = p("-u*t^2 - u*t", &vars);
        let expected = p("-u*t^4 - 3*u*t^3 - 3*u*t^2 - u*t", &vars);
        assert_eq!(&a * &b, expected);
    }

    #[test]
    fn coefficients_in_t() {
        let vars = ["u", "a", "t"];
        let q = p("(1)*t - u*t + t^2 - u*a*t^2", &vars);
        let cs = q.coefficients_in("t").unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs[0].is_zero());
        assert_eq!(cs[1], p("1 - u", &vars));
        assert_eq!(cs[2], p("1 - u*a", &vars));

        let five = MultiPoly::constant(&["t"], r!(5));
        assert_eq!(five.coefficients_in("t").unwrap(), vec![five.clone()]);

        let cube = p("t^3", &["t"]);
        let cs = cube.coefficients_in("t").unwrap();
        assert_eq!(cs.len(), 4);
        assert!(cs[..3].iter().all(MultiPoly::is_zero));
        assert_eq!(cs[3], MultiPoly::one(&["t"]));

        assert!(matches!(q.coefficients_in("z"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn substitution() {
        let vars = ["u", "a"];
        let vals: BTreeMap<String, Rational> = [("u".to_string(), r!(1))].into();
        assert!(p("1 - u", &vars).evaluate(&vals).is_zero());
        let vals: BTreeMap<String, Rational> = [("u".to_string(), r!(1)), ("a".to_string(), r!(1))].into();
        assert!(p("u*a - 1", &vars).evaluate(&vals).is_zero());

        let x = p("x^2 + x", &["x"]);
        let b: BTreeMap<String, MultiPoly> = [("x".to_string(), p("y + 1", &["y"]))].into();
        assert_eq!(x.substitute(&b), p("y^2 + 3*y + 2", &["y"]));
    }

    #[test]
    fn equality_aligns_variables() {
        let a = p("x + y", &["x", "y"]);
        let b = p("y + x", &["y", "x"]);
        assert_eq!(a, b);
        assert_eq!(&a - &b, MultiPoly::zero(&["x", "y"]));
    }

    #[test]
    fn derivative_and_degree() {
        let q = p("x^3*y + 2*x - 5", &["x", "y"]);
        assert_eq!(q.derivative("x"), p("3*x^2*y + 2", &["x", "y"]));
        assert_eq!(q.degree_in("x"), 3);
        assert_eq!(q.total_degree(), Some(4));
    }
}
