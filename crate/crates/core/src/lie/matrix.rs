//! Square matrices of polynomials and rational Lie algebra elements.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::lie::FlagContext;

/// `n × n` matrix of polynomials over one shared ring, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    /// Build from row-major entries, moving every entry into the merged ring.
    pub fn from_entries(n: usize, entries: Vec<MultiPoly>) -> Self {
        assert_eq!(entries.len(), n * n, "expected {} entries", n * n);
        let mut vars: Vec<String> = Vec::new();
        for e in &entries {
            for v in e.vars() {
                if !vars.contains(v) {
                    vars.push(v.clone());
                }
            }
        }
        let entries = entries.into_iter().map(|e| e.with_vars(&vars).expect("superset")).collect();
        PolyMatrix { n, entries }
    }

    pub fn zero(n: usize, vars: &[impl AsRef<str>]) -> Self {
        PolyMatrix {
            n,
            entries: vec![MultiPoly::zero(vars); n * n],
        }
    }

    pub fn identity(n: usize, vars: &[impl AsRef<str>]) -> Self {
        let mut m = Self::zero(n, vars);
        for i in 0..n {
            m.entries[i * n + i] = MultiPoly::one(vars);
        }
        m
    }

    pub fn from_rationals(n: usize, values: &[Rational], vars: &[impl AsRef<str>]) -> Self {
        assert_eq!(values.len(), n * n);
        PolyMatrix {
            n,
            entries: values.iter().map(|c| MultiPoly::constant(vars, c.clone())).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn vars(&self) -> Vec<String> {
        self.entries.first().map(|e| e.vars().to_vec()).unwrap_or_default()
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: MultiPoly) {
        let vars = self.vars();
        let merged = if value.vars() == vars.as_slice() {
            value
        } else {
            let mut all = vars.clone();
            for v in value.vars() {
                if !all.contains(v) {
                    all.push(v.clone());
                }
            }
            if all != vars {
                for e in self.entries.iter_mut() {
                    *e = e.with_vars(&all).expect("superset");
                }
            }
            value.with_vars(&all).expect("superset")
        };
        self.entries[i * self.n + j] = merged;
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = MultiPoly::zero(&self.vars());
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * b);
                }
                out.push(acc);
            }
        }
        Ok(PolyMatrix::from_entries(n, out))
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &PolyMatrix, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Result<PolyMatrix> {
        if self.n != other.n {
            return Err(Error::SizeMismatch(self.n, other.n));
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect();
        Ok(PolyMatrix::from_entries(self.n, entries))
    }

    pub fn scale(&self, s: &MultiPoly) -> PolyMatrix {
        PolyMatrix::from_entries(self.n, self.entries.iter().map(|e| e * s).collect())
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> PolyMatrix {
        PolyMatrix::from_entries(self.n, self.entries.iter().map(f).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e.constant_value().is_some_and(|c| c.is_one())
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn evaluate(&self, values: &BTreeMap<String, Rational>) -> PolyMatrix {
        self.map(|e| e.evaluate(values))
    }

    pub fn substitute(&self, bindings: &BTreeMap<String, MultiPoly>) -> PolyMatrix {
        self.map(|e| e.substitute(bindings))
    }

    /// Entries as rationals, if every entry is constant.
    pub fn to_rationals(&self) -> Option<Vec<Rational>> {
        self.entries.iter().map(MultiPoly::constant_value).collect()
    }

    /// Least `k ≤ n` with `self^k = 0`, or `None`.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut power = self.clone();
        for k in 1..=self.n {
            if power.is_zero() {
                return Some(k);
            }
            power = power.mul(self).expect("same size");
        }
        None
    }

    /// Determinant by cofactor expansion along the first row.
    pub fn det(&self) -> MultiPoly {
        fn minor(m: &[MultiPoly], n: usize, skip_col: usize) -> Vec<MultiPoly> {
            (1..n)
                .flat_map(|i| (0..n).filter(move |&j| j != skip_col).map(move |j| (i, j)))
                .map(|(i, j)| m[i * n + j].clone())
                .collect()
        }
        fn rec(m: &[MultiPoly], n: usize) -> MultiPoly {
            if n == 1 {
                return m[0].clone();
            }
            let mut acc = MultiPoly::zero(m[0].vars());
            for j in 0..n {
                if m[j].is_zero() {
                    continue;
                }
                let term = &m[j] * &rec(&minor(m, n, j), n - 1);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
        rec(&self.entries, self.n)
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A rational `n × n` matrix attached to a flag context.
///
/// Membership in `n`, `p`, `l` or `u` is a checked property, never assumed.
#[derive(Clone, PartialEq, Eq)]
pub struct LieElement {
    ctx: FlagContext,
    entries: Vec<Rational>,
}

impl LieElement {
    pub fn new(ctx: FlagContext, entries: Vec<Rational>) -> Result<Self> {
        let n = ctx.n();
        if entries.len() != n * n {
            return Err(Error::SizeMismatch(n * n, entries.len()));
        }
        Ok(LieElement { ctx, entries })
    }

    pub fn from_rows(ctx: FlagContext, rows: &[Vec<Rational>]) -> Result<Self> {
        let n = ctx.n();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::SizeMismatch(n, rows.len()));
        }
        Self::new(ctx, rows.concat())
    }

    /// Convenience constructor from small integers.
    pub fn from_ints(ctx: FlagContext, rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| Rational::from(v)).collect()).collect();
        Self::from_rows(ctx, &rows)
    }

    pub fn zero(ctx: FlagContext) -> Self {
        let n = ctx.n();
        LieElement {
            ctx,
            entries: vec![Rational::zero(); n * n],
        }
    }

    pub fn identity(ctx: FlagContext) -> Self {
        let mut m = Self::zero(ctx);
        for i in 0..m.n() {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Elementary matrix `E_ij` (0-based indices).
    pub fn unit(ctx: FlagContext, i: usize, j: usize) -> Self {
        let mut m = Self::zero(ctx);
        m.set(i, j, Rational::one());
        m
    }

    pub fn context(&self) -> &FlagContext {
        &self.ctx
    }

    pub fn n(&self) -> usize {
        self.ctx.n()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        let n = self.n();
        self.entries[i * n + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.n()).map(<[Rational]>::to_vec).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn trace(&self) -> Rational {
        (0..self.n()).map(|i| self.get(i, i).clone()).sum()
    }

    fn supported_on(&self, keep: impl Fn(usize, usize) -> bool) -> bool {
        let n = self.n();
        (0..n).all(|i| (0..n).all(|j| keep(i, j) || self.get(i, j).is_zero()))
    }

    /// Strictly lower block-triangular.
    pub fn in_nilradical(&self) -> bool {
        self.supported_on(|i, j| self.ctx.is_below_block(i, j))
    }

    /// Block upper triangular.
    pub fn in_parabolic(&self) -> bool {
        self.supported_on(|i, j| !self.ctx.is_below_block(i, j))
    }

    /// Block diagonal.
    pub fn in_levi(&self) -> bool {
        self.supported_on(|i, j| self.ctx.is_diag_block(i, j))
    }

    /// Strictly upper block-triangular.
    pub fn in_upper_nilradical(&self) -> bool {
        self.supported_on(|i, j| self.ctx.is_above_block(i, j))
    }

    pub fn mul(&self, other: &LieElement) -> LieElement {
        let n = self.n();
        assert_eq!(n, other.n(), "size mismatch");
        let mut out = LieElement::zero(self.ctx.clone());
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &LieElement) -> LieElement {
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        LieElement {
            ctx: self.ctx.clone(),
            entries,
        }
    }

    pub fn sub(&self, other: &LieElement) -> LieElement {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> LieElement {
        LieElement {
            ctx: self.ctx.clone(),
            entries: self.entries.iter().map(|a| a * s).collect(),
        }
    }

    /// Matrix commutator `[A, B] = AB - BA`.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn to_poly(&self, vars: &[impl AsRef<str>]) -> PolyMatrix {
        PolyMatrix::from_rationals(self.n(), &self.entries, vars)
    }

    pub fn from_poly(ctx: FlagContext, m: &PolyMatrix) -> Option<Self> {
        if m.size() != ctx.n() {
            return None;
        }
        Some(LieElement {
            ctx,
            entries: m.to_rationals()?,
        })
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, vars: &[&str]) -> MultiPoly {
        MultiPoly::parse(s, vars).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let vars = ["t", "a"];
        let a = PolyMatrix::from_entries(2, vec![p("t", &vars), p("a", &vars), p("1", &vars), p("t*a", &vars)]);
        assert_eq!(PolyMatrix::identity(2, &vars).mul(&a).unwrap(), a);
    }

    #[test]
    fn two_by_two_product() {
        // [[1,a],[0,1]]·[[1,0],[t,1]] = [[1+at, a],[t,1]]
        let vars = ["a", "t"];
        let r = PolyMatrix::from_entries(2, vec![p("1", &vars), p("a", &vars), p("0", &vars), p("1", &vars)]);
        let e = PolyMatrix::from_entries(2, vec![p("1", &vars), p("0", &vars), p("t", &vars), p("1", &vars)]);
        let expected = PolyMatrix::from_entries(2, vec![p("1 + a*t", &vars), p("a", &vars), p("t", &vars), p("1", &vars)]);
        assert_eq!(r.mul(&e).unwrap(), expected);
    }

    #[test]
    fn size_mismatch() {
        let a = PolyMatrix::identity(2, &["t"]);
        let b = PolyMatrix::identity(3, &["t"]);
        assert_eq!(a.mul(&b), Err(Error::SizeMismatch(2, 3)));
    }

    #[test]
    fn membership_flags() {
        let ctx = FlagContext::borel(3);
        let x = LieElement::from_ints(ctx.clone(), &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]).unwrap();
        assert!(x.in_nilradical());
        assert!(!x.in_parabolic());
        let d = LieElement::from_ints(ctx, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, -3]]).unwrap();
        assert!(d.in_levi() && d.in_parabolic() && !d.in_nilradical());
        assert_eq!(d.trace(), Rational::zero());
    }

    #[test]
    fn determinant_of_triangular() {
        let vars = ["t"];
        let m = PolyMatrix::from_entries(
            3,
            vec![
                p("1", &vars),
                p("t", &vars),
                p("t^2", &vars),
                p("0", &vars),
                p("2", &vars),
                p("t", &vars),
                p("0", &vars),
                p("0", &vars),
                p("1/2", &vars),
            ],
        );
        assert_eq!(m.det(), MultiPoly::one(&vars));
    }
}
