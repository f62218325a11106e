//! Vector fields `f(x) ∂/∂x` with quasi-polynomial coefficients.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::linalg;
use crate::algebra::Rational;
use crate::error::ParseError;
use crate::lie1d::quasi::Atom;
use crate::lie1d::QuasiPoly;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct VectorField1D {
    pub coeff: QuasiPoly,
}

impl VectorField1D {
    pub fn new(coeff: QuasiPoly) -> Self {
        VectorField1D { coeff }
    }

    /// `∂/∂x`.
    pub fn d() -> Self {
        Self::new(QuasiPoly::one())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeff.scale(c))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(&self.coeff + &other.coeff)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(&self.coeff - &other.coeff)
    }

    pub fn parse(input: &str) -> Result<Self, ParseError> {
        QuasiPoly::parse(input).map(Self::new)
    }
}

impl fmt::Display for VectorField1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.coeff)
    }
}

impl fmt::Debug for VectorField1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) d/dx", self.coeff)
    }
}

/// `[f∂, g∂] = (f g′ − g f′) ∂`.
pub fn bracket(f: &VectorField1D, g: &VectorField1D) -> VectorField1D {
    let (a, b) = (&f.coeff, &g.coeff);
    VectorField1D::new(&(a * &b.derivative()) - &(b * &a.derivative()))
}

fn coordinates(fields: &[&VectorField1D]) -> (Vec<Atom>, Vec<Vec<Rational>>) {
    let atoms: Vec<Atom> = fields
        .iter()
        .flat_map(|f| f.coeff.terms().map(|(a, _)| a.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vecs = fields
        .iter()
        .map(|f| atoms.iter().map(|a| f.coeff.coefficient(a)).collect())
        .collect();
    (atoms, vecs)
}

/// Coefficients `c` with `F = Σ c_i basis_i`, if `F` lies in the span.
pub fn span_membership(f: &VectorField1D, basis: &[VectorField1D]) -> Option<Vec<Rational>> {
    let mut all: Vec<&VectorField1D> = basis.iter().collect();
    all.push(f);
    let (_, mut vecs) = coordinates(&all);
    let target = vecs.pop().expect("target present");
    linalg::solve(&vecs, &target)
}

pub fn span_rank(basis: &[VectorField1D]) -> usize {
    let refs: Vec<&VectorField1D> = basis.iter().collect();
    linalg::rank(&coordinates(&refs).1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub i: usize,
    pub j: usize,
    pub bracket: VectorField1D,
}

/// `Ok` if every `[basis_i, basis_j]` lies in the span, else the first offending bracket.
pub fn check_closure(basis: &[VectorField1D]) -> Result<(), Counterexample> {
    for i in 0..basis.len() {
        for j in 0..i {
            let b = bracket(&basis[i], &basis[j]);
            if span_membership(&b, basis).is_none() {
                return Err(Counterexample { i, j, bracket: b });
            }
        }
    }
    Ok(())
}

/// A named finite-dimensional algebra of vector fields with its expected dimension.
#[derive(Debug, Clone)]
pub struct NamedAlgebra {
    pub name: String,
    pub basis: Vec<VectorField1D>,
    pub dimension: usize,
}

/// The six algebras containing `∂/∂x`, at rate `λ`.
pub fn classical_algebras(lambda: &Rational) -> Vec<NamedAlgebra> {
    let d = VectorField1D::d();
    let f = |q: QuasiPoly| VectorField1D::new(q);
    let l = lambda.clone();
    let mk = |name: String, basis: Vec<VectorField1D>, dimension| NamedAlgebra { name, basis, dimension };
    vec![
        mk("{d}".into(), vec![d.clone()], 1),
        mk(format!("{{d, exp({l}x) d}}"), vec![d.clone(), f(QuasiPoly::exp(l.clone()))], 2),
        mk("{d, x d}".into(), vec![d.clone(), f(QuasiPoly::x_pow(1))], 2),
        mk(
            format!("{{d, sin({l}x) d, cos({l}x) d}}"),
            vec![d.clone(), f(QuasiPoly::sin(l.clone())), f(QuasiPoly::cos(l.clone()))],
            3,
        ),
        mk(
            "{d, x d, x^2 d}".into(),
            vec![d.clone(), f(QuasiPoly::x_pow(1)), f(QuasiPoly::x_pow(2))],
            3,
        ),
        mk(
            format!("{{d, sinh({l}x) d, cosh({l}x) d}}"),
            vec![d, f(QuasiPoly::sinh(l.clone())), f(QuasiPoly::cosh(l))],
            3,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn vf(s: &str) -> VectorField1D {
        VectorField1D::parse(s).unwrap()
    }

    #[test]
    fn brackets() {
        assert_eq!(bracket(&VectorField1D::d(), &vf("sin(2x)")), vf("2*cos(2x)"));
        let f = vf("x^2*exp(x) + sin(x)");
        assert!(bracket(&f, &f).is_zero());
        assert_eq!(bracket(&vf("sin(x)"), &vf("cos(x)")), vf("-1"));
    }

    #[test]
    fn membership() {
        let basis = [VectorField1D::d()];
        assert_eq!(span_membership(&vf("3"), &basis), Some(vec![r!(3)]));
        let poly = [vf("1"), vf("x"), vf("x^2")];
        assert_eq!(span_membership(&vf("x^3"), &poly), None);
        assert_eq!(span_membership(&vf("(1 - 2*x)^2"), &poly), Some(vec![r!(1), r!(-4), r!(4)]));
    }

    #[test]
    fn closure() {
        for lambda in [r!(1), r!(2), r!(1, 2)] {
            for alg in classical_algebras(&lambda) {
                assert_eq!(check_closure(&alg.basis), Ok(()), "{}", alg.name);
                assert_eq!(span_rank(&alg.basis), alg.dimension, "{}", alg.name);
            }
        }
        let err = check_closure(&[VectorField1D::d(), vf("x^2")]).unwrap_err();
        assert_eq!(err.bracket, vf("-2*x"));
    }

    #[test]
    fn closure_of_g_family() {
        // ((g')^2 - g g'') d lies in span{d, g d, g' d} for g = 2(1 - cos x)
        let g = vf("2 - 2*cos(x)").coeff;
        let g1 = g.derivative();
        let g2 = g1.derivative();
        let target = VectorField1D::new(&(&g1 * &g1) - &(&g * &g2));
        let basis = [VectorField1D::d(), VectorField1D::new(g), VectorField1D::new(g1)];
        assert!(span_membership(&target, &basis).is_some());
    }
}
