//! Exact checks of the one-dimensional computations: closure of the six
//! algebras, the ODE solutions, the three coordinate changes and the
//! affine/projective flows.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elementary, MultiPoly, Rational, RationalFunction, TruncatedSeries};
use crate::lie::PolyMatrix;
use crate::lie1d::{check_closure, classical_algebras, span_membership, span_rank, QuasiPoly, VectorField1D};
use crate::r;
use crate::report::CheckItem;

/// Rates used throughout.
pub fn sample_lambdas() -> Vec<Rational> {
    vec![r!(1), r!(2), r!(1, 2)]
}

pub fn verify_closures(lambdas: &[Rational]) -> Vec<CheckItem> {
    let mut items = Vec::new();
    for l in lambdas {
        for alg in classical_algebras(l) {
            let closed = check_closure(&alg.basis);
            let rank = span_rank(&alg.basis);
            let detail = match &closed {
                Ok(()) => format!("closed, dim {rank}"),
                Err(c) => format!("[b{}, b{}] = {} not in span", c.i, c.j, c.bracket),
            };
            items.push(CheckItem::new(
                "closure",
                format!("{} at lambda={l}", alg.name),
                closed.is_ok() && rank == alg.dimension,
                detail,
            ));
        }
    }
    let pair = [VectorField1D::d(), VectorField1D::new(QuasiPoly::x_pow(2))];
    let expected = VectorField1D::new(QuasiPoly::x_pow(1).scale(&r!(-2)));
    let (ok, detail) = match check_closure(&pair) {
        Err(c) => (c.bracket == expected, format!("[x^2 d, d] = ({}) d", c.bracket)),
        Ok(()) => (false, "unexpectedly closed".into()),
    };
    items.push(CheckItem::new("closure", "{d, x^2 d} is not closed", ok, detail));
    items
}

/// `2 + ν g − g″`.
fn second_order_residual(g: &QuasiPoly, nu: &Rational) -> QuasiPoly {
    let g2 = g.derivative().derivative();
    &(&QuasiPoly::constant(r!(2)) + &g.scale(nu)) - &g2
}

fn starts_with_square(g: &QuasiPoly) -> (bool, TruncatedSeries) {
    let s = g.series("x", 6);
    let ok = s.coeffs()[..4] == [r!(0), r!(0), r!(1), r!(0)];
    (ok, s)
}

/// The three solutions of `g″ = 2 + νg` with `g = x² + O(x⁴)`.
pub fn second_order_solutions(lambda: &Rational) -> Vec<(String, QuasiPoly, Rational)> {
    let l2 = lambda * lambda;
    let c = r!(2) * l2.recip();
    vec![
        (
            format!("(2/lambda^2)(1 - cos(lambda x)), lambda={lambda}"),
            (&QuasiPoly::one() - &QuasiPoly::cos(lambda.clone())).scale(&c),
            -l2.clone(),
        ),
        ("x^2".into(), QuasiPoly::x_pow(2), r!(0)),
        (
            format!("(2/lambda^2)(cosh(lambda x) - 1), lambda={lambda}"),
            (&QuasiPoly::cosh(lambda.clone()) - &QuasiPoly::one()).scale(&c),
            l2,
        ),
    ]
}

pub fn verify_ode_solutions(lambdas: &[Rational]) -> Vec<CheckItem> {
    let mut items = Vec::new();
    let (cc, dd) = (r!(3), r!(-2));
    for l in lambdas {
        // g = C e^{λx} + D, μ = −λD
        let g = &QuasiPoly::exp(l.clone()).scale(&cc) + &QuasiPoly::constant(dd.clone());
        let mu = -(l * &dd);
        let res = &g.derivative() - &(&QuasiPoly::constant(mu.clone()) + &g.scale(l));
        items.push(CheckItem::new(
            "ode",
            format!("g = {g} solves g' = mu + lambda g, lambda={l}"),
            res.is_zero(),
            format!("mu = {mu}"),
        ));
    }
    let g = &QuasiPoly::x_pow(1).scale(&r!(5, 2)) + &QuasiPoly::constant(r!(7));
    let res = &g.derivative() - &QuasiPoly::constant(r!(5, 2));
    items.push(CheckItem::new(
        "ode",
        format!("g = {g} solves g' = mu, lambda=0"),
        res.is_zero(),
        "mu = 5/2",
    ));

    let mut seen_square = false;
    for l in lambdas {
        for (name, g, nu) in second_order_solutions(l) {
            if g == QuasiPoly::x_pow(2) {
                if seen_square {
                    continue;
                }
                seen_square = true;
            }
            let res = second_order_residual(&g, &nu);
            items.push(CheckItem::new(
                "ode",
                format!("{name} solves g'' = 2 + nu g"),
                res.is_zero(),
                format!("nu = {nu}"),
            ));
            let (ok, s) = starts_with_square(&g);
            items.push(CheckItem::new(
                "ode",
                format!("{name} = x^2 + 0 x^3 + ..."),
                ok,
                s.truncate(6).to_string(),
            ));
            let g1 = g.derivative();
            let target = VectorField1D::new(&(&g1 * &g1) - &(&g * &g1.derivative()));
            let basis = [VectorField1D::d(), VectorField1D::new(g.clone()), VectorField1D::new(g1)];
            let member = span_membership(&target, &basis);
            items.push(CheckItem::new(
                "ode",
                format!("{{d, g d, g' d}} closed for g = {name}"),
                member.is_some() && check_closure(&basis).is_ok(),
                member.map_or("((g')^2 - g g'') d outside the span".into(), |c| {
                    format!("(g')^2 - g g'' = {} + {} g + {} g'", c[0], c[1], c[2])
                }),
            ));
        }
    }
    items
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChangeKind {
    Exp,
    Tan,
    Tanh,
}

/// `y = φ(x)`: `(1 − e^{−λx})/λ`, `tan(λx/2)` or `tanh(λx/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordChange {
    pub kind: ChangeKind,
    pub lambda: Rational,
}

/// `f(x) ∂x = g(y) ∂y`, with `g` a polynomial (low to high).
#[derive(Debug, Clone)]
pub struct ChangeClaim {
    pub source: QuasiPoly,
    pub target: Vec<Rational>,
}

impl CoordChange {
    pub fn new(kind: ChangeKind, lambda: Rational) -> Self {
        assert!(!lambda.is_zero(), "lambda must be nonzero");
        CoordChange { kind, lambda }
    }

    pub fn claims(&self) -> Vec<ChangeClaim> {
        let l = &self.lambda;
        let h = l * &r!(1, 2);
        let claim = |source, target| ChangeClaim { source, target };
        match self.kind {
            ChangeKind::Exp => vec![
                claim(QuasiPoly::exp(l.clone()), vec![r!(1)]),
                claim(QuasiPoly::one(), vec![r!(1), -l.clone()]),
            ],
            ChangeKind::Tan => vec![
                claim(QuasiPoly::one(), vec![h.clone(), r!(0), h.clone()]),
                claim(QuasiPoly::sin(l.clone()), vec![r!(0), l.clone()]),
                claim(QuasiPoly::cos(l.clone()), vec![h.clone(), r!(0), -h]),
            ],
            ChangeKind::Tanh => vec![
                claim(QuasiPoly::one(), vec![h.clone(), r!(0), -h.clone()]),
                claim(QuasiPoly::sinh(l.clone()), vec![r!(0), l.clone()]),
                claim(QuasiPoly::cosh(l.clone()), vec![h.clone(), r!(0), h]),
            ],
        }
    }

    /// `φ` as a quasi-polynomial, when it is one.
    pub fn exact_map(&self) -> Option<QuasiPoly> {
        match self.kind {
            ChangeKind::Exp => {
                let l = &self.lambda;
                Some((&QuasiPoly::one() - &QuasiPoly::exp(-l.clone())).scale(&l.recip()))
            }
            _ => None,
        }
    }

    /// Taylor series of `φ` to `order`.
    pub fn series_map(&self, order: usize) -> TruncatedSeries {
        let h = &self.lambda * &r!(1, 2);
        match self.kind {
            ChangeKind::Exp => self.exact_map().expect("exp change").series("x", order),
            ChangeKind::Tan => TruncatedSeries::elementary(Elementary::Tan, &h, "x", order),
            ChangeKind::Tanh => TruncatedSeries::elementary(Elementary::Tanh, &h, "x", order),
        }
    }

    fn label(&self) -> String {
        let l = if self.lambda.is_integer() {
            self.lambda.to_string()
        } else {
            format!("({})", self.lambda)
        };
        match self.kind {
            ChangeKind::Exp => format!("y = (1 - exp(-{l}x))/{l}"),
            ChangeKind::Tan => format!("y = tan({l}x/2)"),
            ChangeKind::Tanh => format!("y = tanh({l}x/2)"),
        }
    }
}

fn poly_text(g: &[Rational]) -> String {
    let p = MultiPoly::from_terms(&["y"], g.iter().enumerate().map(|(k, c)| (vec![k as u32], c.clone())));
    p.to_string()
}

/// `f·φ′ = g∘φ` exactly, for changes with a quasi-polynomial `φ`.
pub fn check_claim_exact(change: &CoordChange, claim: &ChangeClaim) -> Option<bool> {
    let phi = change.exact_map()?;
    let lhs = &claim.source * &phi.derivative();
    Some(lhs == phi.compose_into(&claim.target))
}

/// `f·φ′ = g∘φ` as truncated series to `order`.
pub fn check_claim_series(change: &CoordChange, claim: &ChangeClaim, order: usize) -> bool {
    let phi = change.series_map(order + 1);
    let lhs = claim.source.series("x", order).mul(&phi.derivative());
    let rhs = phi.truncate(order).poly_at(&claim.target).expect("same order");
    lhs == rhs
}

pub fn verify_coord_change(change: &CoordChange, order: usize) -> Vec<CheckItem> {
    let mut items = Vec::new();
    let phi0 = change.series_map(order).coeff(0).clone();
    items.push(CheckItem::new(
        "coordchange",
        format!("{} fixes 0", change.label()),
        phi0.is_zero(),
        "",
    ));
    for claim in change.claims() {
        let name = format!("{}: ({}) dx = ({}) dy", change.label(), claim.source, poly_text(&claim.target));
        if let Some(ok) = check_claim_exact(change, &claim) {
            items.push(CheckItem::new("coordchange", format!("{name} [exact]"), ok, ""));
        }
        let ok = check_claim_series(change, &claim, order);
        items.push(CheckItem::new(
            "coordchange",
            format!("{name} [series]"),
            ok,
            format!("order {order}"),
        ));
    }
    let zero = ChangeClaim {
        source: QuasiPoly::zero(),
        target: vec![],
    };
    items.push(CheckItem::new(
        "coordchange",
        format!("{}: zero field", change.label()),
        check_claim_series(change, &zero, order),
        "",
    ));
    items
}

pub fn verify_coord_changes(lambdas: &[Rational], order: usize) -> Vec<CheckItem> {
    let mut items = Vec::new();
    for kind in [ChangeKind::Exp, ChangeKind::Tan, ChangeKind::Tanh] {
        for l in lambdas {
            items.extend(verify_coord_change(&CoordChange::new(kind, l.clone()), order));
        }
    }
    items
}

fn rf(s: &str, vars: &[&str]) -> RationalFunction {
    RationalFunction::from_poly(MultiPoly::parse(s, vars).expect("valid literal"))
}

/// `x(t) = p²t/(1+pqt)` satisfies `ẋ = (p − qx)²` and `x(0) = 0`.
fn projective_flow_holds(x: &RationalFunction, p: &RationalFunction, q: &RationalFunction) -> bool {
    let lhs = x.derivative("t");
    let rhs = p.sub(&q.mul(x)).pow(2);
    let at0: BTreeMap<String, Rational> = [("t".to_string(), r!(0))].into();
    lhs == rhs && x.evaluate(&at0).is_ok_and(|v| v.is_zero())
}

pub fn flow_identities() -> Vec<CheckItem> {
    let vars = ["p", "q", "t"];
    let mut items = Vec::new();
    let x = RationalFunction::new(
        MultiPoly::parse("p^2*t", &vars).expect("literal"),
        MultiPoly::parse("1 + p*q*t", &vars).expect("literal"),
    )
    .expect("nonzero denominator");
    let (p, q) = (rf("p", &vars), rf("q", &vars));
    items.push(CheckItem::new(
        "flow",
        "x = p^2 t/(1 + p q t) solves x' = (p - q x)^2, symbolic p, q",
        projective_flow_holds(&x, &p, &q),
        format!("x' = {}", x.derivative("t")),
    ));
    for (pv, qv) in [
        (r!(1), r!(1)),
        (r!(2), r!(0)),
        (r!(0), r!(3)),
        (r!(-1), r!(1, 2)),
        (r!(3, 2), r!(-2)),
    ] {
        let at: BTreeMap<String, Rational> = [("p".to_string(), pv.clone()), ("q".to_string(), qv.clone())].into();
        let xs = x.evaluate(&at).expect("denominator stays nonzero");
        let ps = p.evaluate(&at).expect("constant");
        let qs = q.evaluate(&at).expect("constant");
        items.push(CheckItem::new(
            "flow",
            format!("p={pv}, q={qv}: x = {xs}"),
            projective_flow_holds(&xs, &ps, &qs),
            format!("x' = {}", xs.derivative("t")),
        ));
    }
    let avars = ["a", "t"];
    let xa = rf("a*t", &avars);
    let ok = xa.derivative("t") == rf("a", &avars);
    items.push(CheckItem::new("flow", "x = a t solves x' = a", ok, ""));
    items.extend(nilpotency_checks());
    items
}

/// `[f∂, g∂]` for polynomial coefficients in `x` over `ℚ[params]`.
fn poly_bracket(f: &MultiPoly, g: &MultiPoly) -> MultiPoly {
    &(f * &g.derivative("x")) - &(g * &f.derivative("x"))
}

/// Matrix of `ad F` on the basis `{x^k ∂}` (columns are images), if the span is preserved.
fn ad_matrix(f: &MultiPoly, dim: usize) -> Option<PolyMatrix> {
    let vars = f.vars().to_vec();
    let mut m = PolyMatrix::zero(dim, &vars);
    for j in 0..dim {
        let h = MultiPoly::var(&vars, "x").pow(j as u32);
        let b = poly_bracket(f, &h);
        let cs = b.coefficients_in("x").ok()?;
        if cs.len() > dim {
            return None;
        }
        for (i, c) in cs.into_iter().enumerate() {
            m.set(i, j, c.without_var("x").ok()?);
        }
    }
    Some(m)
}

pub fn nilpotency_checks() -> Vec<CheckItem> {
    let mut items = Vec::new();
    let vars = ["x", "p", "q"];
    let f = MultiPoly::parse("(p - q*x)^2", &vars).expect("literal");
    let ok = match ad_matrix(&f, 3) {
        Some(m) => {
            let index = m.nilpotency_index();
            let twice_ok = (0..3).all(|j| {
                let h = MultiPoly::var(&vars, "x").pow(j);
                poly_bracket(&f, &poly_bracket(&f, &h)).degree_in("x") <= 2
            });
            items.push(CheckItem::new(
                "flow",
                "ad((p - q x)^2 d) on {d, x d, x^2 d} cubes to zero",
                index.is_some_and(|k| k <= 3),
                format!("nilpotency index {}", index.map_or("none".into(), |k| k.to_string())),
            ));
            twice_ok
        }
        None => false,
    };
    items.push(CheckItem::new("flow", "[F, [F, h d]] stays in {d, x d, x^2 d}", ok, ""));
    let a = MultiPoly::parse("a", &["x", "a"]).expect("literal");
    let ok = ad_matrix(&a, 2).and_then(|m| m.nilpotency_index()).is_some_and(|k| k <= 2);
    items.push(CheckItem::new("flow", "ad(a d) on {d, x d} squares to zero", ok, ""));
    items
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::all_passed;

    fn assert_all(items: &[CheckItem]) {
        for i in items {
            assert!(i.passed, "{} / {}: {}", i.section, i.name, i.detail);
        }
    }

    #[test]
    fn closures_pass() {
        let items = verify_closures(&sample_lambdas());
        assert_eq!(items.len(), 19);
        assert_all(&items);
    }

    #[test]
    fn odes_pass() {
        assert_all(&verify_ode_solutions(&sample_lambdas()));
    }

    #[test]
    fn printed_cosine_sign_fails() {
        let g = (&QuasiPoly::cos(r!(1)) - &QuasiPoly::one()).scale(&r!(2));
        assert!(!second_order_residual(&g, &r!(-1)).is_zero());
        assert_eq!(g.series("x", 3).coeff(2), &r!(-1));
    }

    #[test]
    fn cosine_series_example() {
        let g = &second_order_solutions(&r!(1))[0].1;
        assert_eq!(g.series("x", 5).coeffs(), &[r!(0), r!(0), r!(1), r!(0), r!(-1, 12)]);
    }

    #[test]
    fn coord_changes_pass() {
        for order in [8, 16, 24] {
            assert_all(&verify_coord_changes(&sample_lambdas(), order));
        }
    }

    #[test]
    fn wrong_claim_fails() {
        let change = CoordChange::new(ChangeKind::Tan, r!(1));
        let bad = ChangeClaim {
            source: QuasiPoly::sin(r!(1)),
            target: vec![r!(0), r!(2)],
        };
        assert!(!check_claim_series(&change, &bad, 8));
    }

    #[test]
    fn flows_pass() {
        let items = flow_identities();
        assert!(all_passed(&items));
    }
}
