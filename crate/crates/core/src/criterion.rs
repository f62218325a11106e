//! The polynomial criterion for projective reparameterisation.
//!
//! For `X ∈ n` the curve `exp(tX) mod P` is projective iff some `Y ∈ n` and
//! block-unipotent `r` make
//!
//! ```text
//! E(t) = (t+1)^{n-1} exp(-(t/(t+1)) Y) · r · exp(tX)
//! ```
//!
//! block upper triangular for every `t`. The unknowns are the below-block
//! entries of `Y` (`y{i}{j}`) and the above-block entries of `r` (`r{i}{j}`),
//! 1-based. The equations are the `t`-coefficients of the below-block entries
//! of `E(t)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::lie::{below_block_entries, exp_mobius_cleared, exp_nilpotent, FlagContext, LieElement, PolyMatrix};
use crate::solver::system::PolySystemJson;
use crate::solver::PolySystem;

const T: &str = "t";

/// Where an equation came from: entry `(row, col)` (0-based) and power of `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Source {
    pub row: usize,
    pub col: usize,
    pub t_power: u32,
}

#[derive(Debug, Clone)]
pub struct CriterionSystem {
    pub context: FlagContext,
    pub curve: LieElement,
    pub y_unknowns: Vec<((usize, usize), String)>,
    pub r_unknowns: Vec<((usize, usize), String)>,
    pub system: PolySystem,
    /// `sources[k]` lists every coefficient position equal to equation `k`.
    pub sources: Vec<Vec<Source>>,
}

/// `y21`, `r13`, ...; indices are separated by `_` once `n ≥ 10`.
pub fn unknown_name(prefix: char, i: usize, j: usize, n: usize) -> String {
    if n >= 10 {
        format!("{prefix}{}_{}", i + 1, j + 1)
    } else {
        format!("{prefix}{}{}", i + 1, j + 1)
    }
}

fn check_curve(ctx: &FlagContext, x: &LieElement) -> Result<()> {
    if x.n() != ctx.n() {
        return Err(Error::SizeMismatch(x.n(), ctx.n()));
    }
    if x.is_zero() {
        return Err(Error::ConstantCurve);
    }
    let n = ctx.n();
    for i in 0..n {
        for j in 0..n {
            if !ctx.is_below_block(i, j) && !x.get(i, j).is_zero() {
                return Err(Error::NotInNilradical);
            }
        }
    }
    Ok(())
}

/// `(t+1)^{n-1} exp(-(t/(t+1)) Y) · r · exp(tX)` with every factor over `vars ∪ {t}`.
pub fn criterion_product(ctx: &FlagContext, x: &LieElement, y: &PolyMatrix, r: &PolyMatrix) -> Result<PolyMatrix> {
    let left = exp_mobius_cleared(y, ctx, T)?;
    let mut vars = left.vars();
    for v in r.vars() {
        if !vars.contains(&v) {
            vars.push(v);
        }
    }
    let t = MultiPoly::var(&vars, T);
    let right = exp_nilpotent(x, &t)?;
    left.mul(r)?.mul(&right)
}

/// The criterion product for rational `Y` and `r`, as polynomials in `t` alone.
pub fn numeric_product(x: &LieElement, y: &LieElement, r: &LieElement) -> Result<PolyMatrix> {
    let ctx = x.context();
    criterion_product(ctx, x, &y.to_poly(&[T]), &r.to_poly(&[T]))
}

/// Whether `(Y, r)` puts the cleared product in `P` identically in `t`.
pub fn is_criterion_witness(x: &LieElement, y: &LieElement, r: &LieElement) -> Result<bool> {
    let e = numeric_product(x, y, r)?;
    Ok(below_block_entries(&e, x.context()).iter().all(MultiPoly::is_zero))
}

pub fn build_criterion_system(ctx: &FlagContext, x: &LieElement) -> Result<CriterionSystem> {
    check_curve(ctx, x)?;
    let n = ctx.n();
    let y_unknowns: Vec<_> = ctx
        .below_block()
        .into_iter()
        .map(|(i, j)| ((i, j), unknown_name('y', i, j, n)))
        .collect();
    let r_unknowns: Vec<_> = ctx
        .above_block()
        .into_iter()
        .map(|(i, j)| ((i, j), unknown_name('r', i, j, n)))
        .collect();
    let unknowns: Vec<String> = y_unknowns.iter().chain(&r_unknowns).map(|(_, s)| s.clone()).collect();
    let mut ring = unknowns.clone();
    ring.push(T.to_string());

    let mut y = PolyMatrix::zero(n, &ring);
    for ((i, j), name) in &y_unknowns {
        y.set(*i, *j, MultiPoly::var(&ring, name));
    }
    let mut r = PolyMatrix::identity(n, &ring);
    for ((i, j), name) in &r_unknowns {
        r.set(*i, *j, MultiPoly::var(&ring, name));
    }
    let e = criterion_product(ctx, x, &y, &r)?;

    let mut equations: Vec<MultiPoly> = Vec::new();
    let mut sources: Vec<Vec<Source>> = Vec::new();
    for (i, j) in ctx.below_block() {
        for (p, c) in e.get(i, j).coefficients_in(T)?.into_iter().enumerate() {
            let c = c.without_var(T)?.with_vars(&unknowns)?;
            if c.is_zero() {
                continue;
            }
            let src = Source {
                row: i,
                col: j,
                t_power: p as u32,
            };
            match equations.iter().position(|q| *q == c) {
                Some(k) => sources[k].push(src),
                None => {
                    equations.push(c);
                    sources.push(vec![src]);
                }
            }
        }
    }
    Ok(CriterionSystem {
        context: ctx.clone(),
        curve: x.clone(),
        y_unknowns,
        r_unknowns,
        system: PolySystem::new(unknowns, equations)?,
        sources,
    })
}

impl CriterionSystem {
    pub fn unknowns(&self) -> &[String] {
        &self.system.unknowns
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.system.equations
    }

    /// Residual of every equation at `assignment`.
    pub fn substitute_witness(&self, assignment: &BTreeMap<String, Rational>) -> Result<Vec<Rational>> {
        self.system.residuals(assignment)
    }

    /// `(Y, r)` as matrices; unknowns missing from `assignment` read as zero.
    pub fn witness_matrices(&self, assignment: &BTreeMap<String, Rational>) -> (LieElement, LieElement) {
        let value = |name: &String| assignment.get(name).cloned().unwrap_or_else(Rational::zero);
        let mut y = LieElement::zero(self.context.clone());
        for ((i, j), name) in &self.y_unknowns {
            y.set(*i, *j, value(name));
        }
        let mut r = LieElement::identity(self.context.clone());
        for ((i, j), name) in &self.r_unknowns {
            r.set(*i, *j, value(name));
        }
        (y, r)
    }

    /// Inverse of [`Self::witness_matrices`].
    pub fn assignment_from(&self, y: &LieElement, r: &LieElement) -> BTreeMap<String, Rational> {
        let ys = self.y_unknowns.iter().map(|((i, j), s)| (s.clone(), y.get(*i, *j).clone()));
        let rs = self.r_unknowns.iter().map(|((i, j), s)| (s.clone(), r.get(*i, *j).clone()));
        ys.chain(rs).collect()
    }

    /// Upper bound on the `t`-degree of any entry of the cleared product.
    pub fn degree_bound(&self) -> u32 {
        let n = self.context.n() as u32;
        let k = crate::lie::nilpotency_index(&self.curve).expect("curve in the nilradical") as u32;
        2 * (n - 1) + (k - 1)
    }

    pub fn to_json(&self) -> PolySystemJson {
        self.system.to_json()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn sl3() -> FlagContext {
        FlagContext::borel(3)
    }

    fn assignment(pairs: &[(&str, i64)]) -> BTreeMap<String, Rational> {
        pairs.iter().map(|(k, v)| (k.to_string(), Rational::from(*v))).collect()
    }

    #[test]
    fn sl2_equations() {
        let ctx = FlagContext::borel(2);
        let sys = build_criterion_system(&ctx, &LieElement::unit(ctx.clone(), 1, 0)).unwrap();
        assert_eq!(sys.unknowns(), ["y21", "r12"]);
        let eqs: Vec<String> = sys.equations().iter().map(ToString::to_string).collect();
        assert_eq!(eqs, ["-y21 + 1", "-y21*r12 + 1"]);
        assert_eq!(
            sys.sources,
            vec![
                vec![Source {
                    row: 1,
                    col: 0,
                    t_power: 1
                }],
                vec![Source {
                    row: 1,
                    col: 0,
                    t_power: 2
                }]
            ]
        );
        let ok = sys.substitute_witness(&assignment(&[("y21", 1), ("r12", 1)])).unwrap();
        assert!(ok.iter().all(Rational::is_zero));
        let bad = sys.substitute_witness(&assignment(&[("y21", 0), ("r12", 0)])).unwrap();
        assert_eq!(bad, vec![r!(1), r!(1)]);
    }

    #[test]
    fn sl3_e21_witness() {
        let sys = build_criterion_system(&sl3(), &LieElement::unit(sl3(), 1, 0)).unwrap();
        assert_eq!(sys.unknowns(), ["y21", "y31", "y32", "r12", "r13", "r23"]);
        assert_eq!(sys.equations().len(), 7);
        let w = assignment(&[("y21", 1), ("y31", 0), ("y32", 0), ("r12", 1), ("r13", 0), ("r23", 0)]);
        assert!(sys.substitute_witness(&w).unwrap().iter().all(Rational::is_zero));
        // b and c are free
        let w2 = assignment(&[("y21", 1), ("y31", 0), ("y32", 0), ("r12", 1), ("r13", 5), ("r23", -7)]);
        assert!(sys.system.is_solution(&w2));
        let (y, r) = sys.witness_matrices(&w2);
        assert!(is_criterion_witness(&sys.curve, &y, &r).unwrap());
        assert_eq!(sys.assignment_from(&y, &r), w2);
    }

    #[test]
    fn sl3_family_system_size() {
        let x = LieElement::from_ints(sl3(), &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]).unwrap();
        let sys = build_criterion_system(&sl3(), &x).unwrap();
        assert_eq!(sys.equations().len(), 11);
        assert!(sys.equations().iter().all(|e| e.index_of("t").is_none()));
    }

    #[test]
    fn rejects_bad_curves() {
        assert_eq!(
            build_criterion_system(&sl3(), &LieElement::zero(sl3())).unwrap_err(),
            Error::ConstantCurve
        );
        assert_eq!(
            build_criterion_system(&sl3(), &LieElement::unit(sl3(), 0, 1)).unwrap_err(),
            Error::NotInNilradical
        );
    }

    #[test]
    fn parabolic_unknowns() {
        let ctx = FlagContext::new(vec![2, 1]).unwrap();
        let x = LieElement::unit(ctx.clone(), 2, 0);
        let sys = build_criterion_system(&ctx, &x).unwrap();
        assert_eq!(sys.unknowns(), ["y31", "y32", "r13", "r23"]);
    }

    #[test]
    fn names_for_large_n() {
        assert_eq!(unknown_name('y', 10, 0, 11), "y11_1");
        assert_eq!(unknown_name('r', 0, 2, 3), "r13");
    }

    #[test]
    fn json_shape() {
        let ctx = FlagContext::borel(2);
        let sys = build_criterion_system(&ctx, &LieElement::unit(ctx.clone(), 1, 0)).unwrap();
        let j = serde_json::to_value(sys.to_json()).unwrap();
        assert_eq!(
            j,
            serde_json::json!({"unknowns": ["y21", "r12"], "equations": ["-y21 + 1", "-y21*r12 + 1"]})
        );
    }
}
