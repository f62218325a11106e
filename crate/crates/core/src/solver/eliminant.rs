//! Univariate eliminants of zero-dimensional ideals from a Gröbner basis.
//!
//! The powers `1, v, v², …` are reduced modulo the basis until their normal
//! forms become linearly dependent; the dependency is the minimal polynomial
//! of `v` on the quotient ring, whose roots are exactly the `v`-coordinates of
//! the solutions.

use std::collections::BTreeMap;

use crate::algebra::{linalg, Exponent, MultiPoly, Rational};
use crate::solver::groebner::{normal_form, GroebnerBasis};
use crate::solver::{Budget, OutOfBudget};

/// Degree cap; beyond this the quotient is too large to be worth it.
pub const MAX_ELIMINANT_DEGREE: usize = 48;

/// Whether the quotient ring is finite-dimensional: every variable has a pure
/// power among the leading monomials.
pub fn is_zero_dimensional(gb: &GroebnerBasis) -> bool {
    let leads: Vec<Exponent> = gb
        .generators
        .iter()
        .filter_map(|g| g.terms().map(|(e, _)| e).max_by(|a, b| gb.order.cmp(a, b)).cloned())
        .collect();
    (0..gb.variables.len()).all(|i| {
        leads
            .iter()
            .any(|e| e[i] > 0 && e.iter().enumerate().all(|(j, &d)| j == i || d == 0))
    })
}

/// Dense coefficients (constant first, monic) of the minimal polynomial of
/// `var` modulo a zero-dimensional ideal, or `None` if the ideal is not
/// zero-dimensional or the degree exceeds [`MAX_ELIMINANT_DEGREE`].
pub fn eliminant(gb: &GroebnerBasis, var: &str, budget: &mut Budget) -> Result<Option<Vec<Rational>>, OutOfBudget> {
    if gb.is_inconsistent() || !is_zero_dimensional(gb) {
        return Ok(None);
    }
    let v = MultiPoly::var(&gb.variables, var);
    let mut index: BTreeMap<Exponent, usize> = BTreeMap::new();
    let mut powers: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut current = MultiPoly::one(&gb.variables);
    for k in 0..=MAX_ELIMINANT_DEGREE {
        budget.consume(1 + current.num_terms() as u64)?;
        let mut coords = BTreeMap::new();
        for (e, c) in current.terms() {
            let next = index.len();
            coords.insert(*index.entry(e.clone()).or_insert(next), c.clone());
        }
        let dim = index.len();
        let dense = |m: &BTreeMap<usize, Rational>| -> Vec<Rational> {
            (0..dim).map(|i| m.get(&i).cloned().unwrap_or_else(Rational::zero)).collect()
        };
        let columns: Vec<Vec<Rational>> = powers.iter().map(dense).collect();
        if let Some(c) = linalg::solve(&columns, &dense(&coords)) {
            let mut out: Vec<Rational> = c.into_iter().map(|x| -x).collect();
            out.push(Rational::one());
            debug_assert_eq!(out.len(), k + 1);
            return Ok(Some(out));
        }
        powers.push(coords);
        current = normal_form(&(&current * &v), gb);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;
    use crate::solver::{buchberger, MonomialOrder};

    fn basis(src: &[&str], vars: &[&str]) -> GroebnerBasis {
        let gens: Vec<MultiPoly> = src.iter().map(|s| MultiPoly::parse(s, vars).unwrap()).collect();
        let vs: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        buchberger(&gens, &vs, MonomialOrder::Grevlex, &mut Budget::default()).unwrap()
    }

    #[test]
    fn circle_and_line() {
        // x² + y² = 5, x = y + 1: solutions (2, 1), (-1, -2)
        let gb = basis(&["x^2 + y^2 - 5", "x - y - 1"], &["x", "y"]);
        let m = eliminant(&gb, "y", &mut Budget::default()).unwrap().unwrap();
        // (y - 1)(y + 2) = y² + y - 2
        assert_eq!(m, vec![r!(-2), r!(1), r!(1)]);
    }

    #[test]
    fn positive_dimension_is_skipped() {
        let gb = basis(&["x*y - 1"], &["x", "y"]);
        assert!(!is_zero_dimensional(&gb));
        assert_eq!(eliminant(&gb, "x", &mut Budget::default()).unwrap(), None);
    }
}
