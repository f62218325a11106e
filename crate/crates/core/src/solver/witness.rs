//! Rational witness search.
//!
//! Pipeline: a grevlex Gröbner basis first certifies inconsistency (`1` in
//! the ideal). Otherwise a depth-first search alternates between isolating
//! unknowns that occur linearly with constant coefficient, rational-root
//! branching on univariate equations, lex Gröbner bases, and finally trying
//! small rational values for the last remaining unknown. Unknowns left free
//! at the end are set to zero. A witness is only reported after exact
//! substitution into the original equations gives all zeros.

use std::collections::BTreeMap;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, Rational};
use crate::r;
use crate::solver::eliminant::eliminant;
use crate::solver::{buchberger, rational_roots, Budget, GroebnerBasis, MonomialOrder, PolySystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnknownReason {
    BudgetExhausted,
    NoRationalWitnessFound,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Witness(BTreeMap<String, Rational>),
    Inconsistent(GroebnerBasis),
    Unknown(UnknownReason),
}

impl SolveOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            SolveOutcome::Witness(_) => "witness",
            SolveOutcome::Inconsistent(_) => "inconsistent",
            SolveOutcome::Unknown(_) => "unknown",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            SolveOutcome::Witness(a) => serde_json::json!({
                "status": "witness",
                "assignment": a.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
            }),
            SolveOutcome::Inconsistent(gb) => serde_json::json!({
                "status": "inconsistent",
                "certificate": { "order": gb.order, "generators": gb.to_strings() },
            }),
            SolveOutcome::Unknown(reason) => serde_json::json!({
                "status": "unknown",
                "reason": reason,
            }),
        }
    }
}

/// Values tried, in order, for an unknown the search cannot pin down.
fn candidates() -> Vec<Rational> {
    vec![r!(0), r!(1), r!(-1), r!(2), r!(-2), r!(1, 2), r!(-1, 2), r!(3), r!(-3)]
}

enum Step {
    Found(Vec<(String, MultiPoly)>),
    Dead,
}

struct OutOfSteps;

struct Search<'a> {
    unknowns: &'a [String],
    budget: Budget,
}

impl Search<'_> {
    fn normalise(&self, eqs: Vec<MultiPoly>) -> Option<Vec<MultiPoly>> {
        let mut out: Vec<MultiPoly> = Vec::with_capacity(eqs.len());
        for e in eqs {
            if e.is_zero() {
                continue;
            }
            if e.is_constant() {
                return None;
            }
            let m = e.monic();
            if !out.contains(&m) {
                out.push(m);
            }
        }
        Some(out)
    }

    fn linear_coefficient_var(&self, eqs: &[MultiPoly]) -> Option<String> {
        eqs.iter().find_map(|e| {
            self.unknowns.iter().filter(|v| e.degree_in(v) == 1).find_map(|v| {
                let cs = e.coefficients_in(v).expect("variable in ring");
                cs[1].occurring_vars().into_iter().next()
            })
        })
    }

    fn bind(eqs: &[MultiPoly], var: &str, value: &MultiPoly) -> Vec<MultiPoly> {
        let b: BTreeMap<String, MultiPoly> = [(var.to_string(), value.clone())].into();
        eqs.iter().map(|e| e.substitute(&b)).collect()
    }

    fn solve(&mut self, eqs: Vec<MultiPoly>, trail: Vec<(String, MultiPoly)>, gb_done: bool) -> Result<Step, OutOfSteps> {
        let Some(eqs) = self.normalise(eqs) else {
            return Ok(Step::Dead);
        };
        if eqs.is_empty() {
            return Ok(Step::Found(trail));
        }
        self.budget.consume(1).map_err(|_| OutOfSteps)?;

        // linear isolation
        for e in &eqs {
            for v in self.unknowns {
                if e.degree_in(v) != 1 {
                    continue;
                }
                let cs = e.coefficients_in(v).expect("variable in ring");
                if let Some(c) = cs[1].constant_value() {
                    let expr = cs[0].scale(&(-c.recip()));
                    let next = Self::bind(&eqs, v, &expr);
                    let mut trail = trail;
                    trail.push((v.clone(), expr));
                    return self.solve(next, trail, false);
                }
            }
        }

        // univariate equations, fewest candidate roots first
        let uni = eqs
            .iter()
            .filter_map(|e| {
                let occ = e.occurring_vars();
                (occ.len() == 1).then(|| (e, occ[0].clone()))
            })
            .min_by_key(|(e, v)| e.degree_in(v));
        if let Some((e, v)) = uni {
            let dense: Vec<Rational> = e
                .coefficients_in(&v)
                .expect("variable in ring")
                .iter()
                .map(|c| c.constant_value().expect("univariate"))
                .collect();
            let Some(roots) = rational_roots(&dense) else {
                return Ok(Step::Dead);
            };
            for root in roots {
                let value = MultiPoly::constant(self.unknowns, root);
                let next = Self::bind(&eqs, &v, &value);
                let mut t = trail.clone();
                t.push((v.clone(), value));
                if let Step::Found(t) = self.solve(next, t, false)? {
                    return Ok(Step::Found(t));
                }
            }
            return Ok(Step::Dead);
        }

        if !gb_done {
            if let Ok(gb) = buchberger(&eqs, self.unknowns, MonomialOrder::Lex, &mut self.budget) {
                if gb.is_inconsistent() {
                    return Ok(Step::Dead);
                }
                return self.solve(gb.generators, trail, true);
            }
            // lex blew up: for a finite solution set, the eliminant of one
            // unknown lists every admissible value
            let gb = buchberger(&eqs, self.unknowns, MonomialOrder::Grevlex, &mut self.budget).map_err(|_| OutOfSteps)?;
            if gb.is_inconsistent() {
                return Ok(Step::Dead);
            }
            let last = self.unknowns.iter().rev().find(|v| eqs.iter().any(|e| e.degree_in(v) > 0)).cloned();
            if let Some(v) = last {
                if let Some(m) = eliminant(&gb, &v, &mut self.budget).map_err(|_| OutOfSteps)? {
                    for root in rational_roots(&m).unwrap_or_default() {
                        let value = MultiPoly::constant(self.unknowns, root);
                        let mut t = trail.clone();
                        t.push((v.clone(), value.clone()));
                        if let Step::Found(t) = self.solve(Self::bind(&eqs, &v, &value), t, false)? {
                            return Ok(Step::Found(t));
                        }
                    }
                    return Ok(Step::Dead);
                }
            }
            return self.solve(eqs, trail, true);
        }

        // branch on an unknown of a linear coefficient, so that fixing it makes
        // the equation linear; otherwise on the last occurring unknown
        let v = self
            .linear_coefficient_var(&eqs)
            .or_else(|| self.unknowns.iter().rev().find(|v| eqs.iter().any(|e| e.degree_in(v) > 0)).cloned())
            .expect("non-constant equations mention an unknown");
        for c in candidates() {
            let value = MultiPoly::constant(self.unknowns, c);
            let next = Self::bind(&eqs, &v, &value);
            let mut t = trail.clone();
            t.push((v.clone(), value));
            if let Step::Found(t) = self.solve(next, t, false)? {
                return Ok(Step::Found(t));
            }
        }
        Ok(Step::Dead)
    }
}

fn assignment_from_trail(unknowns: &[String], trail: &[(String, MultiPoly)]) -> Option<BTreeMap<String, Rational>> {
    let mut out: BTreeMap<String, Rational> = unknowns
        .iter()
        .filter(|u| !trail.iter().any(|(v, _)| v == *u))
        .map(|u| (u.clone(), Rational::zero()))
        .collect();
    for (v, expr) in trail.iter().rev() {
        let value = expr.eval_rational(&out).ok()?;
        out.insert(v.clone(), value);
    }
    Some(out)
}

/// Decide `sys`: a verified rational witness, a `{1}` certificate, or unknown.
pub fn find_rational_witness(sys: &PolySystem, budget_steps: u64) -> SolveOutcome {
    let mut budget = Budget::new(budget_steps);
    let eqs: Vec<MultiPoly> = sys.equations.iter().filter(|e| !e.is_zero()).cloned().collect();
    let gb = match buchberger(&eqs, &sys.unknowns, MonomialOrder::Grevlex, &mut budget) {
        Ok(gb) => gb,
        Err(_) => return SolveOutcome::Unknown(UnknownReason::BudgetExhausted),
    };
    if gb.is_inconsistent() {
        return SolveOutcome::Inconsistent(gb);
    }
    let mut search = Search {
        unknowns: &sys.unknowns,
        budget,
    };
    match search.solve(eqs, Vec::new(), false) {
        Err(OutOfSteps) => SolveOutcome::Unknown(UnknownReason::BudgetExhausted),
        Ok(Step::Dead) => SolveOutcome::Unknown(UnknownReason::NoRationalWitnessFound),
        Ok(Step::Found(trail)) => match assignment_from_trail(&sys.unknowns, &trail) {
            Some(a) if sys.is_solution(&a) => SolveOutcome::Witness(a),
            _ => {
                debug!("search produced an assignment that failed verification");
                SolveOutcome::Unknown(UnknownReason::NoRationalWitnessFound)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn system(unknowns: &[&str], eqs: &[&str]) -> PolySystem {
        let u: Vec<String> = unknowns.iter().map(|s| s.to_string()).collect();
        let e = eqs.iter().map(|s| MultiPoly::parse(s, unknowns).unwrap()).collect();
        PolySystem::new(u, e).unwrap()
    }

    fn witness(o: SolveOutcome) -> BTreeMap<String, Rational> {
        match o {
            SolveOutcome::Witness(a) => a,
            other => panic!("expected witness, got {other:?}"),
        }
    }

    #[test]
    fn sl2_system() {
        let a = witness(find_rational_witness(&system(&["u", "a"], &["1 - u", "1 - u*a"]), 10_000));
        assert_eq!(a["u"], r!(1));
        assert_eq!(a["a"], r!(1));
    }

    #[test]
    fn irrational_only() {
        let o = find_rational_witness(&system(&["y"], &["y^2 - 2"]), 10_000);
        assert_eq!(o, SolveOutcome::Unknown(UnknownReason::NoRationalWitnessFound));
    }

    #[test]
    fn inconsistent_system() {
        let o = find_rational_witness(&system(&["x", "y"], &["x*y - 1", "x"]), 10_000);
        match o {
            SolveOutcome::Inconsistent(gb) => assert!(gb.is_inconsistent()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn needs_branching() {
        // (b - 1)^2 (c + 1) = 0 and (b - 1)(c + 1)^2 = 0 with a free third unknown
        let sys = system(&["a", "b", "c"], &["(b-1)^2*(c+1)", "(b-1)*(c+1)^2", "a*b - b"]);
        let a = witness(find_rational_witness(&sys, 10_000));
        assert!(sys.is_solution(&a));
    }

    #[test]
    fn empty_system_defaults_to_zero() {
        let a = witness(find_rational_witness(&system(&["p", "q"], &[]), 100));
        assert_eq!(a["p"], r!(0));
        assert_eq!(a["q"], r!(0));
    }

    #[test]
    fn tiny_budget_degrades_to_unknown() {
        let sys = system(&["x", "y", "z"], &["x^2 + y*z - 1", "y^2 - x*z + 2", "z^3 - x*y"]);
        assert_eq!(
            find_rational_witness(&sys, 2),
            SolveOutcome::Unknown(UnknownReason::BudgetExhausted)
        );
    }

    #[test]
    fn outcome_json() {
        let j = find_rational_witness(&system(&["u"], &["u - 3/2"]), 100).to_json();
        assert_eq!(j["status"], "witness");
        assert_eq!(j["assignment"]["u"], "3/2");
    }
}
