//! End-to-end reproduction of every reference computation, as pass/fail items.

use std::collections::BTreeMap;

use crate::algebra::{MultiPoly, Rational};
use crate::classify::{classify_curve, reproduce_table, ClassificationResult, TableExpectations};
use crate::criterion::{build_criterion_system, is_criterion_witness};
use crate::error::Result;
use crate::lie::{adjoint_element, exp_nilpotent, FlagContext, LieElement, PolyMatrix};
use crate::lie1d::{flow_identities, sample_lambdas, verify_closures, verify_coord_changes, verify_ode_solutions};
use crate::r;
use crate::report::CheckItem;
use crate::sweep::{run_sweeps, SweepConfig};

#[derive(Debug, Clone)]
pub struct CheckConfig {
    pub order: usize,
    pub budget: u64,
    pub expectations: TableExpectations,
    /// `None` skips the randomized sweeps.
    pub sweep: Option<SweepConfig>,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig {
            order: crate::algebra::DEFAULT_SERIES_ORDER,
            budget: crate::solver::DEFAULT_BUDGET,
            expectations: TableExpectations::default(),
            sweep: Some(SweepConfig::default()),
        }
    }
}

fn sl3() -> FlagContext {
    FlagContext::borel(3)
}

fn poly_matrix(rows: &[[&str; 3]]) -> PolyMatrix {
    let vars = ["t"];
    let entries = rows
        .iter()
        .flat_map(|row| row.iter().map(|s| MultiPoly::parse(s, &vars).expect("literal")))
        .collect();
    PolyMatrix::from_entries(3, entries)
}

/// The curve with all three below-diagonal entries of the `(1,1)` pattern.
pub fn inconsistent_curve() -> LieElement {
    LieElement::from_ints(sl3(), &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]).expect("literal")
}

pub fn exponential_checks() -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    let t = MultiPoly::var(&["t"], "t");

    let e = exp_nilpotent(&inconsistent_curve(), &t)?;
    let want = poly_matrix(&[["1", "0", "0"], ["t", "1", "0"], ["t + 1/2*t^2", "t", "1"]]);
    items.push(CheckItem::new(
        "exponential",
        "exp(t [[0,0,0],[1,0,0],[1,1,0]])",
        e == want,
        format!("{e}"),
    ));

    let p = LieElement::from_ints(sl3(), &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]])?;
    let e = p.to_poly(&["t"]).mul(&exp_nilpotent(&LieElement::unit(sl3(), 1, 0), &t)?)?;
    let want = poly_matrix(&[["1 + t", "1", "0"], ["t", "1", "0"], ["0", "0", "1"]]);
    items.push(CheckItem::new("exponential", "(I + E12) exp(t E21)", e == want, format!("{e}")));

    let rot = LieElement::from_ints(sl3(), &[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]])?;
    let ok = !rot.in_nilradical() && exp_nilpotent(&rot, &t).is_err();
    items.push(CheckItem::new("exponential", "rotation generator is not in n", ok, ""));
    Ok(items)
}

pub fn criterion_checks() -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    let x = LieElement::unit(sl3(), 1, 0);
    let sys = build_criterion_system(&sl3(), &x)?;
    let ok = sys.unknowns() == ["y21", "y31", "y32", "r12", "r13", "r23"] && sys.equations().len() == 7;
    items.push(CheckItem::new(
        "criterion",
        "system for E21",
        ok,
        format!("{} unknowns, {} equations", sys.unknowns().len(), sys.equations().len()),
    ));

    // u = 1, v = w = 0, a = 1, with b and c free
    for (b, c) in [(r!(0), r!(0)), (r!(3), r!(-2)), (r!(1, 2), r!(5))] {
        let mut a: BTreeMap<String, Rational> = BTreeMap::new();
        for (k, v) in [
            ("y21", r!(1)),
            ("y31", r!(0)),
            ("y32", r!(0)),
            ("r12", r!(1)),
            ("r13", b.clone()),
            ("r23", c.clone()),
        ] {
            a.insert(k.to_string(), v);
        }
        let residuals = sys.substitute_witness(&a)?;
        let (y, rr) = sys.witness_matrices(&a);
        let ok = residuals.iter().all(Rational::is_zero) && is_criterion_witness(&x, &y, &rr)?;
        items.push(CheckItem::new(
            "criterion",
            format!("witness u=1, a=1, b={b}, c={c}"),
            ok,
            "all residuals 0",
        ));
    }

    let mut bad: BTreeMap<String, Rational> = sys.unknowns().iter().map(|u| (u.clone(), r!(0))).collect();
    bad.insert("y21".into(), r!(2));
    let ok = sys.substitute_witness(&bad)?.iter().any(|v| !v.is_zero());
    items.push(CheckItem::new("criterion", "u=2, a=0 is rejected", ok, ""));
    Ok(items)
}

pub fn classification_checks(budget: u64) -> Result<Vec<CheckItem>> {
    let mut items = Vec::new();
    let x = LieElement::unit(sl3(), 1, 0);
    let res = classify_curve(&sl3(), &x, budget)?;
    let ok = match &res {
        ClassificationResult::Projective { y, r, .. } => *y == x && r.get(0, 1).is_one() && is_criterion_witness(&x, y, r)?,
        _ => false,
    };
    items.push(CheckItem::new("classify", "E21 is projective", ok, res.variant().to_string()));

    let res = classify_curve(&sl3(), &inconsistent_curve(), budget)?;
    let (ok, detail) = match &res {
        ClassificationResult::AffineOnly { certificate } => (
            certificate.to_strings() == ["1"],
            format!("certificate {:?}", certificate.to_strings()),
        ),
        other => (false, other.variant().to_string()),
    };
    items.push(CheckItem::new("classify", "[[0,0,0],[1,0,0],[1,1,0]] is affine-only", ok, detail));

    let ctx = FlagContext::borel(2);
    let x = LieElement::unit(ctx.clone(), 1, 0);
    let res = classify_curve(&ctx, &x, budget)?;
    let ok = match &res {
        ClassificationResult::Projective { assignment, .. } => {
            assignment.get("y21").is_some_and(Rational::is_one) && assignment.get("r12").is_some_and(Rational::is_one)
        }
        _ => false,
    };
    items.push(CheckItem::new(
        "classify",
        "SL(2): E21 is projective with u=1, a=1",
        ok,
        res.variant().to_string(),
    ));
    Ok(items)
}

pub fn conjugation_checks() -> Result<Vec<CheckItem>> {
    let z = LieElement::unit(sl3(), 1, 2).scale(&r!(-1));
    let none: [&str; 0] = [];
    let p = exp_nilpotent(&z, &MultiPoly::constant(&none, r!(-1)))?;
    let p = LieElement::from_poly(sl3(), &p).expect("rational");
    let got = adjoint_element(&p, &LieElement::unit(sl3(), 2, 0))?;
    let want = LieElement::unit(sl3(), 1, 0).add(&LieElement::unit(sl3(), 2, 0));
    Ok(vec![CheckItem::new(
        "conjugation",
        "Ad(exp(-Z)) E31 = E21 + E31 for Z = -E23",
        got == want,
        format!(
            "{:?}",
            got.rows()
                .iter()
                .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        ),
    )])
}

pub fn table_checks(expectations: &TableExpectations, budget: u64) -> Result<Vec<CheckItem>> {
    let report = reproduce_table(expectations, budget)?;
    let mut items = Vec::new();
    for row in &report.rows {
        let name = match &row.parameter {
            Some(x) => format!("row {} (x = {x})", row.row_id),
            None => format!("row {}", row.row_id),
        };
        let detail = format!("expected {}, computed {}", row.expected, row.computed.variant());
        items.push(CheckItem::new("table", name, row.matches(), detail));
    }
    for c in &report.conjugacy {
        items.push(CheckItem::new(
            "table",
            format!("row {} ~ row {}", c.from_row, c.to_row),
            c.outcome.witness().is_some(),
            c.outcome.to_json()["status"].as_str().unwrap_or_default().to_string(),
        ));
    }
    Ok(items)
}

pub fn lie1d_checks(order: usize) -> Vec<CheckItem> {
    let lambdas = sample_lambdas();
    let mut items = verify_closures(&lambdas);
    items.extend(verify_ode_solutions(&lambdas));
    items.extend(verify_coord_changes(&lambdas, order));
    items.extend(flow_identities());
    items
}

/// Every check, in a fixed order. Errors surface as failing items.
pub fn run_all_checks(cfg: &CheckConfig) -> Vec<CheckItem> {
    let mut items = Vec::new();
    let mut take = |section: &str, r: Result<Vec<CheckItem>>| match r {
        Ok(v) => items.extend(v),
        Err(e) => items.push(CheckItem::new(section, "evaluation", false, e.to_string())),
    };
    take("exponential", exponential_checks());
    take("criterion", criterion_checks());
    take("classify", classification_checks(cfg.budget));
    take("conjugation", conjugation_checks());
    take("table", table_checks(&cfg.expectations, cfg.budget));
    take("lie1d", Ok(lie1d_checks(cfg.order)));
    if let Some(s) = &cfg.sweep {
        take("sweep", Ok(run_sweeps(s)));
    }
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_checks_pass() {
        let cfg = CheckConfig {
            sweep: None,
            ..CheckConfig::default()
        };
        let items = run_all_checks(&cfg);
        let failed: Vec<_> = items.iter().filter(|i| !i.passed).collect();
        assert!(failed.is_empty(), "{failed:#?}");
    }

    #[test]
    fn corrupted_table_fails() {
        let cfg = CheckConfig {
            expectations: TableExpectations::default().corrupted(2),
            sweep: None,
            ..CheckConfig::default()
        };
        let items = run_all_checks(&cfg);
        let failed: Vec<_> = items.iter().filter(|i| !i.passed).map(|i| i.name.as_str()).collect();
        assert_eq!(failed, ["row 2"]);
    }
}
