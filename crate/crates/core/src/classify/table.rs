//! The seven-row table of `SL(3)` Borel normal forms, recomputed.

use serde_json::{json, Map, Value};

use crate::algebra::Rational;
use crate::classify::{classify_curve, p_conjugacy_search, row_normal_form, ClassificationResult, ConjugacyOutcome, Variant};
use crate::error::Result;
use crate::lie::{FlagContext, LieElement};
use crate::r;

/// Sample values of `x` for row 7.
pub fn row7_samples() -> Vec<Rational> {
    vec![r!(1), r!(-1), r!(2), r!(1, 2)]
}

/// Conjugacy checks among rows 4-6, as `(from, to)`.
pub const CONJUGATE_PAIRS: [(u8, u8); 3] = [(6, 4), (6, 5), (4, 5)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableExpectations {
    pub rows: Vec<(u8, Option<Rational>, Variant)>,
}

impl Default for TableExpectations {
    fn default() -> Self {
        let mut rows: Vec<_> = (1..=6).map(|id| (id, None, Variant::Projective)).collect();
        rows.extend(row7_samples().into_iter().map(|x| (7, Some(x), Variant::AffineOnly)));
        TableExpectations { rows }
    }
}

impl TableExpectations {
    /// Flip the expectation of the first row with `row_id` (negative control).
    pub fn corrupted(mut self, row_id: u8) -> Self {
        if let Some(row) = self.rows.iter_mut().find(|r| r.0 == row_id) {
            row.2 = match row.2 {
                Variant::Projective => Variant::AffineOnly,
                _ => Variant::Projective,
            };
        }
        self
    }
}

#[derive(Debug, Clone)]
pub struct ConjugacyCheck {
    pub from_row: u8,
    pub to_row: u8,
    pub outcome: ConjugacyOutcome,
}

impl ConjugacyCheck {
    pub fn to_json(&self) -> Value {
        json!({ "from": self.from_row, "to": self.to_row, "result": self.outcome.to_json() })
    }
}

#[derive(Debug, Clone)]
pub struct TableRow {
    pub row_id: u8,
    pub parameter: Option<Rational>,
    pub normal_form: LieElement,
    pub expected: Variant,
    pub computed: ClassificationResult,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.computed.variant() == self.expected
    }
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub conjugacy: Vec<ConjugacyCheck>,
}

impl TableReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(TableRow::matches)
    }

    pub fn conjugacy_found(&self) -> bool {
        self.conjugacy.iter().all(|c| c.outcome.witness().is_some())
    }

    /// Array of `{rowId, parameter, normalForm, expected, computed, witnessOrCertificate, match}`;
    /// rows 4 and 5 also carry the conjugacy checks that end at them.
    pub fn to_json(&self) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut detail = row.computed.to_json();
                let detail = detail.as_object_mut().map(std::mem::take).unwrap_or_default();
                let witness: Map<String, Value> = detail.into_iter().filter(|(k, _)| k != "status").collect();
                let mut obj = json!({
                    "rowId": row.row_id,
                    "parameter": row.parameter.as_ref().map(ToString::to_string),
                    "normalForm": row.normal_form.rows(),
                    "expected": row.expected,
                    "computed": row.computed.variant(),
                    "witnessOrCertificate": witness,
                    "match": row.matches(),
                });
                let conj: Vec<Value> = self
                    .conjugacy
                    .iter()
                    .filter(|c| c.to_row == row.row_id)
                    .map(ConjugacyCheck::to_json)
                    .collect();
                if !conj.is_empty() {
                    obj["conjugacy"] = Value::Array(conj);
                }
                obj
            })
            .collect();
        Value::Array(rows)
    }
}

pub fn reproduce_table(expectations: &TableExpectations, budget: u64) -> Result<TableReport> {
    let ctx = FlagContext::borel(3);
    let rows = std::thread::scope(|s| {
        let handles: Vec<_> = expectations
            .rows
            .iter()
            .map(|(id, x, expected)| {
                let ctx = &ctx;
                s.spawn(move || -> Result<TableRow> {
                    let normal_form = row_normal_form(*id, x.as_ref())?;
                    let computed = classify_curve(ctx, &normal_form, budget)?;
                    Ok(TableRow {
                        row_id: *id,
                        parameter: x.clone(),
                        normal_form,
                        expected: *expected,
                        computed,
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("table worker panicked"))
            .collect::<Result<Vec<_>>>()
    })?;
    let conjugacy = CONJUGATE_PAIRS
        .iter()
        .map(|&(from, to)| {
            let outcome = p_conjugacy_search(&ctx, &row_normal_form(from, None)?, &row_normal_form(to, None)?, budget)?;
            Ok(ConjugacyCheck {
                from_row: from,
                to_row: to,
                outcome,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(TableReport { rows, conjugacy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::adjoint_element;

    #[test]
    fn table_matches() {
        let report = reproduce_table(&TableExpectations::default(), crate::solver::DEFAULT_BUDGET).unwrap();
        for row in &report.rows {
            assert!(row.matches(), "row {} x={:?}: {:?}", row.row_id, row.parameter, row.computed);
        }
        assert_eq!(report.rows.len(), 10);
        for c in &report.conjugacy {
            let w = c.outcome.witness().expect("conjugacy witness");
            let x1 = row_normal_form(c.from_row, None).unwrap();
            let x2 = row_normal_form(c.to_row, None).unwrap();
            assert_eq!(adjoint_element(&w.p, &x1).unwrap(), x2);
        }
        let j = report.to_json();
        assert_eq!(j.as_array().unwrap().len(), 10);
        assert_eq!(j[3]["conjugacy"].as_array().unwrap().len(), 1);
        assert_eq!(j[4]["conjugacy"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn corrupted_expectation_mismatches() {
        let exp = TableExpectations::default().corrupted(2);
        let report = reproduce_table(&exp, crate::solver::DEFAULT_BUDGET).unwrap();
        assert!(!report.all_match());
        assert_eq!(report.rows.iter().filter(|r| !r.matches()).count(), 1);
    }
}
