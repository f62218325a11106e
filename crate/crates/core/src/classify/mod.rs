//! Classification of distinguished curves as projective or affine-only.

mod conjugacy;
mod normal_form;
mod table;

use std::collections::BTreeMap;
use std::fmt;

use log::{debug, warn};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::Rational;
use crate::criterion::{build_criterion_system, is_criterion_witness};
use crate::error::Result;
use crate::lie::{FlagContext, LieElement, MatrixJson};
use crate::solver::{find_rational_witness, GroebnerBasis, SolveOutcome, UnknownReason};

pub use conjugacy::{compose, p_conjugacy_search, ConjugacyOutcome, ConjugacyWitness};
pub use normal_form::{row_normal_form, sl3_normal_form, NormalFormRow};
pub use table::{reproduce_table, ConjugacyCheck, TableExpectations, TableReport, TableRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Projective,
    AffineOnly,
    Undetermined,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Projective => "projective",
            Variant::AffineOnly => "affine-only",
            Variant::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassificationResult {
    /// `Y ∈ n` and `r ∈ U` satisfying the criterion.
    Projective {
        y: LieElement,
        r: LieElement,
        assignment: BTreeMap<String, Rational>,
    },
    /// The criterion ideal is the unit ideal.
    AffineOnly {
        certificate: GroebnerBasis,
    },
    Undetermined {
        reason: UnknownReason,
    },
}

impl ClassificationResult {
    pub fn variant(&self) -> Variant {
        match self {
            ClassificationResult::Projective { .. } => Variant::Projective,
            ClassificationResult::AffineOnly { .. } => Variant::AffineOnly,
            ClassificationResult::Undetermined { .. } => Variant::Undetermined,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ClassificationResult::Projective { y, r, assignment } => json!({
                "status": "projective",
                "witness": {
                    "Y": MatrixJson::from(y),
                    "r": MatrixJson::from(r),
                    "assignment": assignment.iter().map(|(k, v)| (k.clone(), v.to_string())).collect::<BTreeMap<_, _>>(),
                },
            }),
            ClassificationResult::AffineOnly { certificate } => json!({
                "status": "affine-only",
                "certificate": { "order": certificate.order, "generators": certificate.to_strings() },
            }),
            ClassificationResult::Undetermined { reason } => json!({
                "status": "undetermined",
                "reason": reason,
            }),
        }
    }
}

/// Build the criterion system for `X` and decide it.
pub fn classify_curve(ctx: &FlagContext, x: &LieElement, budget: u64) -> Result<ClassificationResult> {
    let sys = build_criterion_system(ctx, x)?;
    debug!(
        "criterion system: {} unknowns, {} equations",
        sys.unknowns().len(),
        sys.equations().len()
    );
    Ok(match find_rational_witness(&sys.system, budget) {
        SolveOutcome::Witness(assignment) => {
            let (y, r) = sys.witness_matrices(&assignment);
            if is_criterion_witness(x, &y, &r)? {
                ClassificationResult::Projective { y, r, assignment }
            } else {
                warn!("witness satisfied the equations but not the product check");
                ClassificationResult::Undetermined {
                    reason: UnknownReason::NoRationalWitnessFound,
                }
            }
        }
        SolveOutcome::Inconsistent(certificate) => ClassificationResult::AffineOnly { certificate },
        SolveOutcome::Unknown(reason) => ClassificationResult::Undetermined { reason },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn sl3() -> FlagContext {
        FlagContext::borel(3)
    }

    const BUDGET: u64 = crate::solver::DEFAULT_BUDGET;

    #[test]
    fn e21_is_projective() {
        let x = LieElement::unit(sl3(), 1, 0);
        match classify_curve(&sl3(), &x, BUDGET).unwrap() {
            ClassificationResult::Projective { y, r, .. } => {
                assert_eq!(y, LieElement::unit(sl3(), 1, 0));
                assert_eq!(r, LieElement::identity(sl3()).add(&LieElement::unit(sl3(), 0, 1)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn open_family_is_affine_only() {
        let x = LieElement::from_ints(sl3(), &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]).unwrap();
        let res = classify_curve(&sl3(), &x, BUDGET).unwrap();
        assert_eq!(res.variant(), Variant::AffineOnly);
        let j = res.to_json();
        assert_eq!(j["certificate"]["generators"], json!(["1"]));
    }

    #[test]
    fn sl2_witness() {
        let ctx = FlagContext::borel(2);
        match classify_curve(&ctx, &LieElement::unit(ctx.clone(), 1, 0), BUDGET).unwrap() {
            ClassificationResult::Projective { assignment, .. } => {
                assert_eq!(assignment["y21"], r!(1));
                assert_eq!(assignment["r12"], r!(1));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parabolic_case_runs() {
        let ctx = FlagContext::new(vec![2, 1]).unwrap();
        let x = LieElement::unit(ctx.clone(), 2, 0);
        assert_eq!(classify_curve(&ctx, &x, BUDGET).unwrap().variant(), Variant::Projective);
    }
}
