//! Search for `p ∈ P` with `Ad_p X₁ = X₂`.
//!
//! `p = l·exp(Z)` with `l` block diagonal and `Z` above-block, all entries
//! unknown. The equations are the entries of `p X₁ − X₂ p` together with
//! `s·det(l) − 1`, which forces `l` to be invertible.

use serde_json::{json, Value};

use crate::algebra::MultiPoly;
use crate::criterion::unknown_name;
use crate::error::{Error, Result};
use crate::lie::{adjoint_element, exp_nilpotent_matrix, FlagContext, LieElement, MatrixJson, PolyMatrix};
use crate::solver::{find_rational_witness, GroebnerBasis, PolySystem, SolveOutcome, UnknownReason};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub p: LieElement,
    pub l: LieElement,
    pub z: LieElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugacyOutcome {
    Witness(ConjugacyWitness),
    /// No `p ∈ P` exists, even over the algebraic closure.
    NotConjugate(GroebnerBasis),
    Undetermined(UnknownReason),
}

impl ConjugacyOutcome {
    pub fn witness(&self) -> Option<&ConjugacyWitness> {
        match self {
            ConjugacyOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ConjugacyOutcome::Witness(w) => json!({
                "status": "witness",
                "p": MatrixJson::from(&w.p),
                "l": MatrixJson::from(&w.l),
                "Z": MatrixJson::from(&w.z),
            }),
            ConjugacyOutcome::NotConjugate(gb) => json!({
                "status": "not-conjugate",
                "certificate": { "order": gb.order, "generators": gb.to_strings() },
            }),
            ConjugacyOutcome::Undetermined(reason) => json!({
                "status": "undetermined",
                "reason": reason,
            }),
        }
    }
}

fn symbolic(ctx: &FlagContext, positions: &[(usize, usize)], prefix: char, ring: &[String]) -> PolyMatrix {
    let mut m = PolyMatrix::zero(ctx.n(), ring);
    for &(i, j) in positions {
        m.set(i, j, MultiPoly::var(ring, &unknown_name(prefix, i, j, ctx.n())));
    }
    m
}

pub fn p_conjugacy_search(ctx: &FlagContext, x1: &LieElement, x2: &LieElement, budget: u64) -> Result<ConjugacyOutcome> {
    for x in [x1, x2] {
        if x.n() != ctx.n() {
            return Err(Error::SizeMismatch(x.n(), ctx.n()));
        }
        if !x.in_nilradical() {
            return Err(Error::NotInNilradical);
        }
    }
    let n = ctx.n();
    let l_pos = ctx.diag_block();
    let z_pos = ctx.above_block();
    let mut unknowns: Vec<String> = z_pos.iter().map(|&(i, j)| unknown_name('z', i, j, n)).collect();
    unknowns.extend(l_pos.iter().map(|&(i, j)| unknown_name('l', i, j, n)));
    unknowns.push("s".into());

    let l = symbolic(ctx, &l_pos, 'l', &unknowns);
    let z = symbolic(ctx, &z_pos, 'z', &unknowns);
    let one = MultiPoly::one(&unknowns);
    let p = l.mul(&exp_nilpotent_matrix(&z, &one)?)?;
    let lhs = p.mul(&x1.to_poly(&unknowns))?;
    let rhs = x2.to_poly(&unknowns).mul(&p)?;
    let mut equations: Vec<MultiPoly> = lhs.sub(&rhs)?.entries().iter().filter(|e| !e.is_zero()).cloned().collect();
    equations.push(&(&MultiPoly::var(&unknowns, "s") * &l.det()) - &one);
    let sys = PolySystem::new(unknowns, equations)?;

    Ok(match find_rational_witness(&sys, budget) {
        SolveOutcome::Witness(a) => {
            let value = |m: &PolyMatrix| -> Result<LieElement> {
                let v = m.evaluate(&a);
                LieElement::from_poly(ctx.clone(), &v).ok_or_else(|| Error::MissingBinding("witness".into()))
            };
            let (l, z, p) = (value(&l)?, value(&z)?, value(&p)?);
            if adjoint_element(&p, x1)? == *x2 {
                ConjugacyOutcome::Witness(ConjugacyWitness { p, l, z })
            } else {
                ConjugacyOutcome::Undetermined(UnknownReason::NoRationalWitnessFound)
            }
        }
        SolveOutcome::Inconsistent(gb) => ConjugacyOutcome::NotConjugate(gb),
        SolveOutcome::Unknown(r) => ConjugacyOutcome::Undetermined(r),
    })
}

/// `l·exp(Z)` for rational `l` and `Z`.
pub fn compose(l: &LieElement, z: &LieElement) -> Result<LieElement> {
    let none: [&str; 0] = [];
    let e = exp_nilpotent_matrix(&z.to_poly(&none), &MultiPoly::one(&none))?;
    let p = l.to_poly(&none).mul(&e)?;
    Ok(LieElement::from_poly(l.context().clone(), &p).expect("rational"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn sl3() -> FlagContext {
        FlagContext::borel(3)
    }

    fn e(i: usize, j: usize) -> LieElement {
        LieElement::unit(sl3(), i, j)
    }

    fn witness(o: ConjugacyOutcome) -> ConjugacyWitness {
        match o {
            ConjugacyOutcome::Witness(w) => w,
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn e31_to_e21_plus_e31() {
        let target = e(1, 0).add(&e(2, 0));
        let w = witness(p_conjugacy_search(&sl3(), &e(2, 0), &target, 100_000).unwrap());
        assert_eq!(adjoint_element(&w.p, &e(2, 0)).unwrap(), target);
        assert_eq!(compose(&w.l, &w.z).unwrap(), w.p);
    }

    #[test]
    fn e31_to_e31_plus_e32() {
        let target = e(2, 0).add(&e(2, 1));
        let w = witness(p_conjugacy_search(&sl3(), &e(2, 0), &target, 100_000).unwrap());
        assert_eq!(adjoint_element(&w.p, &e(2, 0)).unwrap(), target);
    }

    #[test]
    fn identity_case() {
        let w = witness(p_conjugacy_search(&sl3(), &e(1, 0), &e(1, 0), 100_000).unwrap());
        assert_eq!(adjoint_element(&w.p, &e(1, 0)).unwrap(), e(1, 0));
    }

    #[test]
    fn different_orbits() {
        match p_conjugacy_search(&sl3(), &e(1, 0), &e(2, 1), 100_000).unwrap() {
            ConjugacyOutcome::NotConjugate(gb) => assert!(gb.is_inconsistent()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hand_witness() {
        // p = I + E23 sends E31 to E21 + E31
        let mut p = LieElement::identity(sl3());
        p.set(1, 2, r!(1));
        assert_eq!(adjoint_element(&p, &e(2, 0)).unwrap(), e(1, 0).add(&e(2, 0)));
        // p = I - E12 sends E31 to E31 + E32
        let mut q = LieElement::identity(sl3());
        q.set(0, 1, r!(-1));
        assert_eq!(adjoint_element(&q, &e(2, 0)).unwrap(), e(2, 0).add(&e(2, 1)));
    }
}
