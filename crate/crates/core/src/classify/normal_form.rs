//! Normal forms of `X ∈ n` under `Ad L` for the Borel subgroup of `SL(3)`.
//!
//! Writing `(a, b, c) = (X₂₁, X₃₁, X₃₂)`, conjugation by `d = diag(d₁,d₂,d₃)`
//! scales `X_ij` by `dᵢ/dⱼ`. On the open stratum `ac ≠ 0` the ratio
//! `x = b/(ac)` is invariant.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::Rational;
use crate::error::{Error, Result};
use crate::lie::{adjoint_element, FlagContext, LieElement, MatrixJson};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormRow {
    pub row_id: u8,
    /// `x = b/(ac)` on the rows 3/7 family.
    pub parameter: Option<Rational>,
    /// Diagonal `d` with `Ad_d X` equal to [`Self::normal_form`].
    pub transform: LieElement,
    pub normal_form: LieElement,
}

#[derive(Serialize)]
struct NormalFormJson {
    row_id: u8,
    parameter: Option<Rational>,
    transform: MatrixJson,
    normal_form: MatrixJson,
}

impl NormalFormRow {
    pub fn to_json(&self) -> Value {
        json!(NormalFormJson {
            row_id: self.row_id,
            parameter: self.parameter.clone(),
            transform: MatrixJson::from(&self.transform),
            normal_form: MatrixJson::from(&self.normal_form),
        })
    }
}

/// The table's normal form for `row_id` (`parameter` is `x` for row 7).
pub fn row_normal_form(row_id: u8, parameter: Option<&Rational>) -> Result<LieElement> {
    let ctx = FlagContext::borel(3);
    let (a, b, c) = match row_id {
        1 => (1, 0, 0),
        2 => (0, 0, 1),
        3 => (1, 0, 1),
        4 => (1, 1, 0),
        5 => (0, 1, 1),
        6 => (0, 1, 0),
        7 => {
            let x = parameter.ok_or(Error::MissingBinding("x".into()))?;
            let mut m = LieElement::zero(ctx);
            m.set(1, 0, Rational::one());
            m.set(2, 0, x.clone());
            m.set(2, 1, Rational::one());
            return Ok(m);
        }
        _ => return Err(Error::MissingBinding(format!("row {row_id}"))),
    };
    let mut m = LieElement::zero(ctx);
    m.set(1, 0, Rational::from(a));
    m.set(2, 0, Rational::from(b));
    m.set(2, 1, Rational::from(c));
    Ok(m)
}

fn diag(d: [Rational; 3]) -> LieElement {
    let mut m = LieElement::zero(FlagContext::borel(3));
    for (i, v) in d.into_iter().enumerate() {
        m.set(i, i, v);
    }
    m
}

pub fn sl3_normal_form(x: &LieElement) -> Result<NormalFormRow> {
    if *x.context() != FlagContext::borel(3) {
        return Err(Error::NotSl3Borel);
    }
    if !x.in_nilradical() {
        return Err(Error::NotInNilradical);
    }
    let (a, b, c) = (x.get(1, 0).clone(), x.get(2, 0).clone(), x.get(2, 1).clone());
    let one = Rational::one;
    let (row_id, parameter, d) = match (a.is_zero(), b.is_zero(), c.is_zero()) {
        (false, _, false) => {
            let p = &b / &(&a * &c);
            let id = if p.is_zero() { 3 } else { 7 };
            (id, Some(p), [one(), a.recip(), (&a * &c).recip()])
        }
        (false, true, true) => (1, None, [one(), a.recip(), a.clone()]),
        (true, true, false) => (2, None, [c.clone(), one(), c.recip()]),
        (false, false, true) => (4, None, [one(), a.recip(), b.recip()]),
        (true, false, false) => (5, None, [b.clone(), c.clone(), one()]),
        (true, false, true) => (6, None, [b.clone(), b.recip(), one()]),
        (true, true, true) => return Err(Error::ConstantCurve),
    };
    let transform = diag(d);
    let normal_form = adjoint_element(&transform, x)?;
    debug_assert_eq!(normal_form, row_normal_form(row_id, parameter.as_ref())?);
    Ok(NormalFormRow {
        row_id,
        parameter: if row_id == 3 || row_id == 7 { parameter } else { None },
        transform,
        normal_form,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn abc(a: i64, b: i64, c: i64) -> LieElement {
        LieElement::from_ints(FlagContext::borel(3), &[&[0, 0, 0], &[a, 0, 0], &[b, c, 0]]).unwrap()
    }

    #[test]
    fn open_stratum_invariant() {
        let nf = sl3_normal_form(&abc(2, 3, 4)).unwrap();
        assert_eq!(nf.row_id, 7);
        assert_eq!(nf.parameter, Some(r!(3, 8)));
        assert_eq!(
            adjoint_element(&nf.transform, &abc(2, 3, 4)).unwrap(),
            row_normal_form(7, Some(&r!(3, 8))).unwrap()
        );
    }

    #[test]
    fn strata() {
        let cases = [
            ((1, 0, 0), 1),
            ((0, 0, 5), 2),
            ((2, 0, -3), 3),
            ((3, 7, 0), 4),
            ((0, -2, 5), 5),
            ((0, 1, 0), 6),
        ];
        for ((a, b, c), row) in cases {
            let x = abc(a, b, c);
            let nf = sl3_normal_form(&x).unwrap();
            assert_eq!(nf.row_id, row, "{a} {b} {c}");
            assert_eq!(nf.normal_form, row_normal_form(row, nf.parameter.as_ref()).unwrap());
            assert_eq!(adjoint_element(&nf.transform, &x).unwrap(), nf.normal_form);
        }
    }

    #[test]
    fn already_normal() {
        let nf = sl3_normal_form(&abc(1, 0, 0)).unwrap();
        assert_eq!(nf.row_id, 1);
        assert_eq!(nf.transform, LieElement::identity(FlagContext::borel(3)));
        for row in 1..=6 {
            let x = row_normal_form(row, None).unwrap();
            let nf = sl3_normal_form(&x).unwrap();
            assert_eq!(nf.row_id, row);
            assert_eq!(nf.transform, LieElement::identity(FlagContext::borel(3)));
        }
    }

    #[test]
    fn errors() {
        assert_eq!(sl3_normal_form(&abc(0, 0, 0)), Err(Error::ConstantCurve));
        let ctx = FlagContext::borel(2);
        assert_eq!(sl3_normal_form(&LieElement::unit(ctx, 1, 0)), Err(Error::NotSl3Borel));
        let up = LieElement::unit(FlagContext::borel(3), 0, 1);
        assert_eq!(sl3_normal_form(&up), Err(Error::NotInNilradical));
    }
}
