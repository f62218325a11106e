//! Adjoint action `Ad_p X = p X p⁻¹` with exact structured inverses.
//!
//! Only unipotent matrices, block-diagonal matrices with constant invertible
//! blocks, and block-triangular products of the two are inverted.

use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::lie::{FlagContext, LieElement, PolyMatrix};

/// Neumann series `Σ (-N)^k` for `p = I + N` with `N` nilpotent.
fn unipotent_inverse(p: &PolyMatrix) -> Option<PolyMatrix> {
    let n = p.size();
    let vars = p.vars();
    let id = PolyMatrix::identity(n, &vars);
    let nil = p.sub(&id).ok()?;
    nil.nilpotency_index()?;
    let neg = nil.scale(&MultiPoly::constant(&vars, -Rational::one()));
    let mut out = id.clone();
    let mut power = id;
    for _ in 1..n {
        power = power.mul(&neg).ok()?;
        if power.is_zero() {
            break;
        }
        out = out.add(&power).ok()?;
    }
    Some(out)
}

/// Gauss-Jordan inverse of a small rational matrix.
fn rational_inverse(n: usize, m: &[Rational]) -> Option<Vec<Rational>> {
    let w = 2 * n;
    let mut a: Vec<Rational> = Vec::with_capacity(n * w);
    for i in 0..n {
        a.extend_from_slice(&m[i * n..(i + 1) * n]);
        for j in 0..n {
            a.push(if i == j { Rational::one() } else { Rational::zero() });
        }
    }
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r * w + col].is_zero())?;
        if pivot != col {
            for j in 0..w {
                a.swap(pivot * w + j, col * w + j);
            }
        }
        let inv = a[col * w + col].recip();
        for j in 0..w {
            a[col * w + j] = &a[col * w + j] * &inv;
        }
        for r in 0..n {
            if r == col || a[r * w + col].is_zero() {
                continue;
            }
            let f = a[r * w + col].clone();
            for j in 0..w {
                let v = &a[col * w + j] * &f;
                a[r * w + j] -= &v;
            }
        }
    }
    Some((0..n).flat_map(|i| a[i * w + n..(i + 1) * w].to_vec()).collect())
}

/// Inverse of the block-diagonal part of `p`, if every diagonal block is constant and invertible.
fn block_diagonal_inverse(p: &PolyMatrix, ctx: &FlagContext) -> Option<PolyMatrix> {
    let n = ctx.n();
    let vars = p.vars();
    let mut out = PolyMatrix::zero(n, &vars);
    for range in ctx.block_ranges() {
        let b = range.len();
        let mut block = Vec::with_capacity(b * b);
        for i in range.clone() {
            for j in range.clone() {
                block.push(p.get(i, j).constant_value()?);
            }
        }
        let inv = rational_inverse(b, &block)?;
        for (bi, i) in range.clone().enumerate() {
            for (bj, j) in range.clone().enumerate() {
                out.set(i, j, MultiPoly::constant(&vars, inv[bi * b + bj].clone()));
            }
        }
    }
    Some(out)
}

/// Exact inverse of `p` when it is unipotent, or block-triangular for `ctx`
/// with constant invertible diagonal blocks (`p = l·u`, `p⁻¹ = u⁻¹ l⁻¹`).
pub fn structured_inverse(p: &PolyMatrix, ctx: &FlagContext) -> Result<PolyMatrix> {
    if p.size() != ctx.n() {
        return Err(Error::SizeMismatch(p.size(), ctx.n()));
    }
    if let Some(inv) = unipotent_inverse(p) {
        return Ok(inv);
    }
    let n = ctx.n();
    let upper = (0..n).all(|i| (0..n).all(|j| !ctx.is_below_block(i, j) || p.get(i, j).is_zero()));
    let lower = (0..n).all(|i| (0..n).all(|j| !ctx.is_above_block(i, j) || p.get(i, j).is_zero()));
    if !(upper || lower) {
        return Err(Error::NotInvertible);
    }
    let l_inv = block_diagonal_inverse(p, ctx).ok_or(Error::NotInvertible)?;
    let u = l_inv.mul(p)?;
    let u_inv = unipotent_inverse(&u).ok_or(Error::NotInvertible)?;
    u_inv.mul(&l_inv)
}

/// `Ad_p X = p X p⁻¹`.
pub fn adjoint(p: &PolyMatrix, x: &PolyMatrix, ctx: &FlagContext) -> Result<PolyMatrix> {
    let inv = structured_inverse(p, ctx)?;
    p.mul(x)?.mul(&inv)
}

/// [`adjoint`] for rational arguments.
pub fn adjoint_element(p: &LieElement, x: &LieElement) -> Result<LieElement> {
    let none: [&str; 0] = [];
    let out = adjoint(&p.to_poly(&none), &x.to_poly(&none), p.context())?;
    Ok(LieElement::from_poly(x.context().clone(), &out).expect("constant entries"))
}
