//! Exponentials of nilpotent matrices as exact polynomial matrices.

use crate::algebra::{MultiPoly, Rational};
use crate::error::{Error, Result};
use crate::lie::{FlagContext, LieElement, PolyMatrix};

/// Least `k` with `X^k = 0`.
pub fn nilpotency_index(x: &LieElement) -> Result<usize> {
    x.to_poly(&[] as &[&str]).nilpotency_index().ok_or(Error::NotNilpotent)
}

/// `Σ_j scalar^j X^j / j!` for nilpotent `X`; with `scalar = t` this is `exp(tX)`.
pub fn exp_nilpotent(x: &LieElement, scalar: &MultiPoly) -> Result<PolyMatrix> {
    exp_nilpotent_matrix(&x.to_poly(scalar.vars()), scalar)
}

/// Same as [`exp_nilpotent`] for a matrix with polynomial entries.
pub fn exp_nilpotent_matrix(x: &PolyMatrix, scalar: &MultiPoly) -> Result<PolyMatrix> {
    let k = x.nilpotency_index().ok_or(Error::NotNilpotent)?;
    let n = x.size();
    let vars = scalar.vars();
    let mut out = PolyMatrix::identity(n, vars);
    let mut power = PolyMatrix::identity(n, vars);
    let mut s_pow = MultiPoly::one(vars);
    for j in 1..k {
        power = power.mul(x)?;
        s_pow = &s_pow * scalar;
        let coeff = s_pow.scale(&Rational::inv_factorial(j as u32));
        out = out.add(&power.scale(&coeff))?;
    }
    Ok(out)
}

/// `(t+1)^{n-1} · exp(-(t/(t+1)) Y)` as a polynomial matrix, i.e.
/// `Σ_{j<n} (-1)^j t^j (t+1)^{n-1-j} Y^j / j!`.
///
/// `Y` must vanish outside the nilradical positions of `ctx`; its entries may
/// be unknowns or rationals. The clearing power is always `n - 1`.
pub fn exp_mobius_cleared(y: &PolyMatrix, ctx: &FlagContext, t: &str) -> Result<PolyMatrix> {
    let n = ctx.n();
    if y.size() != n {
        return Err(Error::SizeMismatch(y.size(), n));
    }
    for i in 0..n {
        for j in 0..n {
            if !ctx.is_below_block(i, j) && !y.get(i, j).is_zero() {
                return Err(Error::NotInNilradical);
            }
        }
    }
    let mut vars = y.vars();
    if !vars.iter().any(|v| v == t) {
        vars.push(t.to_string());
    }
    let tp = MultiPoly::var(&vars, t);
    let tp1 = &tp + &MultiPoly::one(&vars);
    let mut out = PolyMatrix::zero(n, &vars);
    let mut power = PolyMatrix::identity(n, &vars);
    for j in 0..n {
        if j > 0 {
            power = power.mul(y)?;
            if power.is_zero() {
                break;
            }
        }
        let sign = if j % 2 == 0 { Rational::one() } else { -Rational::one() };
        let coeff = (&tp.pow(j as u32) * &tp1.pow((n - 1 - j) as u32)).scale(&(&sign * &Rational::inv_factorial(j as u32)));
        out = out.add(&power.scale(&coeff))?;
    }
    Ok(out)
}

/// Entries at nilradical positions (row-major). Membership of `M` in `P`
/// is equivalent to all of them vanishing.
pub fn below_block_entries(m: &PolyMatrix, ctx: &FlagContext) -> Vec<MultiPoly> {
    ctx.below_block().into_iter().map(|(i, j)| m.get(i, j).clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    fn ctx3() -> FlagContext {
        FlagContext::borel(3)
    }

    fn p(s: &str, vars: &[&str]) -> MultiPoly {
        MultiPoly::parse(s, vars).unwrap()
    }

    fn pm(n: usize, cells: &[&str], vars: &[&str]) -> PolyMatrix {
        PolyMatrix::from_entries(n, cells.iter().map(|c| p(c, vars)).collect())
    }

    #[test]
    fn nilpotency_indices() {
        assert_eq!(nilpotency_index(&LieElement::unit(ctx3(), 1, 0)).unwrap(), 2);
        let x = LieElement::from_ints(ctx3(), &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]).unwrap();
        assert_eq!(nilpotency_index(&x).unwrap(), 3);
        let rot = LieElement::from_ints(ctx3(), &[&[0, -1, 0], &[1, 0, 0], &[0, 0, 0]]).unwrap();
        assert_eq!(nilpotency_index(&rot), Err(Error::NotNilpotent));
        assert_eq!(nilpotency_index(&LieElement::zero(ctx3())).unwrap(), 1);
    }

    #[test]
    fn exponential_of_lower_triangular() {
        let x = LieElement::from_ints(ctx3(), &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0]]).unwrap();
        let t = MultiPoly::var(&["t"], "t");
        let e = exp_nilpotent(&x, &t).unwrap();
        let expected = pm(3, &["1", "0", "0", "t", "1", "0", "t + 1/2*t^2", "t", "1"], &["t"]);
        assert_eq!(e, expected);
    }

    #[test]
    fn exponential_of_zero_and_square_zero() {
        let t = MultiPoly::var(&["t"], "t");
        assert!(exp_nilpotent(&LieElement::zero(ctx3()), &t).unwrap().is_identity());
        let e = exp_nilpotent(&LieElement::unit(ctx3(), 1, 0), &t).unwrap();
        assert_eq!(e, pm(3, &["1", "0", "0", "t", "1", "0", "0", "0", "1"], &["t"]));
    }

    #[test]
    fn cleared_mobius_sl3() {
        let vars = ["u", "v", "w", "t"];
        let y = pm(3, &["0", "0", "0", "u", "0", "0", "v", "w", "0"], &vars);
        let m = exp_mobius_cleared(&y, &ctx3(), "t").unwrap();
        let expected = pm(
            3,
            &[
                "(t+1)^2",
                "0",
                "0",
                "-t*(t+1)*u",
                "(t+1)^2",
                "0",
                "-t*(t+1)*v + 1/2*t^2*u*w",
                "-t*(t+1)*w",
                "(t+1)^2",
            ],
            &vars,
        );
        assert_eq!(m, expected);
    }

    #[test]
    fn cleared_mobius_trivial_cases() {
        let vars = ["u", "t"];
        let y = pm(2, &["0", "0", "u", "0"], &vars);
        let m = exp_mobius_cleared(&y, &FlagContext::borel(2), "t").unwrap();
        assert_eq!(m, pm(2, &["t + 1", "0", "-t*u", "t + 1"], &vars));

        let zero = PolyMatrix::zero(3, &["t"]);
        let m = exp_mobius_cleared(&zero, &ctx3(), "t").unwrap();
        let tp1sq = p("(t+1)^2", &["t"]);
        assert_eq!(m, PolyMatrix::identity(3, &["t"]).scale(&tp1sq));
    }

    #[test]
    fn cleared_mobius_rejects_upper_entries() {
        let y = pm(2, &["0", "1", "0", "0"], &["t"]);
        assert_eq!(exp_mobius_cleared(&y, &FlagContext::borel(2), "t"), Err(Error::NotInNilradical));
    }

    #[test]
    fn below_block_selection() {
        let id = PolyMatrix::identity(3, &["t"]);
        let ctx = FlagContext::new(vec![2, 1]).unwrap();
        let e = below_block_entries(&id, &ctx);
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(MultiPoly::is_zero));
        let upper = pm(3, &["1", "t", "2", "0", "1", "t^2", "0", "0", "1"], &["t"]);
        assert!(below_block_entries(&upper, &ctx3()).iter().all(MultiPoly::is_zero));
    }

    #[test]
    fn mobius_matches_nilpotent_exponential_at_samples() {
        let y = LieElement::from_ints(ctx3(), &[&[0, 0, 0], &[2, 0, 0], &[-1, 3, 0]]).unwrap();
        let cleared = exp_mobius_cleared(&y.to_poly(&["t"]), &ctx3(), "t").unwrap();
        for t0 in [r!(1), r!(2), r!(-1, 2)] {
            let vals = [("t".to_string(), t0.clone())].into();
            let lhs = cleared.evaluate(&vals);
            let s = MultiPoly::constant(&["t"], -(&t0 / &(&t0 + &r!(1))));
            let factor = MultiPoly::constant(&["t"], (&t0 + &r!(1)).pow(2));
            let rhs = exp_nilpotent(&y, &s).unwrap().scale(&factor);
            assert_eq!(lhs, rhs, "t0 = {t0}");
        }
    }
}
