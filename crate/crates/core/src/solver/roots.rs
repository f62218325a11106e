use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Rational;

/// Largest integer whose divisors we enumerate by trial division.
const FACTOR_LIMIT: u64 = 100_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > FACTOR_LIMIT {
        return None;
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut k = 0;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            primes.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut out = vec![1u64];
    for (p, k) in primes {
        let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
        for d in &out {
            let mut pk = 1u64;
            for _ in 0..=k {
                next.push(d * pk);
                pk *= p;
            }
        }
        out = next;
    }
    out.sort_unstable();
    Some(out)
}

/// All distinct rational roots of `Σ coeffs[k] x^k`, in ascending order.
///
/// The list is complete when the extreme coefficients are small enough to
/// enumerate divisors; otherwise it holds the roots recovered from numerical
/// approximations, each confirmed exactly. Returns `None` for the zero
/// polynomial.
pub fn rational_roots(coeffs: &[Rational]) -> Option<Vec<Rational>> {
    let mut c = coeffs.to_vec();
    while c.last().is_some_and(Rational::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        return None;
    }
    let mut roots = Vec::new();
    let low = c.iter().position(|x| !x.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rational::zero());
        c.drain(..low);
    }
    if c.len() > 1 {
        let den = Rational::common_denominator(&c);
        let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let ints: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
        let eval = |r: &Rational| -> bool {
            let mut acc = Rational::zero();
            for a in ints.iter().rev() {
                acc = &(&acc * r) + &Rational::from(a.clone());
            }
            acc.is_zero()
        };
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(ints.last().unwrap())) else {
            roots.extend(approximate_candidates(&c).into_iter().filter(|r| eval(r)));
            roots.sort();
            roots.dedup();
            return Some(roots);
        };
        for q in &qs {
            for p in &ps {
                if BigInt::from(*p).gcd(&BigInt::from(*q)) != BigInt::one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let r = Rational::new(BigInt::from(*p) * sign, BigInt::from(*q));
                    if eval(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}

/// Continued-fraction convergents of `x` with denominators up to `10⁹`.
fn convergents(x: f64) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if !a.is_finite() || a.abs() > 1e15 {
            break;
        }
        let ai = BigInt::from(a as i64);
        (h0, h1) = (h1.clone(), &ai * &h1 + h0);
        (k0, k1) = (k1.clone(), &ai * &k1 + k0);
        if k1 > BigInt::from(1_000_000_000u64) {
            break;
        }
        out.push(Rational::new(h1.clone(), k1.clone()));
        let frac = y - a;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Candidate rationals near the real roots of `Σ c[k] x^k` (Durand-Kerner in
/// floating point). Candidates are unverified.
fn approximate_candidates(c: &[Rational]) -> Vec<Rational> {
    let n = c.len() - 1;
    let lead = c[n].clone();
    // monic, with coefficients as f64 (huge ratios saturate harmlessly)
    let a: Vec<f64> = c.iter().map(|x| (x / &lead).to_f64().unwrap_or(0.0)).collect();
    if a.iter().any(|v| !v.is_finite()) {
        return Vec::new();
    }
    let eval = |z: Complex64| a.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &k| acc * z + k);
    let radius = 1.0 + a[..n].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let den: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product();
            if den.norm() == 0.0 {
                continue;
            }
            let step = eval(z[i]) / den;
            if step.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm());
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z.iter()
        .filter(|r| r.im.abs() <= 1e-6 * (1.0 + r.re.abs()))
        .flat_map(|r| convergents(r.re))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    #[test]
    fn finds_rational_roots() {
        // (2x - 1)(x + 3)x = 2x^3 + 5x^2 - 3x
        let roots = rational_roots(&[r!(0), r!(-3), r!(5), r!(2)]).unwrap();
        assert_eq!(roots, vec![r!(-3), r!(0), r!(1, 2)]);
    }

    #[test]
    fn irrational_roots_are_skipped() {
        assert_eq!(rational_roots(&[r!(-2), r!(0), r!(1)]).unwrap(), vec![]);
    }

    #[test]
    fn rational_coefficients_and_repeated_roots() {
        // (x - 2/3)^2 = x^2 - 4/3 x + 4/9
        let roots = rational_roots(&[r!(4, 9), r!(-4, 3), r!(1)]).unwrap();
        assert_eq!(roots, vec![r!(2, 3)]);
    }

    #[test]
    fn huge_coefficients_fall_back_to_approximation() {
        // (x - 5/3)(x + 7/4)(x^2 - 2) scaled by a large prime power
        let big = Rational::from_int(BigInt::from(1_000_000_007u64).pow(3));
        let base = [r!(35, 6), r!(-1, 6), r!(-59, 12), r!(1, 12), r!(1)];
        let coeffs: Vec<Rational> = base.iter().map(|c| c * &big).collect();
        assert_eq!(rational_roots(&coeffs).unwrap(), vec![r!(-7, 4), r!(5, 3)]);
    }

    #[test]
    fn constants() {
        assert_eq!(rational_roots(&[r!(5)]).unwrap(), vec![]);
        assert!(rational_roots(&[r!(0)]).is_none());
    }
}
