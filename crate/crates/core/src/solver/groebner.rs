//! Buchberger's algorithm over the rationals.
//!
//! Polynomials are converted into a dense-exponent, order-sorted
//! representation for the duration of the computation. Pair selection uses
//! the normal strategy (smallest lcm degree first, ties broken by the monomial
//! order and then by generator indices) with the product and chain criteria.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{MultiPoly, Rational};
use crate::solver::Budget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    Grevlex,
    /// Pure lexicographic, first variable largest.
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Grevlex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| {
                    for (x, y) in a.iter().zip(b).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Grevlex => write!(f, "grevlex"),
            MonomialOrder::Lex => write!(f, "lex"),
        }
    }
}

/// Reduced, monic Gröbner basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub variables: Vec<String>,
    pub generators: Vec<MultiPoly>,
}

impl GroebnerBasis {
    /// `true` iff the basis is `{1}`: the ideal is the whole ring, so the
    /// system has no solution over any extension field.
    pub fn is_inconsistent(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].constant_value().is_some_and(|c| c.is_one())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.generators.iter().map(ToString::to_string).collect()
    }
}

/// Reduction budget ran out; `partial` holds the generators found so far.
#[derive(Debug, Clone)]
pub struct BudgetExhausted {
    pub partial: Vec<MultiPoly>,
}

type Mono = Vec<u32>;

#[derive(Clone, Debug)]
struct IPoly {
    // sorted by the active order, largest first
    terms: Vec<(Mono, Rational)>,
}

impl IPoly {
    fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, v) in self.terms.iter_mut() {
                    *v = &*v * &inv;
                }
            }
        }
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

fn quotient(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

struct Ctx {
    order: MonomialOrder,
}

impl Ctx {
    fn import(&self, p: &MultiPoly, vars: &[String]) -> IPoly {
        let p = p.with_vars(vars).expect("polynomial outside the ring");
        let mut terms: Vec<(Mono, Rational)> = p.terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| self.order.cmp(&b.0, &a.0));
        IPoly { terms }
    }

    fn to_poly(&self, p: &IPoly, vars: &[String]) -> MultiPoly {
        MultiPoly::from_terms(vars, p.terms.iter().cloned())
    }

    /// `a - c·m·b`, skipping the leading terms of both when `drop_leads`.
    fn sub_mul(&self, a: &[(Mono, Rational)], c: &Rational, m: &[u32], b: &[(Mono, Rational)]) -> Vec<(Mono, Rational)> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &(Mono, Rational)| -> (Mono, Rational) { (t.0.iter().zip(m).map(|(x, y)| x + y).collect(), -(&t.1 * c)) };
        while i < a.len() || j < b.len() {
            if j == b.len() {
                out.push(a[i].clone());
                i += 1;
                continue;
            }
            let bt = shifted(&b[j]);
            if i == a.len() {
                out.push(bt);
                j += 1;
                continue;
            }
            match self.order.cmp(&a[i].0, &bt.0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bt);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a[i].1 + &bt.1;
                    if !s.is_zero() {
                        out.push((bt.0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Full normal form of `p` modulo monic `basis`.
    fn reduce(&self, p: IPoly, basis: &[IPoly], budget: &mut Budget) -> Result<IPoly, ()> {
        let mut rem: Vec<(Mono, Rational)> = Vec::new();
        let mut cur = p.terms;
        while !cur.is_empty() {
            let (lm, lc) = cur[0].clone();
            match basis.iter().find(|g| divides(g.lm(), &lm)) {
                Some(g) => {
                    budget.consume(1).map_err(|_| ())?;
                    if too_wide(&lc) {
                        return Err(());
                    }
                    let m = quotient(&lm, g.lm());
                    cur = self.sub_mul(&cur[1..], &lc, &m, &g.terms[1..]);
                }
                None => {
                    rem.push((lm, lc));
                    cur.remove(0);
                }
            }
        }
        Ok(IPoly { terms: rem })
    }

    fn s_poly(&self, f: &IPoly, g: &IPoly) -> IPoly {
        let l = lcm(f.lm(), g.lm());
        let mf = quotient(&l, f.lm());
        let mg = quotient(&l, g.lm());
        // both monic: S = mf·f - mg·g
        let scaled_f: Vec<(Mono, Rational)> = f.terms[1..]
            .iter()
            .map(|(e, c)| (e.iter().zip(&mf).map(|(x, y)| x + y).collect(), c.clone()))
            .collect();
        IPoly {
            terms: self.sub_mul(&scaled_f, &Rational::one(), &mg, &g.terms[1..]),
        }
    }
}

/// Coefficients wider than this abort the computation as out of budget;
/// rational arithmetic cost grows faster than any per-step charge.
const MAX_COEFF_BITS: u64 = 2048;

fn too_wide(c: &Rational) -> bool {
    c.numer().bits() + c.denom().bits() > MAX_COEFF_BITS
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    deg: u32,
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `Q[vars]`.
pub fn buchberger(
    gens: &[MultiPoly],
    vars: &[String],
    order: MonomialOrder,
    budget: &mut Budget,
) -> Result<GroebnerBasis, BudgetExhausted> {
    let ctx = Ctx { order };
    let mut basis: Vec<IPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let exhausted = |basis: &[IPoly]| BudgetExhausted {
        partial: basis.iter().map(|g| ctx.to_poly(g, vars)).collect(),
    };

    // Inter-reduce the input first so the pair queue starts small.
    let mut input: Vec<IPoly> = gens.iter().map(|g| ctx.import(g, vars)).filter(|g| !g.is_zero()).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let unit = |vars: &[String]| GroebnerBasis {
        order,
        variables: vars.to_vec(),
        generators: vec![MultiPoly::one(vars)],
    };

    let add = |basis: &mut Vec<IPoly>, pairs: &mut Vec<Pair>, mut g: IPoly| {
        g.make_monic();
        let k = basis.len();
        for (i, b) in basis.iter().enumerate() {
            let l = lcm(b.lm(), g.lm());
            pairs.push(Pair {
                i,
                j: k,
                deg: l.iter().sum(),
                lcm: l,
            });
        }
        basis.push(g);
    };

    for g in input {
        let r = ctx.reduce(g, &basis, budget).map_err(|_| exhausted(&basis))?;
        if r.is_zero() {
            continue;
        }
        if r.lm().iter().all(|&e| e == 0) {
            return Ok(unit(vars));
        }
        add(&mut basis, &mut pairs, r);
    }

    let mut done: std::collections::HashSet<(usize, usize)> = std::collections::HashSet::new();
    while !pairs.is_empty() {
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.deg
                    .cmp(&b.deg)
                    .then_with(|| order.cmp(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        done.insert((pair.i, pair.j));
        let (f, g) = (&basis[pair.i], &basis[pair.j]);
        if coprime(f.lm(), g.lm()) {
            continue;
        }
        // chain criterion
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && divides(basis[k].lm(), &pair.lcm)
                && done.contains(&(pair.i.min(k), pair.i.max(k)))
                && done.contains(&(pair.j.min(k), pair.j.max(k)))
        });
        if chain {
            continue;
        }
        let s = ctx.s_poly(f, g);
        let r = ctx.reduce(s, &basis, budget).map_err(|_| exhausted(&basis))?;
        if r.is_zero() {
            continue;
        }
        if r.lm().iter().all(|&e| e == 0) {
            return Ok(unit(vars));
        }
        add(&mut basis, &mut pairs, r);
    }

    // minimise
    let mut keep: Vec<IPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(m, h)| m != k && divides(h.lm(), g.lm()) && (h.lm() != g.lm() || m < k));
        if !redundant {
            keep.push(g.clone());
        }
    }
    // inter-reduce tails
    let mut reduced: Vec<IPoly> = Vec::with_capacity(keep.len());
    for k in 0..keep.len() {
        let others: Vec<IPoly> = keep.iter().enumerate().filter(|(m, _)| *m != k).map(|(_, g)| g.clone()).collect();
        let head = keep[k].terms[0].clone();
        let tail = IPoly {
            terms: keep[k].terms[1..].to_vec(),
        };
        let tail = ctx.reduce(tail, &others, budget).map_err(|_| exhausted(&keep))?;
        let mut terms = vec![head];
        terms.extend(tail.terms);
        let mut g = IPoly { terms };
        g.make_monic();
        reduced.push(g);
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(GroebnerBasis {
        order,
        variables: vars.to_vec(),
        generators: reduced.iter().map(|g| ctx.to_poly(g, vars)).collect(),
    })
}

/// Normal form of `p` modulo a reduced basis.
pub fn normal_form(p: &MultiPoly, gb: &GroebnerBasis) -> MultiPoly {
    let ctx = Ctx { order: gb.order };
    let basis: Vec<IPoly> = gb.generators.iter().map(|g| ctx.import(g, &gb.variables)).collect();
    let mut budget = Budget::unlimited();
    let r = ctx
        .reduce(ctx.import(p, &gb.variables), &basis, &mut budget)
        .expect("unlimited budget");
    ctx.to_poly(&r, &gb.variables)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn polys(src: &[&str], vars: &[&str]) -> Vec<MultiPoly> {
        src.iter().map(|s| MultiPoly::parse(s, vars).unwrap()).collect()
    }

    fn vs(vars: &[&str]) -> Vec<String> {
        vars.iter().map(|v| v.to_string()).collect()
    }

    #[test]
    fn unit_ideal() {
        let g = buchberger(
            &polys(&["x", "x - 1"], &["x"]),
            &vs(&["x"]),
            MonomialOrder::Grevlex,
            &mut Budget::default(),
        )
        .unwrap();
        assert!(g.is_inconsistent());
    }

    #[test]
    fn sl2_criterion_ideal() {
        let vars = ["u", "a"];
        let g = buchberger(
            &polys(&["1 - u", "1 - u*a"], &vars),
            &vs(&vars),
            MonomialOrder::Lex,
            &mut Budget::default(),
        )
        .unwrap();
        assert_eq!(g.generators, polys(&["u - 1", "a - 1"], &vars));
        assert!(!g.is_inconsistent());
    }

    #[test]
    fn zero_ideal() {
        let g = buchberger(&[], &vs(&["x"]), MonomialOrder::Grevlex, &mut Budget::default()).unwrap();
        assert!(g.generators.is_empty());
        let g = buchberger(&polys(&["0"], &["x"]), &vs(&["x"]), MonomialOrder::Grevlex, &mut Budget::default()).unwrap();
        assert!(g.generators.is_empty());
    }

    #[test]
    fn textbook_example() {
        // Cox–Little–O'Shea: <x^3 - 2xy, x^2 y - 2y^2 + x> in grlex has reduced basis {x^2, xy, y^2 - x/2}
        let vars = ["x", "y"];
        let g = buchberger(
            &polys(&["x^3 - 2*x*y", "x^2*y - 2*y^2 + x"], &vars),
            &vs(&vars),
            MonomialOrder::Grevlex,
            &mut Budget::default(),
        )
        .unwrap();
        let mut got = g.to_strings();
        got.sort();
        assert_eq!(got, vec!["x*y", "x^2", "y^2 - 1/2*x"]);
    }

    #[test]
    fn budget_exhaustion_reports_partial() {
        let vars = ["x", "y", "z"];
        let gens = polys(&["x^2 + y*z - 1", "y^2 - x*z + 2", "z^3 - x*y"], &vars);
        let err = buchberger(&gens, &vs(&vars), MonomialOrder::Lex, &mut Budget::new(3)).unwrap_err();
        assert!(!err.partial.is_empty());
    }

    #[test]
    fn grevlex_order() {
        let o = MonomialOrder::Grevlex;
        // x*z^2 < y^3 in grevlex (x > y > z): last-variable exponent decides
        assert_eq!(o.cmp(&[1, 0, 2], &[0, 3, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
    }

    #[test]
    fn normal_form_membership() {
        let vars = ["u", "a"];
        let g = buchberger(
            &polys(&["1 - u", "1 - u*a"], &vars),
            &vs(&vars),
            MonomialOrder::Grevlex,
            &mut Budget::default(),
        )
        .unwrap();
        let member = MultiPoly::parse("u*a^2 - a", &vars).unwrap();
        assert!(normal_form(&member, &g).is_zero());
    }
}
