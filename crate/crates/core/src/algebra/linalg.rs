//! Row reduction over the rationals.

use crate::algebra::Rational;

/// Reduced row echelon form in place; returns the pivot columns.
fn rref(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for v in m[row].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..m[r].len() {
                let d = &m[row][c] * &f;
                m[r][c] -= &d;
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = rows.to_vec();
    rref(&mut m, cols).len()
}

/// Some `c` with `Σ c_j · columns[j] = target`; free coordinates are zero.
pub fn solve(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let k = columns.len();
    let mut m: Vec<Vec<Rational>> = (0..target.len())
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut m, k + 1);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut out = vec![Rational::zero(); k];
    for (row, &col) in pivots.iter().enumerate() {
        out[col] = m[row][k].clone();
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::r;

    #[test]
    fn ranks() {
        assert_eq!(rank(&[vec![r!(1), r!(2)], vec![r!(2), r!(4)]]), 1);
        assert_eq!(rank(&[vec![r!(1), r!(0)], vec![r!(0), r!(3)]]), 2);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn solves() {
        let cols = vec![vec![r!(1), r!(0), r!(1)], vec![r!(0), r!(1), r!(1)]];
        assert_eq!(solve(&cols, &[r!(2), r!(3), r!(5)]).unwrap(), vec![r!(2), r!(3)]);
        assert!(solve(&cols, &[r!(2), r!(3), r!(4)]).is_none());
        let dependent = vec![vec![r!(1), r!(1)], vec![r!(2), r!(2)]];
        assert_eq!(solve(&dependent, &[r!(3), r!(3)]).unwrap(), vec![r!(3), r!(0)]);
    }
}
