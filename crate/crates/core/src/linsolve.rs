//! Exact solution of integer linear systems over ℚ.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::leavitt::Rational;

/// Solves `A x = b` over ℚ. `columns[j]` is column `j` of `A`.
///
/// Elimination is fraction-free: rows are combined with integer multipliers
/// and divided by their content, so entries stay integral. Free variables
/// are set to zero, which makes the returned solution supported on pivot
/// columns only (earlier columns are preferred as pivots). Returns `None`
/// when the system is inconsistent.
pub fn solve(columns: &[Vec<BigInt>], b: &[BigInt]) -> Option<Vec<Rational>> {
    let rows = b.len();
    let cols = columns.len();
    for c in columns {
        assert_eq!(c.len(), rows, "column height must match the right-hand side");
    }
    // augmented row-major matrix [A | b]
    let width = cols + 1;
    let mut m: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let mut row: Vec<BigInt> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(b[i].clone());
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let g = m[r][c].gcd(&m[i][c]);
            let a = &m[r][c] / &g;
            let f = &m[i][c] / &g;
            for j in 0..width {
                let v = &m[i][j] * &a - &m[r][j] * &f;
                m[i][j] = v;
            }
            reduce_content(&mut m[i]);
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = Rational::new(m[i][cols].clone(), m[i][c].clone());
    }
    Some(x)
}

fn reduce_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && g.abs() != BigInt::from(1) {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leavitt::rational;

    fn col(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn unique_solution() {
        // 2x + y = 3, x - y = 0
        let x = solve(&[col(&[2, 1]), col(&[1, -1])], &col(&[3, 0])).unwrap();
        assert_eq!(x, vec![rational(1), rational(1)]);
        let x = solve(&[col(&[2, 0]), col(&[0, 4])], &col(&[1, 1])).unwrap();
        assert_eq!(x[0], Rational::new(1.into(), 2.into()));
        assert_eq!(x[1], Rational::new(1.into(), 4.into()));
    }

    #[test]
    fn free_variables_are_zero() {
        let x = solve(&[col(&[1, 1]), col(&[1, 0]), col(&[0, 1])], &col(&[1, 1])).unwrap();
        assert_eq!(x, vec![rational(1), rational(0), rational(0)]);
    }

    #[test]
    fn inconsistent() {
        assert!(solve(&[col(&[1, 1])], &col(&[1, 0])).is_none());
        assert!(solve(&[], &col(&[1])).is_none());
        assert_eq!(solve(&[], &col(&[0, 0])), Some(vec![]));
    }
}
