//! Exact dense linear algebra over the rationals: row reduction, rank,
//! null spaces, and linear solves. Everything here is fraction-free in
//! spirit but simply uses `BigRational` arithmetic; the systems involved
//! (ansatz fits, stratum rank checks) are small.

use num::rational::BigRational;
use num::traits::{One, Zero};

pub type Mat = Vec<Vec<BigRational>>;

fn rat0() -> BigRational {
    BigRational::zero()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        // find pivot
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in c..cols {
            let v = &m[r][j] * &inv;
            m[r][j] = v;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let v = &m[i][j] - &(&f * &m[r][j]);
                    m[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Mat) -> usize {
    let mut work = m.clone();
    rref(&mut work).len()
}

/// Basis of the right null space of `m` (columns = unknowns).
pub fn null_space(m: &Mat) -> Vec<Vec<BigRational>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut work = m.clone();
    let pivots = rref(&mut work);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![rat0(); cols];
        v[free] = BigRational::one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -work[row][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b`; returns one solution (free variables set to zero) or
/// `None` when the system is inconsistent.
pub fn solve(a: &Mat, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // inconsistent if a pivot lands in the rhs column
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![rat0(); cols];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[row][cols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn solve_2x2() {
        let a = vec![vec![r(2), r(1)], vec![r(1), r(-1)]];
        let b = vec![r(5), r(1)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(x, vec![r(2), r(1)]);
    }

    #[test]
    fn inconsistent() {
        let a = vec![vec![r(1), r(1)], vec![r(2), r(2)]];
        let b = vec![r(1), r(3)];
        assert!(solve(&a, &b).is_none());
    }

    #[test]
    fn null_space_dim() {
        // x + y + z = 0 has a 2-dimensional null space
        let a = vec![vec![r(1), r(1), r(1)]];
        let ns = null_space(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            let s: BigRational = v.iter().cloned().sum();
            assert!(s.is_zero());
        }
        assert_eq!(rank(&a), 1);
    }
}
