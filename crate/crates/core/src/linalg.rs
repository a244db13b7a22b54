//! Dense linear algebra over the rationals.

use num_traits::{One, Zero};

use crate::rational::Q;

/// Row-major dense matrix.
pub type Matrix = Vec<Vec<Q>>;

/// Reduced row echelon form of `m` with `ncols` columns. Returns the nonzero rows and their pivot columns.
pub fn rref(m: &[Vec<Q>], ncols: usize) -> (Matrix, Vec<usize>) {
    let mut a: Matrix = m.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = Q::one() / &a[row][col];
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col].clone();
                for (x, y) in other.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == a.len() {
            break;
        }
    }
    a.truncate(row);
    (a, pivots)
}

pub fn rank(m: &[Vec<Q>], ncols: usize) -> usize {
    rref(m, ncols).1.len()
}

/// Basis of the null space `{x : m x = 0}`.
pub fn kernel(m: &[Vec<Q>], ncols: usize) -> Matrix {
    let (r, pivots) = rref(m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &p) in r.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Reduces `v` against rows already in reduced echelon form; the result is zero iff `v` lies in their span.
pub fn reduce(rows: &[Vec<Q>], pivots: &[usize], v: &[Q]) -> Vec<Q> {
    let mut v = v.to_vec();
    for (row, &p) in rows.iter().zip(pivots) {
        if !v[p].is_zero() {
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    v
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn mat_vec(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Solves the square system `a x = b`; `None` if `a` is singular.
pub fn solve(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (r, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.contains(&n) {
        return None;
    }
    Some(r.iter().map(|row| row[n].clone()).collect())
}

pub fn transpose(m: &[Vec<Q>], ncols: usize) -> Matrix {
    (0..ncols)
        .map(|c| m.iter().map(|row| row[c].clone()).collect())
        .collect()
}
