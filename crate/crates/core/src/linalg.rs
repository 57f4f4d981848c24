//! Dense linear algebra over a finite field.
#![allow(clippy::needless_range_loop)]

use alloc::vec;
use alloc::vec::Vec;

use crate::ffield::{Elem, Field};

pub fn determinant(f: &Field, mut m: Vec<Vec<Elem>>) -> Elem {
    let n = m.len();
    let mut det = f.one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !f.is_zero(m[r][col])) else {
            return f.zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = f.neg(det);
        }
        det = f.mul(det, m[col][col]);
        let inv = f.inv(m[col][col]).expect("nonzero pivot");
        for r in col + 1..n {
            let factor = f.mul(m[r][col], inv);
            if f.is_zero(factor) {
                continue;
            }
            for c in col..n {
                m[r][c] = f.sub(m[r][c], f.mul(factor, m[col][c]));
            }
        }
    }
    det
}

/// Solve `A x = b`; returns one solution (free variables set to zero) or
/// `None` when the system is inconsistent.
pub fn solve(f: &Field, a: &[Vec<Elem>], b: &[Elem]) -> Option<Vec<Elem>> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Elem>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| {
            let mut r = row.clone();
            r.push(rhs);
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(m[i][c])) else {
            continue;
        };
        m.swap(piv, r);
        let inv = f.inv(m[r][c]).expect("nonzero pivot");
        for k in c..=cols {
            m[r][k] = f.mul(m[r][k], inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(m[i][c]) {
                let factor = m[i][c];
                for k in c..=cols {
                    m[i][k] = f.sub(m[i][k], f.mul(factor, m[r][k]));
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !f.is_zero(row[cols])) {
        return None;
    }
    let mut x = vec![f.zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][cols];
    }
    Some(x)
}

/// Rank of a matrix.
pub fn rank(f: &Field, a: &[Vec<Elem>]) -> usize {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !f.is_zero(m[i][c])) else {
            continue;
        };
        m.swap(piv, r);
        let inv = f.inv(m[r][c]).expect("nonzero pivot");
        for i in r + 1..rows {
            let factor = f.mul(m[i][c], inv);
            for k in c..cols {
                m[i][k] = f.sub(m[i][k], f.mul(factor, m[r][k]));
            }
        }
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: &Field, rows: &[&[i64]]) -> Vec<Vec<Elem>> {
        rows.iter().map(|r| r.iter().map(|&v| f.from_i64(v)).collect()).collect()
    }

    #[test]
    fn determinant_mod_7() {
        let f = Field::new(7, 1).unwrap();
        let m = mat(&f, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        // exact determinant is -3
        assert_eq!(determinant(&f, m), f.from_i64(-3));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let f = Field::new(5, 1).unwrap();
        let a = mat(&f, &[&[1, 1], &[1, 2], &[2, 3]]);
        let x = solve(&f, &a, &[f.from_i64(3), f.from_i64(4), f.from_i64(7)]).unwrap();
        assert_eq!(x, vec![f.from_i64(2), f.from_i64(1)]);
        assert!(solve(&f, &a, &[f.from_i64(3), f.from_i64(4), f.from_i64(0)]).is_none());
        assert_eq!(rank(&f, &a), 2);
    }
}
