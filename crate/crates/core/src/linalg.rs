//! Exact linear algebra over the rationals.
//!
//! Matrices are dense row lists; a matrix with `m` rows and `n` columns maps
//! column vectors of length `n` to length `m`. Ranks use fraction-free
//! (Bareiss) elimination on integer rows; kernels and solutions use
//! Gauss-Jordan over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut [Vec<Q>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Each row scaled by the lcm of its denominators.
fn integer_rows(m: &[Vec<Q>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank by Bareiss elimination; every intermediate division is exact.
pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a = integer_rows(m);
    let ncols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            for k in c + 1..ncols {
                let v = &a[r][c] * &a[i][k] - &a[i][c] * &a[r][k];
                a[i][k] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Rank through the rational echelon form, kept as a cross-check.
pub fn rank_rational(m: &[Vec<Q>]) -> usize {
    let mut rows = m.to_vec();
    rref(&mut rows).len()
}

/// Basis of `{v : m v = 0}`.
pub fn kernel(m: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rows[i][f].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `sum_j x_j columns[j] = rhs`, if one exists.
pub fn solve(columns: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = columns.len();
    let m = rhs.len();
    let mut rows: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|c| c[i].clone()).collect();
            row.push(rhs[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut rows);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![Q::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = rows[i][n].clone();
    }
    Some(x)
}

pub fn apply(m: &[Vec<Q>], v: &[Q]) -> Vec<Q> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(Q::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&mat(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&mat(&[&[0, 1], &[1, 0]])), 2);
        assert_eq!(rank(&mat(&[])), 0);
        assert_eq!(rank(&mat(&[&[2, 3, 5], &[4, 6, 10], &[1, 0, 1]])), 2);
    }

    #[test]
    fn bareiss_matches_rational() {
        let m = mat(&[&[0, 2, 4, 1], &[3, 1, 0, 0], &[3, 5, 8, 2], &[6, 2, 0, 0]]);
        assert_eq!(rank(&m), rank_rational(&m));
        let half = vec![vec![Q::new(1.into(), 2.into()), q(1)], vec![q(1), q(2)]];
        assert_eq!(rank(&half), 1);
        assert_eq!(rank_rational(&half), 1);
    }

    #[test]
    fn kernel_is_annihilated() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 1]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert!(apply(&m, &k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn solving() {
        let cols = mat(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = solve(&cols, &[q(2), q(3), q(5)]).unwrap();
        assert_eq!(x, vec![q(2), q(3)]);
        assert!(solve(&cols, &[q(1), q(1), q(1)]).is_none());
    }
}
