//! Exact linear algebra over the rationals.
//!
//! Two independent elimination routes are provided: reduced row echelon form
//! over `BigRational`, and fraction-free (Bareiss) elimination over machine
//! integers for the hot loops of the exhaustive sweeps. The integer route
//! falls back to the rational one if an intermediate would overflow.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Matrix = Vec<Vec<BigRational>>;

pub fn from_integers<T: Copy + Into<i64>>(rows: &[Vec<T>]) -> Matrix {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigRational::from_integer(BigInt::from(v.into()))).collect())
        .collect()
}

/// Reduces `m` in place to reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
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
        let inv = m[r][c].recip();
        for v in m[r][c..].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let factor = m[i][c].clone();
            let (top, bottom) = m.split_at_mut(i.max(r));
            let (pivot_row, row) = if i < r { (&bottom[0], &mut top[i]) } else { (&top[r], &mut bottom[0]) };
            for (v, pv) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *v -= &factor * pv;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &Matrix) -> usize {
    rref(&mut m.clone()).len()
}

/// A basis of `{ x : m x = 0 }`, one vector per free column.
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<BigRational>> {
    let mut r = m.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); cols];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Some `x` with `m x = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut aug: Matrix = m
        .iter()
        .zip(b)
        .map(|(row, v)| row.iter().cloned().chain(std::iter::once(v.clone())).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols].clone();
    }
    Some(x)
}

pub fn mat_vec(m: &Matrix, x: &[BigRational]) -> Vec<BigRational> {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Rank of an integer matrix stored row-major, by fraction-free elimination.
///
/// Every intermediate entry is a minor of the input, so the divisions are
/// exact. On overflow the computation is redone over the rationals.
pub fn integer_rank(entries: &[i64], rows: usize, cols: usize) -> usize {
    assert_eq!(entries.len(), rows * cols);
    let mut a: Vec<i128> = entries.iter().map(|&v| v as i128).collect();
    bareiss_rank(&mut a, rows, cols).unwrap_or_else(|| {
        let m: Vec<Vec<i64>> = entries.chunks(cols.max(1)).map(<[i64]>::to_vec).collect();
        rank(&from_integers(&m))
    })
}

fn bareiss_rank(a: &mut [i128], rows: usize, cols: usize) -> Option<usize> {
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for k in 0..cols {
                a.swap(p * cols + k, r * cols + k);
            }
        }
        let pivot = a[r * cols + c];
        for i in r + 1..rows {
            let lead = a[i * cols + c];
            for k in c..cols {
                let v = pivot
                    .checked_mul(a[i * cols + k])?
                    .checked_sub(lead.checked_mul(a[r * cols + k])?)?;
                a[i * cols + k] = v / prev;
            }
        }
        prev = pivot;
        r += 1;
    }
    Some(r)
}

pub fn is_zero_vector(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}
