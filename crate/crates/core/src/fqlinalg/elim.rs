use super::mat::{axpy, Mat};
use crate::fields::{Elem, GaloisField};

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Pivots are normalized to 1, pivot columns are zero elsewhere, and zero rows
/// end up at the bottom.
pub fn rref_in_place(f: &GaloisField, m: &mut Mat) -> Vec<usize> {
    let (rows, cols) = m.shape();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m.get(i, c) != 0) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = f.inv(m.get(r, c));
        if inv != 1 {
            for v in m.row_mut(r) {
                *v = f.mul(*v, inv);
            }
        }
        let pivot_row = m.row(r).to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.get(i, c);
            if factor != 0 {
                axpy(f, m.row_mut(i), f.neg(factor), &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// RREF of `m` together with its rank.
pub fn rref(f: &GaloisField, m: &Mat) -> (Mat, usize) {
    let mut out = m.clone();
    let pivots = rref_in_place(f, &mut out);
    (out, pivots.len())
}

pub fn rank(f: &GaloisField, m: &Mat) -> usize {
    if f.is_f2() && m.cols() <= 64 {
        let mut rows: Vec<u64> = (0..m.rows()).map(|i| pack_f2(m.row(i))).collect();
        return rank_f2(&mut rows);
    }
    rref(f, m).1
}

/// Rank of vectors given as rows.
pub fn rank_of_rows(f: &GaloisField, cols: usize, rows: &[Vec<Elem>]) -> usize {
    if f.is_f2() && cols <= 64 {
        let mut packed: Vec<u64> = rows.iter().map(|r| pack_f2(r)).collect();
        return rank_f2(&mut packed);
    }
    rank(f, &Mat::from_rows(cols, rows))
}

#[inline]
pub fn pack_f2(row: &[Elem]) -> u64 {
    row.iter()
        .enumerate()
        .fold(0u64, |acc, (j, &b)| acc | (u64::from(b & 1) << j))
}

/// Rank over `F_2` of bit-packed rows (destroys the input).
pub fn rank_f2(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for r in rows[i + 1..].iter_mut() {
            if *r & low != 0 {
                *r ^= pivot;
            }
        }
    }
    rank
}

/// Inverse of a square matrix, `None` when singular.
pub fn inverse(f: &GaloisField, m: &Mat) -> Option<Mat> {
    let n = m.rows();
    assert_eq!(n, m.cols(), "inverse of a non-square matrix");
    let mut aug = Mat::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, n + i, 1);
    }
    let pivots = rref_in_place(f, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, aug.get(i, n + j));
        }
    }
    Some(inv)
}

/// Coefficients `c` with `sum c_i vecs[i] = target`, if any.
pub fn solve_combination(
    f: &GaloisField,
    vecs: &[Vec<Elem>],
    target: &[Elem],
) -> Option<Vec<Elem>> {
    let len = target.len();
    let k = vecs.len();
    // Columns are the vectors, last column the target.
    let mut a = Mat::zeros(len, k + 1);
    for (j, v) in vecs.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            a.set(i, j, x);
        }
    }
    for (i, &x) in target.iter().enumerate() {
        a.set(i, k, x);
    }
    let pivots = rref_in_place(f, &mut a);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut c = vec![0; k];
    for (r, &p) in pivots.iter().enumerate() {
        c[p] = a.get(r, k);
    }
    Some(c)
}

/// Monic minimal polynomial of a square matrix, low degree first, from the
/// first linear dependency among `I, A, A^2, ...`.
pub fn matrix_minimal_polynomial(f: &GaloisField, a: &Mat) -> Vec<Elem> {
    let mut powers: Vec<Vec<Elem>> = Vec::new();
    let mut cur = Mat::identity(a.rows());
    loop {
        if let Some(c) = solve_combination(f, &powers, cur.data()) {
            let mut poly: Vec<Elem> = c.iter().map(|&x| f.neg(x)).collect();
            poly.push(1);
            return poly;
        }
        powers.push(cur.data().to_vec());
        cur = cur.mul(f, a);
    }
}
