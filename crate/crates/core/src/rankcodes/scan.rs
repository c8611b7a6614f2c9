use rayon::prelude::*;

use crate::fields::{Elem, GaloisField};
use crate::fqlinalg::{axpy, pack_f2, rank_f2, rref_in_place, Mat};

/// Leading basis vectors whose coefficients index the parallel chunks.
const CHUNK_BITS: usize = 6;

/// Counts codewords of each rank over all `q^K` combinations of `basis`
/// (row-major `m × n` flattenings). Work is split by the coefficients of the
/// last few basis vectors; per-chunk histograms are summed, so the result
/// does not depend on scheduling.
pub(super) fn rank_histogram(f: &GaloisField, m: usize, n: usize, basis: &[Vec<Elem>]) -> Vec<u64> {
    let width = m.min(n) + 1;
    if f.is_f2() && n <= 64 {
        return histogram_f2(m, n, basis, width);
    }
    let q = f.order();
    let k = basis.len();
    let mut split = 0;
    let mut chunks = 1u64;
    while split < k && chunks < (1 << CHUNK_BITS) {
        split += 1;
        chunks *= u64::from(q);
    }
    let (inner, outer) = basis.split_at(k - split);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut start = vec![0; m * n];
            let mut x = c;
            for b in outer {
                let coef = (x % u64::from(q)) as Elem;
                x /= u64::from(q);
                axpy(f, &mut start, coef, b);
            }
            let mut hist = vec![0u64; width];
            let mut scratch = Mat::zeros(m, n);
            odometer(f, inner, start, |v| {
                scratch = Mat::from_vec(m, n, v.to_vec());
                hist[rref_in_place(f, &mut scratch).len()] += 1;
            });
            hist
        })
        .reduce(|| vec![0u64; width], add_hist)
}

fn add_hist(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// Visits `start + sum c_j basis[j]` for all coefficient tuples.
fn odometer(f: &GaloisField, basis: &[Vec<Elem>], start: Vec<Elem>, mut visit: impl FnMut(&[Elem])) {
    let q = f.order();
    let deltas: Vec<Vec<Vec<Elem>>> = basis
        .iter()
        .map(|b| {
            (0..q)
                .map(|c| {
                    let next = if c + 1 == q { 0 } else { c + 1 };
                    let d = f.sub(next, c);
                    b.iter().map(|&x| f.mul(d, x)).collect()
                })
                .collect()
        })
        .collect();
    let mut coeffs = vec![0 as Elem; basis.len()];
    let mut cur = start;
    loop {
        visit(&cur);
        let mut j = 0;
        loop {
            if j == basis.len() {
                return;
            }
            let c = coeffs[j];
            axpy(f, &mut cur, 1, &deltas[j][c as usize]);
            if c + 1 == q {
                coeffs[j] = 0;
                j += 1;
            } else {
                coeffs[j] = c + 1;
                break;
            }
        }
    }
}

/// `F_2` path: codewords are `m` packed row words, visited in Gray-code
/// order so each step is one xor of a basis matrix.
fn histogram_f2(m: usize, n: usize, basis: &[Vec<Elem>], width: usize) -> Vec<u64> {
    let packed: Vec<Vec<u64>> = basis
        .iter()
        .map(|b| (0..m).map(|i| pack_f2(&b[i * n..(i + 1) * n])).collect())
        .collect();
    let k = packed.len();
    let split = k.min(CHUNK_BITS);
    let (inner, outer) = packed.split_at(k - split);
    (0..1u64 << split)
        .into_par_iter()
        .map(|c| {
            let mut cur = vec![0u64; m];
            for (j, b) in outer.iter().enumerate() {
                if c >> j & 1 == 1 {
                    for (x, y) in cur.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            let mut hist = vec![0u64; width];
            let mut scratch = vec![0u64; m];
            let steps = 1u64 << inner.len();
            for i in 0..steps {
                if i > 0 {
                    let j = i.trailing_zeros() as usize;
                    for (x, y) in cur.iter_mut().zip(&inner[j]) {
                        *x ^= y;
                    }
                }
                scratch.copy_from_slice(&cur);
                hist[rank_f2(&mut scratch)] += 1;
            }
            hist
        })
        .reduce(|| vec![0u64; width], add_hist)
}
