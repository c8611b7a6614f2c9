use super::mat::axpy;
use crate::fields::{Elem, GaloisField};

/// Visits every vector `sum c_j basis[j]` with coefficients `c_j` ranging over
/// the first `coeff_count` element encodings (the subfield `F_q` when
/// `coeff_count = q`). Vectors arrive in odometer order of the coefficients,
/// starting with zero; each step costs one `axpy`. Stops early when `visit`
/// returns false, and reports whether the scan completed.
pub fn visit_span(
    f: &GaloisField,
    coeff_count: u32,
    basis: &[Vec<Elem>],
    len: usize,
    mut visit: impl FnMut(&[Elem], &[Elem]) -> bool,
) -> bool {
    let k = basis.len();
    // deltas[j][c] = (next(c) - c) * b_j, with next(q-1) = 0.
    let deltas: Vec<Vec<Vec<Elem>>> = basis
        .iter()
        .map(|b| {
            (0..coeff_count)
                .map(|c| {
                    let next = if c + 1 == coeff_count { 0 } else { c + 1 };
                    let d = f.sub(next, c);
                    b.iter().map(|&x| f.mul(d, x)).collect()
                })
                .collect()
        })
        .collect();
    let mut coeffs = vec![0 as Elem; k];
    let mut cur = vec![0 as Elem; len];
    loop {
        if !visit(&cur, &coeffs) {
            return false;
        }
        let mut j = 0;
        loop {
            if j == k {
                return true;
            }
            let c = coeffs[j];
            axpy(f, &mut cur, 1, &deltas[j][c as usize]);
            if c + 1 == coeff_count {
                coeffs[j] = 0;
                j += 1;
            } else {
                coeffs[j] = c + 1;
                break;
            }
        }
    }
}

/// Scales `v` so that its first nonzero entry is 1. Returns false for zero.
pub fn normalize_projective(f: &GaloisField, v: &mut [Elem]) -> bool {
    let Some(&lead) = v.iter().find(|&&x| x != 0) else {
        return false;
    };
    if lead != 1 {
        let inv = f.inv(lead);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_tower;
    use std::collections::HashSet;

    #[test]
    fn visits_every_combination_once() {
        let t = make_tower(3, 1, 2, 1).unwrap();
        let f = t.mid();
        let basis = vec![vec![1, 0], vec![3, 1]];
        let mut seen = HashSet::new();
        let done = visit_span(f, 3, &basis, 2, |v, c| {
            let expect: Vec<Elem> = (0..2)
                .map(|i| f.add(f.mul(c[0], basis[0][i]), f.mul(c[1], basis[1][i])))
                .collect();
            assert_eq!(v, &expect[..]);
            seen.insert(v.to_vec());
            true
        });
        assert!(done);
        assert_eq!(seen.len(), 9);
    }

    #[test]
    fn early_exit() {
        let f2 = GaloisField::prime(2);
        let mut count = 0;
        let done = visit_span(&f2, 2, &[vec![1], vec![1]], 1, |_, _| {
            count += 1;
            count < 3
        });
        assert!(!done);
        assert_eq!(count, 3);
    }

    #[test]
    fn normalization() {
        let t = make_tower(2, 1, 2, 1).unwrap();
        let mut v = vec![0, 2, 3];
        assert!(normalize_projective(t.mid(), &mut v));
        assert_eq!(v[1], 1);
        assert!(!normalize_projective(t.mid(), &mut [0, 0]));
    }
}
