use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::elim::{rank_of_rows, rref_in_place};
use super::mat::{axpy, Mat};
use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::fields::{Elem, GaloisField};

/// A subspace of `K^ambient` carried by its RREF basis, which makes equality
/// and hashing structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubspaceBasis {
    ambient: usize,
    basis: Mat,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            basis: Mat::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SubspaceBasis {
            ambient,
            basis: Mat::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the rows of `m`.
    pub fn from_mat(f: &GaloisField, m: &Mat) -> Self {
        let mut r = m.clone();
        let pivots = rref_in_place(f, &mut r);
        let basis = r.submatrix_rows(0..pivots.len());
        SubspaceBasis {
            ambient: m.cols(),
            basis,
            pivots,
        }
    }

    /// Span of the given vectors.
    pub fn span(f: &GaloisField, ambient: usize, vecs: &[Vec<Elem>]) -> Self {
        Self::from_mat(f, &Mat::from_rows(ambient, vecs))
    }

    /// Wraps a matrix already known to be in RREF with full row rank.
    pub(crate) fn from_rref_unchecked(basis: Mat, pivots: Vec<usize>) -> Self {
        SubspaceBasis {
            ambient: basis.cols(),
            basis,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> Vec<Vec<Elem>> {
        self.basis.row_vecs()
    }

    /// Residue of `v` after eliminating the pivot coordinates.
    fn reduce(&self, f: &GaloisField, v: &[Elem]) -> Vec<Elem> {
        let mut r = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = r[p];
            if c != 0 {
                axpy(f, &mut r, f.neg(c), self.basis.row(i));
            }
        }
        r
    }

    pub fn contains(&self, f: &GaloisField, v: &[Elem]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Coordinates of `v` in the RREF basis.
    pub fn coordinates(&self, f: &GaloisField, v: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(f, v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p]).collect())
    }

    pub fn is_subspace_of(&self, f: &GaloisField, other: &SubspaceBasis) -> bool {
        self.ambient == other.ambient
            && (0..self.dim()).all(|i| other.contains(f, self.basis.row(i)))
    }

    pub fn sum(&self, f: &GaloisField, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut vecs = self.vectors();
        vecs.extend(other.vectors());
        Ok(SubspaceBasis::span(f, self.ambient, &vecs))
    }

    /// Intersection by the Zassenhaus algorithm: row-reduce `[a | a]` stacked
    /// on `[b | 0]`; rows with vanishing left half span `A ∩ B`.
    pub fn intersect(&self, f: &GaloisField, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        let n = self.ambient;
        let mut m = Mat::zeros(0, 2 * n);
        for a in self.vectors() {
            let mut row = a.clone();
            row.extend_from_slice(&a);
            m.push_row(&row);
        }
        for b in other.vectors() {
            let mut row = b;
            row.extend(std::iter::repeat_n(0, n));
            m.push_row(&row);
        }
        let pivots = rref_in_place(f, &mut m);
        let rows: Vec<Vec<Elem>> = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(i, _)| m.row(i)[n..].to_vec())
            .collect();
        Ok(SubspaceBasis::span(f, n, &rows))
    }

    /// `dim(self ∩ span(extra))` without materializing the intersection.
    pub fn meet_dim(&self, f: &GaloisField, extra: &[Vec<Elem>]) -> usize {
        let mut rows = self.vectors();
        rows.extend_from_slice(extra);
        let other = rank_of_rows(f, self.ambient, extra);
        self.dim() + other - rank_of_rows(f, self.ambient, &rows)
    }
}

/// Gaussian binomial coefficient with the conventions
/// `0` for `s < 0`, `t < 0` or `t > s`, and `1` for `t = 0 <= s`.
pub fn qbinom(s: i64, t: i64, q: u64) -> BigUint {
    assert!(q >= 2, "qbinom needs Q >= 2");
    if s < 0 || t < 0 || t > s {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=t {
        num *= big_pow(q, (s - i + 1) as usize) - 1u32;
        den *= big_pow(q, i as usize) - 1u32;
    }
    debug_assert!((&num % &den).is_zero());
    num / den
}

/// `θ_s = (Q^(s+1) - 1)/(Q - 1)`, the number of points of `PG(s, Q)`;
/// `θ_(-1) = 0`.
pub fn theta(s: i64, q: u64) -> BigUint {
    if s < 0 {
        return BigUint::zero();
    }
    (big_pow(q, (s + 1) as usize) - 1u32) / BigUint::from(q - 1)
}

/// Streams every `d`-dimensional subspace of `K^ambient` exactly once.
///
/// Representatives are RREF bases, visited by pivot pattern (lexicographic)
/// and then by the free entries in odometer order; no deduplication is needed.
pub fn enumerate_subspaces<'a>(
    f: &'a GaloisField,
    ambient: usize,
    d: usize,
    budget: &Budget,
) -> Result<SubspaceIter<'a>> {
    let count = qbinom(ambient as i64, d as i64, u64::from(f.order()));
    budget.check_subspaces("subspace enumeration", &count)?;
    Ok(SubspaceIter::new(f, ambient, d))
}

pub struct SubspaceIter<'a> {
    f: &'a GaloisField,
    ambient: usize,
    d: usize,
    pivots: Option<Vec<usize>>,
    free: Vec<(usize, usize)>,
    digits: Vec<Elem>,
}

impl<'a> SubspaceIter<'a> {
    fn new(f: &'a GaloisField, ambient: usize, d: usize) -> Self {
        let pivots = (d <= ambient).then(|| (0..d).collect::<Vec<_>>());
        let mut it = SubspaceIter {
            f,
            ambient,
            d,
            pivots,
            free: Vec::new(),
            digits: Vec::new(),
        };
        it.reset_free();
        it
    }

    fn reset_free(&mut self) {
        self.free.clear();
        if let Some(piv) = &self.pivots {
            for (row, &p) in piv.iter().enumerate() {
                for c in p + 1..self.ambient {
                    if !piv.contains(&c) {
                        self.free.push((row, c));
                    }
                }
            }
        }
        self.digits = vec![0; self.free.len()];
    }

    fn next_pivots(&mut self) {
        let Some(piv) = self.pivots.as_mut() else {
            return;
        };
        let (n, d) = (self.ambient, self.d);
        let mut i = d;
        loop {
            if i == 0 {
                self.pivots = None;
                return;
            }
            i -= 1;
            if piv[i] < n - d + i {
                piv[i] += 1;
                for j in i + 1..d {
                    piv[j] = piv[j - 1] + 1;
                }
                break;
            }
        }
        self.reset_free();
    }

    /// Advances the free-entry odometer; false when it wrapped around.
    fn bump_digits(&mut self) -> bool {
        let q = self.f.order();
        for dgt in self.digits.iter_mut() {
            *dgt += 1;
            if *dgt < q {
                return true;
            }
            *dgt = 0;
        }
        false
    }
}

impl Iterator for SubspaceIter<'_> {
    type Item = SubspaceBasis;

    fn next(&mut self) -> Option<SubspaceBasis> {
        let piv = self.pivots.clone()?;
        let mut m = Mat::zeros(self.d, self.ambient);
        for (row, &p) in piv.iter().enumerate() {
            m.set(row, p, 1);
        }
        for (&(row, c), &v) in self.free.iter().zip(&self.digits) {
            m.set(row, c, v);
        }
        if !self.bump_digits() {
            self.next_pivots();
        }
        Some(SubspaceBasis::from_rref_unchecked(m, piv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fqlinalg::kernel;
    use std::collections::HashSet;

    /// Every vector of `F_q^n`, as an oracle for small exhaustive checks.
    fn all_vectors(q: u32, n: usize) -> Vec<Vec<Elem>> {
        let total = (q as usize).pow(n as u32);
        (0..total)
            .map(|mut x| {
                (0..n)
                    .map(|_| {
                        let d = (x % q as usize) as Elem;
                        x /= q as usize;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn qbinom_values() {
        assert_eq!(qbinom(2, 1, 2), BigUint::from(3u32));
        assert_eq!(qbinom(3, 5, 7), BigUint::zero());
        assert_eq!(qbinom(4, 2, 2), BigUint::from(35u32));
        assert_eq!(qbinom(0, 0, 5), BigUint::one());
        assert_eq!(qbinom(-1, 0, 2), BigUint::zero());
        assert_eq!(theta(1, 16), BigUint::from(17u32));
        assert_eq!(theta(-1, 2), BigUint::zero());
    }

    #[test]
    fn qbinom_counts_two_dim_subspaces_of_f2_4() {
        // Oracle: distinct spans of all ordered pairs of independent vectors.
        let f2 = GaloisField::prime(2);
        let vecs = all_vectors(2, 4);
        let mut seen = HashSet::new();
        for a in &vecs {
            for b in &vecs {
                let s = SubspaceBasis::span(&f2, 4, &[a.clone(), b.clone()]);
                if s.dim() == 2 {
                    seen.insert(s);
                }
            }
        }
        assert_eq!(seen.len(), 35);
    }

    #[test]
    fn enumeration_counts_match_qbinom() {
        let budget = Budget::default();
        for q in [2u32, 3] {
            let f = GaloisField::prime(q);
            for m in 0..=5usize {
                for d in 0..=m {
                    let subs: Vec<_> = enumerate_subspaces(&f, m, d, &budget).unwrap().collect();
                    let distinct: HashSet<_> = subs.iter().cloned().collect();
                    assert_eq!(distinct.len(), subs.len());
                    assert_eq!(
                        BigUint::from(subs.len()),
                        qbinom(m as i64, d as i64, u64::from(q)),
                        "m={m} d={d} q={q}"
                    );
                    for s in &subs {
                        assert_eq!(s.dim(), d);
                        assert_eq!(SubspaceBasis::from_mat(&f, s.basis()), *s);
                    }
                }
            }
        }
    }

    #[test]
    fn enumeration_over_f4() {
        let t = crate::fields::make_tower(2, 1, 2, 1).unwrap();
        let budget = Budget::default();
        let lines: Vec<_> = enumerate_subspaces(t.mid(), 2, 1, &budget).unwrap().collect();
        assert_eq!(lines.len(), 5);
        for m in 0..=5usize {
            for d in 0..=m {
                let n = enumerate_subspaces(t.mid(), m, d, &budget).unwrap().count();
                assert_eq!(BigUint::from(n), qbinom(m as i64, d as i64, 4));
            }
        }
    }

    #[test]
    fn enumeration_respects_budget() {
        let f2 = GaloisField::prime(2);
        let tight = Budget {
            codewords: 10,
            subspaces: 10,
        };
        assert!(enumerate_subspaces(&f2, 4, 2, &tight).is_err());
    }

    #[test]
    fn intersection_examples() {
        let f2 = GaloisField::prime(2);
        let a = SubspaceBasis::span(&f2, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
        let b = SubspaceBasis::span(&f2, 4, &[vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
        assert_eq!(a.intersect(&f2, &a).unwrap(), a);
        assert_eq!(a.intersect(&f2, &b).unwrap().dim(), 0);
        let c = SubspaceBasis::zero(3);
        assert!(matches!(
            a.intersect(&f2, &c),
            Err(Error::AmbientMismatch(4, 3))
        ));
    }

    #[test]
    fn intersection_matches_membership_oracle() {
        let f2 = GaloisField::prime(2);
        let vecs = all_vectors(2, 5);
        let mut seed = 99u64;
        let mut pick = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            vecs[(seed >> 40) as usize % vecs.len()].clone()
        };
        for _ in 0..50 {
            let a = SubspaceBasis::span(&f2, 5, &[pick(), pick(), pick()]);
            let b = SubspaceBasis::span(&f2, 5, &[pick(), pick(), pick()]);
            let i = a.intersect(&f2, &b).unwrap();
            let members = vecs
                .iter()
                .filter(|v| a.contains(&f2, v) && b.contains(&f2, v))
                .count();
            assert_eq!(members, 1 << i.dim());
            let s = a.sum(&f2, &b).unwrap();
            assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        }
    }

    #[test]
    fn kernel_examples() {
        let f2 = GaloisField::prime(2);
        assert_eq!(kernel(&f2, &Mat::identity(3)).dim(), 0);
        assert_eq!(kernel(&f2, &Mat::zeros(2, 3)), SubspaceBasis::full(3));
        let m = Mat::from_rows(3, &[vec![1, 0, 1]]);
        let k = kernel(&f2, &m);
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&f2, &[1, 0, 1]));
        let solutions: Vec<_> = all_vectors(2, 3)
            .into_iter()
            .filter(|v| m.mul_vec(&f2, v) == vec![0])
            .collect();
        assert_eq!(solutions.len(), 4);
        assert!(solutions.iter().all(|v| k.contains(&f2, v)));
    }

    #[test]
    fn kernel_and_rank_match_exhaustive_oracle() {
        // All 2x3 matrices over F_2, and a sample of 3x4.
        let f2 = GaloisField::prime(2);
        for (rows, cols, step) in [(2usize, 3usize, 1usize), (3, 4, 7)] {
            let entries = rows * cols;
            for code in (0..(1usize << entries)).step_by(step) {
                let data = (0..entries).map(|b| ((code >> b) & 1) as Elem).collect();
                let m = Mat::from_vec(rows, cols, data);
                let sols: Vec<_> = all_vectors(2, cols)
                    .into_iter()
                    .filter(|v| m.mul_vec(&f2, v).iter().all(|&x| x == 0))
                    .collect();
                let k = kernel(&f2, &m);
                assert_eq!(sols.len(), 1 << k.dim());
                assert!(sols.iter().all(|v| k.contains(&f2, v)));
                assert_eq!(k.dim(), cols - crate::fqlinalg::rank(&f2, &m));
            }
        }
    }
}
