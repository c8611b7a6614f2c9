//! `F_q`-linear rank-metric codes as subspaces of `F_q^(m×n)`.

mod formulas;
mod ideal;
mod scan;

pub use formulas::{dual_relations_check, macwilliams_check, macwilliams_holds, mrd_weight_distribution};
pub use ideal::{
    exclusion_verdict, inequivalence_certificate, Certificate, ExclusionVerdict, FieldCheck,
    Idealiser, InequivalenceReason, Side,
};

use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::fields::{make_tower, prime_factors, GaloisField};
use crate::fqlinalg::{kernel, rank, Mat, SubspaceBasis};

/// An `F_q`-subspace of `F_q^(m×n)`.
///
/// The basis is kept in canonical form (RREF of the row-major flattenings),
/// so two codes are equal exactly when their bases are. The rank
/// distribution is computed on first use and cached.
#[derive(Debug)]
pub struct RankCode {
    field: Arc<GaloisField>,
    m: usize,
    n: usize,
    span: SubspaceBasis,
    distribution: OnceLock<RankDistribution>,
}

impl Clone for RankCode {
    fn clone(&self) -> Self {
        let distribution = OnceLock::new();
        if let Some(d) = self.distribution.get() {
            let _ = distribution.set(d.clone());
        }
        RankCode {
            field: self.field.clone(),
            m: self.m,
            n: self.n,
            span: self.span.clone(),
            distribution,
        }
    }
}

impl PartialEq for RankCode {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && self.m == other.m && self.n == other.n && self.span == other.span
    }
}

impl Eq for RankCode {}

/// `A_i` = number of codewords of rank `i`, for `i = 0..=min(m, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankDistribution {
    pub m: usize,
    pub n: usize,
    pub q: u64,
    /// `F_q`-dimension of the code.
    pub dim: usize,
    #[serde(with = "crate::serial::big_vec")]
    pub a: Vec<BigUint>,
}

impl RankDistribution {
    /// Smallest nonzero rank that occurs, if any.
    pub fn min_distance(&self) -> Option<usize> {
        (1..self.a.len()).find(|&i| !self.a[i].is_zero())
    }

    pub fn total(&self) -> BigUint {
        self.a.iter().sum()
    }

    pub fn get(&self, i: usize) -> BigUint {
        self.a.get(i).cloned().unwrap_or_default()
    }

    pub fn as_u64(&self) -> Option<Vec<u64>> {
        self.a.iter().map(|x| x.to_u64()).collect()
    }
}

/// `F_q` for a prime power `q`, built as the base of the canonical tower.
pub fn base_field(q: u64) -> Result<Arc<GaloisField>> {
    if q < 2 {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
    }
    let ps = prime_factors(q);
    if ps.len() != 1 {
        return Err(Error::InvalidParams(format!("q = {q} is not a prime power")));
    }
    let p = ps[0];
    let mut e = 0;
    let mut x = q;
    while x > 1 {
        x /= p;
        e += 1;
    }
    Ok(make_tower(p, e, 1, 1)?.base().clone())
}

impl RankCode {
    /// The `F_q`-span of the given `m × n` matrices.
    pub fn new(field: Arc<GaloisField>, m: usize, n: usize, mats: &[Mat]) -> Result<Self> {
        let q = field.order();
        let mut rows = Vec::with_capacity(mats.len());
        for a in mats {
            if a.shape() != (m, n) {
                return Err(Error::ShapeMismatch(format!(
                    "{}x{} matrix in a {m}x{n} code",
                    a.rows(),
                    a.cols()
                )));
            }
            if a.data().iter().any(|&x| x >= q) {
                return Err(Error::Malformed(format!("matrix entry outside F_{q}")));
            }
            rows.push(a.data().to_vec());
        }
        let span = SubspaceBasis::span(&field, m * n, &rows);
        Ok(Self::from_span(field, m, n, span))
    }

    pub(crate) fn from_span(field: Arc<GaloisField>, m: usize, n: usize, span: SubspaceBasis) -> Self {
        RankCode {
            field,
            m,
            n,
            span,
            distribution: OnceLock::new(),
        }
    }

    pub fn zero(field: Arc<GaloisField>, m: usize, n: usize) -> Self {
        Self::from_span(field, m, n, SubspaceBasis::zero(m * n))
    }

    pub fn full(field: Arc<GaloisField>, m: usize, n: usize) -> Self {
        Self::from_span(field, m, n, SubspaceBasis::full(m * n))
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        u64::from(self.field.order())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `F_q`-dimension `K`, so `|C| = q^K`.
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn size(&self) -> BigUint {
        big_pow(self.q(), self.dim())
    }

    pub fn basis(&self) -> Vec<Mat> {
        self.span
            .vectors()
            .into_iter()
            .map(|v| Mat::from_vec(self.m, self.n, v))
            .collect()
    }

    pub fn span(&self) -> &SubspaceBasis {
        &self.span
    }

    pub fn contains(&self, a: &Mat) -> bool {
        a.shape() == (self.m, self.n) && self.span.contains(&self.field, a.data())
    }

    /// Rank distribution by enumerating all `q^K` codewords.
    pub fn rank_distribution(&self, budget: &Budget) -> Result<&RankDistribution> {
        if let Some(d) = self.distribution.get() {
            return Ok(d);
        }
        budget.check_codewords("codewords", &self.size())?;
        let counts = scan::rank_histogram(&self.field, self.m, self.n, &self.span.vectors());
        let d = RankDistribution {
            m: self.m,
            n: self.n,
            q: self.q(),
            dim: self.dim(),
            a: counts.into_iter().map(BigUint::from).collect(),
        };
        let _ = self.distribution.set(d);
        Ok(self.distribution.get().expect("just set"))
    }

    pub fn min_distance(&self, budget: &Budget) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::EmptyCode);
        }
        Ok(self
            .rank_distribution(budget)?
            .min_distance()
            .expect("a nonzero code has a nonzero codeword"))
    }

    /// Whether `K = max(m,n) (min(m,n) - d + 1)`.
    pub fn is_mrd(&self, budget: &Budget) -> Result<bool> {
        let d = self.min_distance(budget)?;
        Ok(self.dim() == self.m.max(self.n) * (self.m.min(self.n) + 1 - d))
    }

    /// `{C^t : C in C}`.
    pub fn adjoint(&self) -> RankCode {
        let mats: Vec<Mat> = self.basis().iter().map(Mat::transpose).collect();
        RankCode::new(self.field.clone(), self.n, self.m, &mats).expect("transposes have the swapped shape")
    }

    /// Orthogonal complement under `<M, N> = Tr(M N^t)`, which is the
    /// standard dot product of the flattenings.
    pub fn delsarte_dual(&self) -> RankCode {
        let dual = kernel(&self.field, self.span.basis());
        Self::from_span(self.field.clone(), self.m, self.n, dual)
    }

    /// `{A M : M in C}` for a square code and an `m' × n` matrix of rank
    /// `m' <= n`.
    pub fn puncture(&self, a: &Mat) -> Result<RankCode> {
        if self.m != self.n {
            return Err(Error::ShapeMismatch(format!(
                "puncturing needs a square code, got {}x{}",
                self.m, self.n
            )));
        }
        if a.cols() != self.m || a.rows() > self.n {
            return Err(Error::ShapeMismatch(format!(
                "puncturing matrix is {}x{}, need m'x{} with m' <= {}",
                a.rows(),
                a.cols(),
                self.m,
                self.n
            )));
        }
        let rk = rank(&self.field, a);
        if rk != a.rows() {
            return Err(Error::RankDeficientA {
                rank: rk,
                expected: a.rows(),
            });
        }
        let mats: Vec<Mat> = self.basis().iter().map(|c| a.mul(&self.field, c)).collect();
        RankCode::new(self.field.clone(), a.rows(), self.n, &mats)
    }

    /// Whether the two codes have the same `(q, m, n)`.
    pub fn same_shape(&self, other: &RankCode) -> bool {
        self.q() == other.q() && self.m == other.m && self.n == other.n
    }

    /// Equality as sets, checked by membership of each basis in the other.
    pub fn same_span(&self, other: &RankCode) -> bool {
        self.same_shape(other)
            && self.dim() == other.dim()
            && other.basis().iter().all(|b| self.contains(b))
            && self.basis().iter().all(|b| other.contains(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<GaloisField> {
        base_field(2).unwrap()
    }

    /// Oracle: rank distribution by listing every codeword explicitly.
    fn oracle_distribution(c: &RankCode) -> Vec<u64> {
        let f = c.field().clone();
        let basis = c.basis();
        let q = c.q();
        let total = q.pow(basis.len() as u32);
        let mut counts = vec![0u64; c.m().min(c.n()) + 1];
        for mut idx in 0..total {
            let mut acc = Mat::zeros(c.m(), c.n());
            for b in &basis {
                let coef = (idx % q) as u32;
                idx /= q;
                acc = acc.add(&f, &b.scale(&f, coef));
            }
            counts[crate::fqlinalg::rref(&f, &acc).1] += 1;
        }
        counts
    }

    #[test]
    fn full_space_2x2() {
        let b = Budget::default();
        let c = RankCode::full(f2(), 2, 2);
        let d = c.rank_distribution(&b).unwrap();
        assert_eq!(d.as_u64().unwrap(), vec![1, 9, 6]);
        assert_eq!(c.min_distance(&b).unwrap(), 1);
        assert!(c.is_mrd(&b).unwrap());
    }

    #[test]
    fn zero_code() {
        let b = Budget::default();
        let z = RankCode::zero(f2(), 3, 2);
        assert_eq!(z.rank_distribution(&b).unwrap().as_u64().unwrap(), vec![1, 0, 0]);
        assert_eq!(z.min_distance(&b), Err(Error::EmptyCode));
        assert_eq!(z.delsarte_dual(), RankCode::full(f2(), 3, 2));
    }

    #[test]
    fn single_invertible_matrix() {
        let b = Budget::default();
        let m = Mat::from_rows(3, &[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        let c = RankCode::new(f2(), 3, 3, &[m]).unwrap();
        assert_eq!(c.min_distance(&b).unwrap(), 3);
    }

    #[test]
    fn small_subcode_is_not_mrd() {
        let b = Budget::default();
        let e1 = Mat::from_rows(3, &[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
        let e2 = Mat::identity(3);
        let c = RankCode::new(f2(), 3, 3, &[e1, e2]).unwrap();
        assert_eq!(c.min_distance(&b).unwrap(), 1);
        assert!(!c.is_mrd(&b).unwrap());
    }

    #[test]
    fn scanner_matches_oracle() {
        let b = Budget::default();
        let f3 = base_field(3).unwrap();
        let mats = vec![
            Mat::from_rows(3, &[vec![1, 2, 0], vec![0, 1, 1]]),
            Mat::from_rows(3, &[vec![0, 1, 2], vec![2, 2, 0]]),
            Mat::from_rows(3, &[vec![1, 0, 0], vec![0, 0, 1]]),
        ];
        let c = RankCode::new(f3, 2, 3, &mats).unwrap();
        assert_eq!(c.rank_distribution(&b).unwrap().as_u64().unwrap(), oracle_distribution(&c));
        let f4 = base_field(4).unwrap();
        let c = RankCode::new(
            f4,
            2,
            2,
            &[Mat::from_rows(2, &[vec![1, 2], vec![3, 1]]), Mat::from_rows(2, &[vec![0, 2], vec![1, 0]])],
        )
        .unwrap();
        assert_eq!(c.rank_distribution(&b).unwrap().as_u64().unwrap(), oracle_distribution(&c));
    }

    #[test]
    fn budget_is_enforced() {
        let tight = Budget {
            codewords: 8,
            subspaces: 8,
        };
        let c = RankCode::full(f2(), 2, 2);
        assert!(c.rank_distribution(&tight).unwrap_err().is_budget());
    }

    #[test]
    fn adjoint_and_dual_are_involutions() {
        let f = f2();
        let mats = vec![
            Mat::from_rows(3, &[vec![1, 0, 1], vec![0, 1, 1]]),
            Mat::from_rows(3, &[vec![1, 1, 1], vec![1, 0, 0]]),
        ];
        let c = RankCode::new(f, 2, 3, &mats).unwrap();
        assert_eq!(c.adjoint().adjoint(), c);
        assert_eq!(c.delsarte_dual().delsarte_dual(), c);
        assert_eq!(c.delsarte_dual().dim(), 6 - 2);
        assert_eq!((c.adjoint().m(), c.adjoint().n()), (3, 2));
    }

    #[test]
    fn puncture_gates() {
        let f = f2();
        let c = RankCode::full(f.clone(), 3, 3);
        assert_eq!(c.puncture(&Mat::identity(3)).unwrap(), c);
        let a = Mat::from_rows(3, &[vec![1, 1, 0], vec![1, 1, 0]]);
        assert_eq!(
            c.puncture(&a),
            Err(Error::RankDeficientA {
                rank: 1,
                expected: 2
            })
        );
        assert!(matches!(
            c.puncture(&Mat::identity(2)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn base_fields() {
        assert_eq!(base_field(9).unwrap().order(), 9);
        assert!(base_field(6).is_err());
        assert!(base_field(1).is_err());
    }
}
