use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::RankCode;
use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::fields::Elem;
use crate::fqlinalg::{kernel, lin_comb, rank, visit_span, Mat};

/// Idealisers of order up to this bound are checked for being a field by
/// testing every nonzero element.
pub const EXHAUSTIVE_FIELD_CHECK_LIMIT: u64 = 1 << 16;
const FIELD_CHECK_SAMPLES: usize = 2000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// How the field flag of an idealiser was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldCheck {
    Exhaustive,
    /// Random elements were tested; a `true` flag is then only probable.
    Sampled,
}

/// `L(C) = {Y : Y C ⊆ C}` or `R(C) = {Z : C Z ⊆ C}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Idealiser {
    pub side: Side,
    pub size: usize,
    pub basis: Vec<Mat>,
    /// `F_q`-dimension `l`, so the order is `q^l`.
    pub dim: usize,
    pub is_field: bool,
    pub field_check: FieldCheck,
}

impl Idealiser {
    pub fn contains(&self, code: &RankCode, a: &Mat) -> bool {
        let f = code.field();
        let mats: Vec<Vec<Elem>> = self.basis.iter().map(|b| b.data().to_vec()).collect();
        let span = crate::fqlinalg::SubspaceBasis::span(f, self.size * self.size, &mats);
        span.contains(f, a.data())
    }
}

impl RankCode {
    pub fn left_idealiser(&self) -> Idealiser {
        self.idealiser(Side::Left)
    }

    pub fn right_idealiser(&self) -> Idealiser {
        self.idealiser(Side::Right)
    }

    /// Solves the linear system `H vec(Y C_i) = 0` (resp. `H vec(C_i Z)`),
    /// where the rows of `H` span `C^⊥` and the `C_i` are a basis of `C`.
    pub fn idealiser(&self, side: Side) -> Idealiser {
        let f = self.field().clone();
        let (m, n) = (self.m(), self.n());
        let size = match side {
            Side::Left => m,
            Side::Right => n,
        };
        let checks = self.delsarte_dual().basis();
        let basis = self.basis();
        let mut rows = Vec::with_capacity(checks.len() * basis.len());
        for c in &basis {
            for h in &checks {
                // Coefficient of Y[a][c'] in <H, Y C> is (H C^t)[a][c'];
                // of Z[c'][b] in <H, C Z> it is (C^t H)[c'][b].
                let coeff = match side {
                    Side::Left => h.mul(&f, &c.transpose()),
                    Side::Right => c.transpose().mul(&f, h),
                };
                rows.push(coeff.data().to_vec());
            }
        }
        let system = Mat::from_rows(size * size, &rows);
        let sol = kernel(&f, &system);
        let mats: Vec<Mat> = sol
            .vectors()
            .into_iter()
            .map(|v| Mat::from_vec(size, size, v))
            .collect();
        let dim = mats.len();
        let (is_field, field_check) = field_test(self, &mats, size);
        Idealiser {
            side,
            size,
            basis: mats,
            dim,
            is_field,
            field_check,
        }
    }
}

/// Every nonzero element of the algebra invertible; exhaustive for small
/// orders, otherwise on a fixed-seed random sample.
fn field_test(code: &RankCode, basis: &[Mat], size: usize) -> (bool, FieldCheck) {
    let f = code.field();
    let q = code.q();
    let flat: Vec<Vec<Elem>> = basis.iter().map(|b| b.data().to_vec()).collect();
    let order = big_pow(q, basis.len());
    if order <= num_bigint::BigUint::from(EXHAUSTIVE_FIELD_CHECK_LIMIT) {
        let mut ok = true;
        visit_span(f, f.order(), &flat, size * size, |v, coeffs| {
            if coeffs.iter().all(|&c| c == 0) {
                return true;
            }
            ok = rank(f, &Mat::from_vec(size, size, v.to_vec())) == size;
            ok
        });
        return (ok, FieldCheck::Exhaustive);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..FIELD_CHECK_SAMPLES {
        let coeffs: Vec<Elem> = (0..basis.len()).map(|_| rng.gen_range(0..f.order())).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let v = lin_comb(f, &coeffs, &flat, size * size);
        if rank(f, &Mat::from_vec(size, size, v)) != size {
            return (false, FieldCheck::Sampled);
        }
    }
    (true, FieldCheck::Sampled)
}

/// Which invariant separates two codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InequivalenceReason {
    RankDistribution,
    LeftIdealiserOrder,
    RightIdealiserOrder,
    LeftIdealiserField,
    RightIdealiserField,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "verdict", content = "reason")]
pub enum Certificate {
    CertifiedInequivalent(InequivalenceReason),
    /// All compared invariants agree; equivalence is not claimed.
    Inconclusive,
}

/// Compares rank distributions, idealiser orders and field flags. Any
/// mismatch proves the codes inequivalent.
pub fn inequivalence_certificate(c1: &RankCode, c2: &RankCode, budget: &Budget) -> Result<Certificate> {
    if !c1.same_shape(c2) {
        return Err(Error::ParamMismatch(format!(
            "({}, {}, {}) vs ({}, {}, {})",
            c1.m(),
            c1.n(),
            c1.q(),
            c2.m(),
            c2.n(),
            c2.q()
        )));
    }
    use InequivalenceReason::*;
    if c1.rank_distribution(budget)?.a != c2.rank_distribution(budget)?.a {
        return Ok(Certificate::CertifiedInequivalent(RankDistribution));
    }
    let (l1, l2) = (c1.left_idealiser(), c2.left_idealiser());
    let (r1, r2) = (c1.right_idealiser(), c2.right_idealiser());
    let reason = if l1.dim != l2.dim {
        Some(LeftIdealiserOrder)
    } else if r1.dim != r2.dim {
        Some(RightIdealiserOrder)
    } else if l1.is_field != l2.is_field && both_exact(&l1, &l2) {
        Some(LeftIdealiserField)
    } else if r1.is_field != r2.is_field && both_exact(&r1, &r2) {
        Some(RightIdealiserField)
    } else {
        None
    };
    Ok(reason.map_or(Certificate::Inconclusive, Certificate::CertifiedInequivalent))
}

fn both_exact(a: &Idealiser, b: &Idealiser) -> bool {
    a.field_check == FieldCheck::Exhaustive && b.field_check == FieldCheck::Exhaustive
}

/// Outcome of the test that excludes punctured generalized (twisted)
/// Gabidulin codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionVerdict {
    /// Not equivalent to any punctured generalized Gabidulin or twisted
    /// Gabidulin code.
    CertifiedNew,
    NotApplicable,
}

/// The exclusion decision from the parameters and the `F_q`-dimension of
/// the right idealiser. Gates run in order: shape, then the hypotheses
/// `n >= h+3` and `(n,h) != (4,1)`, then `(h+1) ∤ r` with `|R| = q^n`.
pub fn exclusion_verdict(r: usize, n: usize, h: usize, right_idealiser_dim: usize) -> Result<ExclusionVerdict> {
    if !(r * n).is_multiple_of(h + 1) {
        return Err(Error::ParamMismatch(format!("h+1 = {} does not divide rn = {}", h + 1, r * n)));
    }
    if n < h + 3 || (n, h) == (4, 1) {
        return Err(Error::HypothesisViolated(format!(
            "need n >= h+3 and (n,h) != (4,1), got n = {n}, h = {h}"
        )));
    }
    if !r.is_multiple_of(h + 1) && right_idealiser_dim == n {
        Ok(ExclusionVerdict::CertifiedNew)
    } else {
        Ok(ExclusionVerdict::NotApplicable)
    }
}

impl RankCode {
    /// Checks that the code has parameters `(rn/(h+1), n, q; n-h)` and runs
    /// [`exclusion_verdict`] on its right idealiser.
    pub fn gabidulin_family_exclusion(
        &self,
        r: usize,
        n: usize,
        h: usize,
        budget: &Budget,
    ) -> Result<ExclusionVerdict> {
        if h >= n || !(r * n).is_multiple_of(h + 1) || self.m() != r * n / (h + 1) || self.n() != n {
            return Err(Error::ParamMismatch(format!(
                "code is {}x{}, expected ({}/{}) x {n}",
                self.m(),
                self.n(),
                r * n,
                h + 1
            )));
        }
        let d = self.min_distance(budget)?;
        if d != n - h {
            return Err(Error::ParamMismatch(format!("minimum distance {d}, expected {}", n - h)));
        }
        exclusion_verdict(r, n, h, self.right_idealiser().dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rankcodes::base_field;

    #[test]
    fn full_space_idealisers() {
        let f = base_field(2).unwrap();
        let c = RankCode::full(f, 2, 3);
        let l = c.left_idealiser();
        let r = c.right_idealiser();
        assert_eq!((l.dim, r.dim), (4, 9));
        assert!(!l.is_field);
        assert_eq!(l.field_check, FieldCheck::Exhaustive);
    }

    #[test]
    fn scalar_code_idealisers() {
        // The span of I_2 over F_3: both idealisers are the scalars.
        let f = base_field(3).unwrap();
        let c = RankCode::new(f, 2, 2, &[Mat::identity(2)]).unwrap();
        let l = c.left_idealiser();
        assert_eq!(l.dim, 1);
        assert!(l.is_field);
    }

    #[test]
    fn transposed_idealisers() {
        let f = base_field(2).unwrap();
        let mats = vec![
            Mat::from_rows(3, &[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 1]]),
            Mat::identity(3),
        ];
        let c = RankCode::new(f, 3, 3, &mats).unwrap();
        let adj = c.adjoint();
        let l_adj = adj.left_idealiser();
        let r = c.right_idealiser();
        assert_eq!(l_adj.dim, r.dim);
        for b in &r.basis {
            assert!(l_adj.contains(&adj, &b.transpose()));
        }
    }

    #[test]
    fn exclusion_gates() {
        assert_eq!(exclusion_verdict(3, 6, 1, 6), Ok(ExclusionVerdict::CertifiedNew));
        assert_eq!(exclusion_verdict(3, 6, 1, 3), Ok(ExclusionVerdict::NotApplicable));
        assert_eq!(exclusion_verdict(2, 5, 1, 5), Ok(ExclusionVerdict::NotApplicable));
        assert!(matches!(exclusion_verdict(2, 4, 1, 4), Err(Error::HypothesisViolated(_))));
        assert!(matches!(exclusion_verdict(3, 4, 2, 4), Err(Error::HypothesisViolated(_))));
        assert_eq!(exclusion_verdict(3, 5, 2, 5), Ok(ExclusionVerdict::NotApplicable));
        assert!(matches!(exclusion_verdict(2, 5, 2, 5), Err(Error::ParamMismatch(_))));
    }

    #[test]
    fn certificate_on_distinct_distributions() {
        let b = Budget::default();
        let f = base_field(2).unwrap();
        let c1 = RankCode::new(f.clone(), 2, 2, &[Mat::identity(2)]).unwrap();
        let c2 = RankCode::new(f.clone(), 2, 2, &[Mat::from_rows(2, &[vec![1, 0], vec![0, 0]])]).unwrap();
        assert_eq!(
            inequivalence_certificate(&c1, &c2, &b).unwrap(),
            Certificate::CertifiedInequivalent(InequivalenceReason::RankDistribution)
        );
        assert_eq!(inequivalence_certificate(&c1, &c1, &b).unwrap(), Certificate::Inconclusive);
        let c3 = RankCode::full(f, 2, 3);
        assert!(matches!(
            inequivalence_certificate(&c1, &c3, &b),
            Err(Error::ParamMismatch(_))
        ));
    }
}
