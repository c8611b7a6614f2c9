use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use super::{RankCode, RankDistribution};
use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::fqlinalg::qbinom;

/// Closed-form rank distribution of an `m × n` MRD code over `F_q` with
/// minimum distance `d`. With `m' = min(m,n)`, `n' = max(m,n)`:
///
/// `A_(d+l) = [m' d+l] sum_(t=0)^l (-1)^(t-l) [l+d l-t] q^C(l-t,2) (q^(n'(t+1)) - 1)`.
pub fn mrd_weight_distribution(m: usize, n: usize, q: u64, d: usize) -> Result<RankDistribution> {
    let (mp, np) = (m.min(n), m.max(n));
    if q < 2 || d == 0 || d > mp + 1 {
        return Err(Error::InvalidParams(format!(
            "no MRD code with m = {m}, n = {n}, q = {q}, d = {d}"
        )));
    }
    let mut a = vec![BigUint::zero(); mp + 1];
    a[0] = BigUint::one();
    for l in 0..=(mp + 1 - d).saturating_sub(1) {
        if d + l > mp {
            break;
        }
        let mut sum = BigInt::zero();
        for t in 0..=l {
            let term = BigInt::from(qbinom((l + d) as i64, (l - t) as i64, q))
                * BigInt::from(big_pow(q, (l - t) * (l - t).saturating_sub(1) / 2))
                * BigInt::from(big_pow(q, np * (t + 1)) - 1u32);
            if (l - t) % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let value = BigInt::from(qbinom(mp as i64, (d + l) as i64, q)) * sum;
        let (sign, mag) = value.into_parts();
        if sign == Sign::Minus {
            return Err(Error::Internal("negative MRD weight count".into()));
        }
        a[d + l] = mag;
    }
    Ok(RankDistribution {
        m,
        n,
        q,
        dim: np * (mp + 1 - d),
        a,
    })
}

/// The MacWilliams identities between a code's rank distribution `a` and its
/// Delsarte dual's `b`, for every `ν = 0..=m`, as exact integer equalities
/// (both sides multiplied by `q^(nν)`).
pub fn macwilliams_holds(a: &RankDistribution, b: &RankDistribution) -> bool {
    let (m, n, q) = (a.m, a.n, a.q);
    let size = big_pow(q, a.dim);
    (0..=m).all(|nu| {
        let lhs: BigUint = (0..=m - nu)
            .map(|i| a.get(i) * qbinom((m - i) as i64, nu as i64, q))
            .sum();
        let rhs: BigUint = (0..=nu)
            .map(|j| b.get(j) * qbinom((m - j) as i64, (nu - j) as i64, q))
            .sum();
        lhs * big_pow(q, n * nu) == &size * rhs
    })
}

/// Computes the rank distributions of `C` and `C^⊥` by enumeration and
/// checks the MacWilliams identities.
pub fn macwilliams_check(c: &RankCode, budget: &Budget) -> Result<bool> {
    let dual = c.delsarte_dual();
    let a = c.rank_distribution(budget)?;
    let b = dual.rank_distribution(budget)?;
    Ok(macwilliams_holds(a, b))
}

/// For an MRD code, checks
/// `[m' ν] + sum_(i=d)^(m'-ν) A_i [m'-i ν] = |C|/q^(n'ν) [m' ν]`
/// for `ν = 0..=m'-d`.
pub fn dual_relations_check(c: &RankCode, budget: &Budget) -> Result<bool> {
    if !c.is_mrd(budget)? {
        return Err(Error::NotMrd);
    }
    let d = c.min_distance(budget)?;
    let dist = c.rank_distribution(budget)?;
    let (mp, np) = (c.m().min(c.n()), c.m().max(c.n()));
    let q = c.q();
    let size = c.size();
    Ok((0..=mp - d).all(|nu| {
        let base = qbinom(mp as i64, nu as i64, q);
        let lhs: BigUint = &base
            + (d..=mp - nu)
                .map(|i| dist.get(i) * qbinom((mp - i) as i64, nu as i64, q))
                .sum::<BigUint>();
        lhs * big_pow(q, np * nu) == &size * base
    }))
}
