//! Linear sets `L_U` in `PG(r-1, q^n)` and the Hamming-metric codes they
//! define as projective systems.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::fields::{Elem, GaloisField};
use crate::fqlinalg::{projective_points, qbinom, theta, visit_span, Mat};
use crate::subspaces::FqSubspace;

/// `L_U = {<u> : u in U \ 0}` with the weight `dim_(F_q)(U ∩ <u>)` of each
/// point.
#[derive(Debug, Clone)]
pub struct LinearSet {
    pub u: FqSubspace,
    /// Normalized point (first nonzero coordinate 1) to weight.
    pub points: BTreeMap<Vec<Elem>, usize>,
}

impl LinearSet {
    pub fn new(u: &FqSubspace, budget: &Budget) -> Result<Self> {
        let points = u.point_weights(budget)?.into_iter().collect();
        Ok(LinearSet {
            u: u.clone(),
            points,
        })
    }

    pub fn rank(&self) -> usize {
        self.u.k()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `sum_P (q^w(P) - 1) = q^k - 1`.
    pub fn partition_identity_holds(&self) -> bool {
        let q = u64::from(self.u.tower().q());
        let lhs: BigUint = self.points.values().map(|&w| big_pow(q, w) - 1u32).sum();
        lhs == big_pow(q, self.rank()) - 1u32
    }

    /// `|H ∩ L_U|` for the hyperplane with dual coordinates `a`.
    pub fn hyperplane_meet_size(&self, a: &[Elem]) -> usize {
        let f = self.u.tower().mid();
        self.points.keys().filter(|p| dot(f, a, p) == 0).count()
    }
}

fn dot(f: &GaloisField, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
}

/// `dim_(F_q)(U ∩ P)` for the point `P = <p>`.
pub fn point_weight(u: &FqSubspace, p: &[Elem]) -> usize {
    u.meet_dim(&[p.to_vec()])
}

/// `dim_(F_q)(U ∩ H)` for `H = {x : sum a_i x_i = 0}`.
pub fn hyperplane_weight(u: &FqSubspace, a: &[Elem]) -> usize {
    u.hyperplane_weight(a)
}

/// Hyperplane counts `t_i` by weight `rn/(h+1) - n + i`.
#[derive(Debug, Clone, Serialize)]
pub struct HyperplaneSpectrum {
    pub r: usize,
    pub n: usize,
    pub h: usize,
    /// `counts[i] = t_i` from enumeration.
    #[serde(with = "crate::serial::big_vec")]
    pub counts: Vec<BigUint>,
    #[serde(with = "crate::serial::big_vec")]
    pub formula: Vec<BigUint>,
}

impl HyperplaneSpectrum {
    pub fn matches_formula(&self) -> bool {
        self.counts == self.formula
    }

    pub fn all_positive(&self) -> bool {
        self.counts.iter().all(|c| !c.is_zero())
    }
}

/// Checks that `U` is maximum h-scattered: dimension `rn/(h+1)` and
/// h-scattered.
fn require_max_scattered(u: &FqSubspace, h: usize, budget: &Budget) -> Result<usize> {
    let (r, n, k) = (u.r(), u.n(), u.k());
    if (r * n) % (h + 1) != 0 || k != r * n / (h + 1) {
        return Err(Error::NotMaxScattered(format!(
            "dimension {k} is not rn/(h+1) for r = {r}, n = {n}, h = {h}"
        )));
    }
    if !u.is_h_scattered(h, budget)? {
        return Err(Error::NotMaxScattered(format!("not {h}-scattered")));
    }
    Ok(k)
}

/// Counts hyperplanes by weight for a maximum h-scattered `U`.
pub fn hyperplane_spectrum(u: &FqSubspace, h: usize, budget: &Budget) -> Result<HyperplaneSpectrum> {
    let k = require_max_scattered(u, h, budget)?;
    let (r, n) = (u.r(), u.n());
    let low = k - n;
    let mut counts = vec![BigUint::zero(); h + 1];
    for (_, w) in u.hyperplane_weights(budget)? {
        if w < low || w > low + h {
            return Err(Error::Internal(format!("hyperplane weight {w} outside {low}..={}", low + h)));
        }
        counts[w - low] += 1u32;
    }
    let q = u64::from(u.tower().q());
    let formula = (0..=h).map(|i| ti_formula(r, n, h, q, i)).collect::<Result<_>>()?;
    Ok(HyperplaneSpectrum {
        r,
        n,
        h,
        counts,
        formula,
    })
}

/// `t_i = [n i] sum_(j=0)^(h-i) (-1)^j [n-i j] q^C(j,2) (q^(rn(h-i-j+1)/(h+1)) - 1) / (q^n - 1)`.
pub fn ti_formula(r: usize, n: usize, h: usize, q: u64, i: usize) -> Result<BigUint> {
    if i > h || h >= n || !(r * n).is_multiple_of(h + 1) {
        return Err(Error::InvalidParams(format!(
            "t_i needs i <= h < n and (h+1) | rn; got r = {r}, n = {n}, h = {h}, i = {i}"
        )));
    }
    let mut sum = BigInt::zero();
    for j in 0..=h - i {
        let term = BigInt::from(qbinom((n - i) as i64, j as i64, q))
            * BigInt::from(big_pow(q, j * j.saturating_sub(1) / 2))
            * BigInt::from(big_pow(q, r * n * (h - i - j + 1) / (h + 1)) - 1u32);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let num = BigInt::from(qbinom(n as i64, i as i64, q)) * sum;
    let den = BigInt::from(big_pow(q, n) - 1u32);
    if !(&num % &den).is_zero() {
        return Err(Error::NonIntegral(format!("t_{i} numerator {num} is not divisible by {den}")));
    }
    (num / den)
        .to_biguint()
        .ok_or_else(|| Error::NonIntegral(format!("t_{i} is negative")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// One count per hyperplane, i.e. per codeword up to scalars.
    #[default]
    Projective,
    /// Every nonzero codeword counted.
    Codeword,
}

/// A linear code over `F_(q^n)` given by a `k × N` generator matrix.
#[derive(Debug, Clone)]
pub struct HammingCode {
    pub field: Arc<GaloisField>,
    pub generator: Mat,
    enumerator: OnceLock<BTreeMap<usize, BigUint>>,
}

impl HammingCode {
    pub fn new(field: Arc<GaloisField>, generator: Mat) -> Self {
        HammingCode {
            field,
            generator,
            enumerator: OnceLock::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn length(&self) -> usize {
        self.generator.cols()
    }

    /// Nonzero weights with codeword counts, by enumerating all messages.
    fn codeword_counts(&self, budget: &Budget) -> Result<&BTreeMap<usize, BigUint>> {
        if let Some(e) = self.enumerator.get() {
            return Ok(e);
        }
        let qn = self.field.order();
        budget.check_codewords("Hamming codewords", &big_pow(u64::from(qn), self.k()))?;
        let rows = self.generator.row_vecs();
        if rows.is_empty() {
            return Ok(self.enumerator.get_or_init(BTreeMap::new));
        }
        let len = self.length();
        // Split on the first message coordinate.
        let parts: Vec<BTreeMap<usize, u64>> = (0..qn)
            .into_par_iter()
            .map(|c0| {
                let start: Vec<Elem> = rows[0].iter().map(|&x| self.field.mul(c0, x)).collect();
                let mut hist = BTreeMap::new();
                visit_span(&self.field, qn, &rows[1..], len, |v, _| {
                    let w = v
                        .iter()
                        .zip(&start)
                        .filter(|(&a, &b)| self.field.add(a, b) != 0)
                        .count();
                    *hist.entry(w).or_insert(0u64) += 1;
                    true
                });
                hist
            })
            .collect();
        let mut total: BTreeMap<usize, BigUint> = BTreeMap::new();
        for part in parts {
            for (w, c) in part {
                *total.entry(w).or_default() += c;
            }
        }
        total.remove(&0);
        Ok(self.enumerator.get_or_init(|| total))
    }

    /// Weight enumerator by brute force. Under the projective convention
    /// each count is divided by `q^n - 1`.
    pub fn weight_enumerator(&self, convention: Convention, budget: &Budget) -> Result<BTreeMap<usize, BigUint>> {
        let counts = self.codeword_counts(budget)?;
        let scale = BigUint::from(self.field.order() - 1);
        Ok(counts
            .iter()
            .map(|(&w, c)| match convention {
                Convention::Codeword => (w, c.clone()),
                Convention::Projective => (w, c / &scale),
            })
            .collect())
    }

    pub fn min_distance(&self, budget: &Budget) -> Result<Option<usize>> {
        Ok(self.codeword_counts(budget)?.keys().next().copied())
    }
}

impl Serialize for HammingCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("HammingCode", 5)?;
        st.serialize_field("field", &self.field.order())?;
        st.serialize_field("k", &self.k())?;
        st.serialize_field("N", &self.length())?;
        st.serialize_field("generator", &self.generator.row_vecs())?;
        let enumerator: Option<BTreeMap<usize, String>> = self
            .enumerator
            .get()
            .map(|e| e.iter().map(|(&w, c)| (w, c.to_string())).collect());
        st.serialize_field("enumerator", &enumerator)?;
        st.end()
    }
}

/// The code whose columns are the points of `L_U`, one normalized
/// representative each, in sorted order.
pub fn projective_system_code(l: &LinearSet) -> Result<HammingCode> {
    if !l.u.spans_ambient() {
        return Err(Error::NotSpanning);
    }
    let cols: Vec<Vec<Elem>> = l.points.keys().cloned().collect();
    let generator = Mat::from_cols(l.u.r(), &cols);
    Ok(HammingCode::new(l.u.tower().mid().clone(), generator))
}

/// Hamming weights `θ_(rn/(h+1)-1) - θ_(rn/(h+1)-n+i-1)` with their counts,
/// for the projective-system code of a maximum h-scattered linear set.
pub fn closed_form_enumerator(
    r: usize,
    n: usize,
    h: usize,
    q: u64,
    convention: Convention,
) -> Result<BTreeMap<usize, BigUint>> {
    let k = (r * n / (h + 1)) as i64;
    let big_n = theta(k - 1, q);
    let scale = big_pow(q, n) - 1u32;
    let mut out = BTreeMap::new();
    for i in 0..=h {
        let w = &big_n - theta(k - n as i64 + i as i64 - 1, q);
        let w = usize::try_from(w).map_err(|_| Error::InvalidParams("code length overflows".into()))?;
        let t = ti_formula(r, n, h, q, i)?;
        let c = match convention {
            Convention::Projective => t,
            Convention::Codeword => t * &scale,
        };
        out.insert(w, c);
    }
    Ok(out)
}

/// The code whose columns are an `F_q`-basis of a maximum h-scattered `U`
/// (length `rn/(h+1)`, dimension `r` over `F_(q^n)`).
pub fn qsystem_code(u: &FqSubspace, h: usize, budget: &Budget) -> Result<HammingCode> {
    if u.n() < h + 3 {
        return Err(Error::HypothesisViolated(format!("n = {} < h + 3 = {}", u.n(), h + 3)));
    }
    require_max_scattered(u, h, budget)?;
    let generator = Mat::from_cols(u.r(), u.basis_mid());
    Ok(HammingCode::new(u.tower().mid().clone(), generator))
}

/// Rank-metric distance of the q-system: `k` minus the largest hyperplane
/// weight.
pub fn qsystem_rank_distance(u: &FqSubspace, budget: &Budget) -> Result<usize> {
    Ok(u.k() - u.max_hyperplane_weight(budget)?)
}

/// Whether every column of `sub`, normalized, is a column of `full`: `sub`
/// is then a column deletion of a diagonal rescaling of `full`.
pub fn is_column_deletion_of(sub: &HammingCode, full: &HammingCode) -> bool {
    let f = &full.field;
    let cols: std::collections::HashSet<Vec<Elem>> =
        (0..full.length()).map(|j| full.generator.col(j)).collect();
    (0..sub.length()).all(|j| {
        let mut c = sub.generator.col(j);
        crate::fqlinalg::normalize_projective(f, &mut c) && cols.contains(&c)
    })
}

/// Number of points of `PG(r-1, q^n)`, i.e. of hyperplanes.
pub fn hyperplane_count(r: usize, qn: u64) -> BigUint {
    theta(r as i64 - 1, qn)
}

/// `|H ∩ L_U|` for every hyperplane, by dual point.
pub fn hyperplane_meet_sizes(l: &LinearSet, budget: &Budget) -> Result<Vec<usize>> {
    let pts: Vec<Vec<Elem>> = projective_points(l.u.tower().mid(), l.u.r(), budget)?.collect();
    Ok(pts.par_iter().map(|a| l.hyperplane_meet_size(a)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{c_ug, pseudoregulus_subspace};
    use crate::fields::make_tower;

    fn pseudo() -> FqSubspace {
        pseudoregulus_subspace(&make_tower(2, 1, 4, 1).unwrap(), 2, 1).unwrap()
    }

    #[test]
    fn point_weights_and_partition() {
        let b = Budget::default();
        let u = pseudo();
        let l = LinearSet::new(&u, &b).unwrap();
        assert_eq!(l.len(), 15);
        assert!(l.points.values().all(|&w| w == 1));
        assert!(l.partition_identity_holds());
        assert_eq!(point_weight(&u, &[1, 1]), 1);
        // (1, 0) is not of the form (x, x^2) up to scalars.
        assert_eq!(point_weight(&u, &[1, 0]), 0);
        let t = u.tower().clone();
        let fat = FqSubspace::fqn_span(t, 2, &[vec![1, 3]]).unwrap();
        let lf = LinearSet::new(&fat, &b).unwrap();
        assert_eq!(lf.points.values().copied().collect::<Vec<_>>(), vec![4]);
        assert!(lf.partition_identity_holds());
    }

    #[test]
    fn ti_values() {
        assert_eq!(ti_formula(2, 4, 1, 2, 0).unwrap(), BigUint::from(2u32));
        assert_eq!(ti_formula(2, 4, 1, 2, 1).unwrap(), BigUint::from(15u32));
        for (r, n, h, q) in [(2usize, 4usize, 1usize, 2u64), (3, 3, 2, 2), (4, 3, 1, 3), (3, 4, 2, 2)] {
            if (r * n) % (h + 1) != 0 {
                continue;
            }
            let ts: Vec<BigUint> = (0..=h).map(|i| ti_formula(r, n, h, q, i).unwrap()).collect();
            assert!(ts.iter().all(|t| !t.is_zero()));
            let sum: BigUint = ts.iter().sum();
            assert_eq!(sum, hyperplane_count(r, big_pow(q, n).try_into().unwrap()));
        }
        assert!(ti_formula(2, 4, 1, 2, 2).is_err());
    }

    #[test]
    fn spectrum_pseudoregulus() {
        let b = Budget::default();
        let s = hyperplane_spectrum(&pseudo(), 1, &b).unwrap();
        assert_eq!(s.counts, vec![BigUint::from(2u32), BigUint::from(15u32)]);
        assert!(s.matches_formula());
    }

    #[test]
    fn spectrum_h2() {
        let b = Budget::default();
        let t = make_tower(2, 1, 3, 1).unwrap();
        let u = pseudoregulus_subspace(&t, 3, 2).unwrap();
        let s = hyperplane_spectrum(&u, 2, &b).unwrap();
        assert!(s.matches_formula());
        assert!(s.all_positive());
        let total: BigUint = s.counts.iter().sum();
        assert_eq!(total, BigUint::from(73u32));
    }

    #[test]
    fn spectrum_rejects_non_maximum() {
        let b = Budget::default();
        let u = pseudo();
        let small = FqSubspace::new(u.tower().clone(), 2, &u.basis_mid()[..3]).unwrap();
        assert!(matches!(hyperplane_spectrum(&small, 1, &b), Err(Error::NotMaxScattered(_))));
    }

    #[test]
    fn spectrum_equals_dual_code_distribution() {
        let b = Budget::default();
        let u = pseudo();
        let s = hyperplane_spectrum(&u, 1, &b).unwrap();
        let code = c_ug(&u.ordinary_dual()).unwrap().code;
        let a = code.rank_distribution(&b).unwrap();
        let scale = BigUint::from(15u32);
        for i in 0..=1 {
            assert_eq!(a.get(4 - i), &s.counts[i] * &scale);
        }
    }

    #[test]
    fn projective_system_code_weights() {
        let b = Budget::default();
        let l = LinearSet::new(&pseudo(), &b).unwrap();
        let c = projective_system_code(&l).unwrap();
        assert_eq!((c.length(), c.k()), (15, 2));
        let proj = c.weight_enumerator(Convention::Projective, &b).unwrap();
        let cw = c.weight_enumerator(Convention::Codeword, &b).unwrap();
        let big = |x: u32| BigUint::from(x);
        assert_eq!(proj, BTreeMap::from([(14, big(15)), (15, big(2))]));
        assert_eq!(cw, BTreeMap::from([(14, big(225)), (15, big(30))]));
        assert_eq!(cw.values().sum::<BigUint>(), big(255));
        assert_eq!(proj, closed_form_enumerator(2, 4, 1, 2, Convention::Projective).unwrap());
        assert_eq!(cw, closed_form_enumerator(2, 4, 1, 2, Convention::Codeword).unwrap());
        assert_eq!(c.min_distance(&b).unwrap(), Some(14));
        // d = N - max |L ∩ H|.
        let max_meet = hyperplane_meet_sizes(&l, &b).unwrap().into_iter().max().unwrap();
        assert_eq!(15 - max_meet, 14);
    }

    #[test]
    fn projective_system_needs_span() {
        let b = Budget::default();
        let t = make_tower(2, 1, 4, 1).unwrap();
        let line = FqSubspace::new(t.clone(), 2, &[vec![1, 0], vec![2, 0]]).unwrap();
        let l = LinearSet::new(&line, &b).unwrap();
        assert_eq!(projective_system_code(&l).unwrap_err(), Error::NotSpanning);
    }

    #[test]
    fn qsystem_code_pseudoregulus() {
        let b = Budget::default();
        let u = pseudo();
        let c = qsystem_code(&u, 1, &b).unwrap();
        assert_eq!((c.length(), c.k()), (4, 2));
        assert_eq!(c.min_distance(&b).unwrap(), Some(3));
        assert_eq!(qsystem_rank_distance(&u, &b).unwrap(), 3);
        let l = LinearSet::new(&u, &b).unwrap();
        assert!(is_column_deletion_of(&c, &projective_system_code(&l).unwrap()));
        let t3 = make_tower(2, 1, 3, 1).unwrap();
        let u3 = pseudoregulus_subspace(&t3, 2, 1).unwrap();
        assert!(matches!(qsystem_code(&u3, 1, &b), Err(Error::HypothesisViolated(_))));
    }
}
