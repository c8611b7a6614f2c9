//! `F_q`-subspaces of `V = F_(q^n)^r`: scatteredness, the ι statistic,
//! ordinary and Delsarte duality, and the characterizations of maximum
//! h-scattered subspaces.

mod delsarte;

pub use delsarte::{DelsarteDualData, DoubleDualCheck};

use std::collections::HashMap;
use std::sync::Arc;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::{big_pow, Budget};
use crate::error::{Error, Result};
use crate::fields::{Elem, FieldTower, Level};
use crate::fqlinalg::{
    enumerate_subspaces, kernel, normalize_projective, projective_points, rank_of_rows, theta,
    visit_span, Mat, SubspaceBasis,
};

/// An `F_q`-subspace of `F_(q^n)^r`, kept both as vectors over `F_(q^n)` and
/// as an RREF subspace of `F_q^(rn)`. Coordinate `a` of entry `i` flattens to
/// index `i*n + a`. The stored mid basis is the unflattened RREF basis, so
/// equal subspaces have equal representations.
#[derive(Debug, Clone)]
pub struct FqSubspace {
    tower: Arc<FieldTower>,
    r: usize,
    basis_mid: Vec<Vec<Elem>>,
    flat: SubspaceBasis,
}

impl PartialEq for FqSubspace {
    fn eq(&self, other: &Self) -> bool {
        *self.tower == *other.tower && self.r == other.r && self.flat == other.flat
    }
}

impl Eq for FqSubspace {}

/// Outcome of the dimension bound for h-scattered subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimensionBound {
    /// `k = r`: `U` is a subgeometry.
    Subgeometry,
    /// `k <= rn/(h+1)`.
    WithinBound,
    /// Neither holds, which cannot happen for an h-scattered input.
    Violation,
}

/// The three tests for maximum h-scattered subspaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Characterization {
    pub via_definition: bool,
    pub via_hyperplanes: bool,
    pub via_dual_points: bool,
}

impl Characterization {
    pub fn agree(&self) -> bool {
        self.via_definition == self.via_hyperplanes && self.via_hyperplanes == self.via_dual_points
    }
}

impl FqSubspace {
    /// `F_q`-span of vectors of `F_(q^n)^r`.
    pub fn new(tower: Arc<FieldTower>, r: usize, vecs: &[Vec<Elem>]) -> Result<Self> {
        let order = tower.mid().order();
        for v in vecs {
            if v.len() != r {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in F_(q^n)^{r}",
                    v.len()
                )));
            }
            if let Some(&x) = v.iter().find(|&&x| x >= order) {
                return Err(Error::Malformed(format!("{x} is not an element of F_{order}")));
            }
        }
        let rows: Vec<Vec<Elem>> = vecs.iter().map(|v| flatten_vec(&tower, v)).collect();
        let flat = SubspaceBasis::span(tower.base(), r * tower.n(), &rows);
        Ok(Self::from_flat(tower, r, flat))
    }

    /// Wraps a subspace of `F_q^(rn)` given in flat coordinates.
    pub fn from_flat(tower: Arc<FieldTower>, r: usize, flat: SubspaceBasis) -> Self {
        assert_eq!(flat.ambient(), r * tower.n(), "flat ambient must be rn");
        let basis_mid = flat
            .vectors()
            .iter()
            .map(|row| unflatten_vec(&tower, r, row))
            .collect();
        FqSubspace {
            tower,
            r,
            basis_mid,
            flat,
        }
    }

    pub fn zero(tower: Arc<FieldTower>, r: usize) -> Self {
        let n = tower.n();
        Self::from_flat(tower, r, SubspaceBasis::zero(r * n))
    }

    /// The `F_(q^n)`-span of `vecs`, viewed as an `F_q`-subspace.
    pub fn fqn_span(tower: Arc<FieldTower>, r: usize, vecs: &[Vec<Elem>]) -> Result<Self> {
        let f = tower.mid().clone();
        let mut all = Vec::new();
        for g in tower.mid_basis() {
            for v in vecs {
                all.push(v.iter().map(|&x| f.mul(g, x)).collect());
            }
        }
        Self::new(tower, r, &all)
    }

    /// Image of `F_(q^n)` under an `F_q`-linear map into `F_(q^n)^r`, e.g.
    /// `x -> (x, x^q)`.
    pub fn from_linear_map(
        tower: Arc<FieldTower>,
        r: usize,
        map: impl Fn(Elem) -> Vec<Elem>,
    ) -> Result<Self> {
        let vecs: Vec<Vec<Elem>> = tower.mid_basis().into_iter().map(map).collect();
        Self::new(tower, r, &vecs)
    }

    /// A uniformly random `k`-dimensional subspace.
    pub fn random(tower: Arc<FieldTower>, r: usize, k: usize, rng: &mut impl Rng) -> Result<Self> {
        let n = tower.n();
        if k > r * n {
            return Err(Error::InvalidParams(format!("k = {k} exceeds rn = {}", r * n)));
        }
        let q = tower.q();
        let mut rows: Vec<Vec<Elem>> = Vec::new();
        while rows.len() < k {
            let v: Vec<Elem> = (0..r * n).map(|_| rng.gen_range(0..q)).collect();
            rows.push(v);
            if rank_of_rows(tower.base(), r * n, &rows) < rows.len() {
                rows.pop();
            }
        }
        let flat = SubspaceBasis::span(tower.base(), r * n, &rows);
        Ok(Self::from_flat(tower, r, flat))
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.tower.n()
    }

    pub fn k(&self) -> usize {
        self.flat.dim()
    }

    pub fn basis_mid(&self) -> &[Vec<Elem>] {
        &self.basis_mid
    }

    pub fn flat(&self) -> &SubspaceBasis {
        &self.flat
    }

    pub fn flatten(&self, v: &[Elem]) -> Vec<Elem> {
        flatten_vec(&self.tower, v)
    }

    pub fn unflatten(&self, flat: &[Elem]) -> Vec<Elem> {
        unflatten_vec(&self.tower, self.r, flat)
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.flat.contains(self.tower.base(), &self.flatten(v))
    }

    fn same_tower(&self, other: &FqSubspace) -> Result<()> {
        if *self.tower != *other.tower {
            return Err(Error::TowerMismatch);
        }
        Ok(())
    }

    /// Rank over `F_(q^n)` of the basis, i.e. `dim <U>_(F_(q^n))`.
    pub fn fqn_rank(&self) -> usize {
        rank_of_rows(self.tower.mid(), self.r, &self.basis_mid)
    }

    pub fn spans_ambient(&self) -> bool {
        self.fqn_rank() == self.r
    }

    /// `dim_(F_q)(U ∩ S)` for `S` the `F_(q^n)`-span of `s_basis`.
    pub fn meet_dim(&self, s_basis: &[Vec<Elem>]) -> usize {
        let f = self.tower.mid();
        let mut extra = Vec::with_capacity(s_basis.len() * self.n());
        for g in self.tower.mid_basis() {
            for s in s_basis {
                let gs: Vec<Elem> = s.iter().map(|&x| f.mul(g, x)).collect();
                extra.push(self.flatten(&gs));
            }
        }
        self.flat.meet_dim(self.tower.base(), &extra)
    }

    /// Weight of the hyperplane `{x : sum a_i x_i = 0}`, i.e.
    /// `k - rank` of `u -> sum a_i u_i` restricted to `U`.
    pub fn hyperplane_weight(&self, a: &[Elem]) -> usize {
        let f = self.tower.mid();
        let images: Vec<Vec<Elem>> = self
            .basis_mid
            .iter()
            .map(|u| {
                let s = u.iter().zip(a).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                self.tower.flatten(Level::Mid, s)
            })
            .collect();
        self.k() - rank_of_rows(self.tower.base(), self.n(), &images)
    }

    /// Number of vectors a scan of `U` visits: `q^k`.
    fn check_vector_scan(&self, budget: &Budget) -> Result<u64> {
        let total = big_pow(u64::from(self.tower.q()), self.k());
        budget.check_codewords("vectors of U", &total)
    }

    fn check_point_scan(&self, budget: &Budget) -> Result<u64> {
        let count = theta(self.r as i64 - 1, u64::from(self.tower.mid().order()));
        budget.check_subspaces("points of PG(r-1, q^n)", &count)
    }

    /// Weight of every point of the linear set `L_U`, found by normalizing
    /// each nonzero vector of `U`: a point of weight `w` is hit `q^w - 1`
    /// times.
    pub fn point_weights(&self, budget: &Budget) -> Result<HashMap<Vec<Elem>, usize>> {
        self.check_vector_scan(budget)?;
        let mut hits: HashMap<Vec<Elem>, u64> = HashMap::new();
        let f = self.tower.mid();
        let mut p = vec![0; self.r];
        visit_span(f, self.tower.q(), &self.basis_mid, self.r, |v, _| {
            p.copy_from_slice(v);
            if normalize_projective(f, &mut p) {
                *hits.entry(p.clone()).or_insert(0) += 1;
            }
            true
        });
        let q = u64::from(self.tower.q());
        Ok(hits
            .into_iter()
            .map(|(pt, c)| (pt, weight_from_hits(c, q)))
            .collect())
    }

    /// `ι = max_v dim_(F_q)(U ∩ <v>_(F_(q^n)))`.
    ///
    /// Scans the `q^k` vectors of `U` when that fits the codeword budget and
    /// the `θ_(r-1)` points of the projective space otherwise.
    pub fn iota(&self, budget: &Budget) -> Result<usize> {
        if self.k() == 0 {
            return Ok(0);
        }
        if self.check_vector_scan(budget).is_ok() {
            return Ok(self.point_weights(budget)?.values().copied().max().unwrap_or(0));
        }
        self.iota_by_points(budget)
    }

    /// `ι` computed by intersecting `U` with every `F_(q^n)`-line.
    pub fn iota_by_points(&self, budget: &Budget) -> Result<usize> {
        self.check_point_scan(budget)?;
        let pts = projective_points(self.tower.mid(), self.r, budget)?;
        Ok(pts
            .par_bridge()
            .map(|p| self.meet_dim(&[p]))
            .max()
            .unwrap_or(0))
    }

    /// Whether `U` spans `V` and meets every h-dimensional `F_(q^n)`-subspace
    /// in `F_q`-dimension at most `h`. Stops at the first violation.
    pub fn is_h_scattered(&self, h: usize, budget: &Budget) -> Result<bool> {
        if h == 0 || h >= self.r.max(1) {
            return Err(Error::InvalidParams(format!(
                "h = {h} must lie in 1..=r-1 = {}",
                self.r.saturating_sub(1)
            )));
        }
        let count = crate::fqlinalg::qbinom(
            self.r as i64,
            h as i64,
            u64::from(self.tower.mid().order()),
        );
        budget.check_subspaces("h-dimensional F_(q^n)-subspaces", &count)?;
        if !self.spans_ambient() {
            return Ok(false);
        }
        if h == 1 && self.check_vector_scan(budget).is_ok() {
            return self.is_scattered_by_vectors();
        }
        let subs = enumerate_subspaces(self.tower.mid(), self.r, h, budget)?;
        let bad = subs
            .par_bridge()
            .any(|s| self.meet_dim(&s.vectors()) > h);
        Ok(!bad)
    }

    /// Scattered test by vector enumeration: every point of `L_U` must be
    /// hit exactly `q - 1` times. Exits as soon as one point is hit again.
    fn is_scattered_by_vectors(&self) -> Result<bool> {
        let f = self.tower.mid();
        let q = self.tower.q();
        let mut hits: HashMap<Vec<Elem>, u32> = HashMap::new();
        let mut p = vec![0; self.r];
        let done = visit_span(f, q, &self.basis_mid, self.r, |v, _| {
            p.copy_from_slice(v);
            if !normalize_projective(f, &mut p) {
                return true;
            }
            let c = hits.entry(p.clone()).or_insert(0);
            *c += 1;
            *c < q
        });
        Ok(done)
    }

    /// Classifies `k` against the dimension bound for h-scattered subspaces.
    pub fn check_dimension_bound(&self, h: usize) -> DimensionBound {
        let (k, r, n) = (self.k(), self.r, self.n());
        if k == r {
            DimensionBound::Subgeometry
        } else if k * (h + 1) <= r * n {
            DimensionBound::WithinBound
        } else {
            DimensionBound::Violation
        }
    }

    /// `dim_(F_q)(U ∩ H)` for every hyperplane, keyed by its normalized dual
    /// point.
    pub fn hyperplane_weights(&self, budget: &Budget) -> Result<Vec<(Vec<Elem>, usize)>> {
        self.check_point_scan(budget)?;
        let pts: Vec<Vec<Elem>> = projective_points(self.tower.mid(), self.r, budget)?.collect();
        Ok(pts
            .into_par_iter()
            .map(|a| {
                let w = self.hyperplane_weight(&a);
                (a, w)
            })
            .collect())
    }

    pub fn max_hyperplane_weight(&self, budget: &Budget) -> Result<usize> {
        Ok(self
            .hyperplane_weights(budget)?
            .into_iter()
            .map(|(_, w)| w)
            .max()
            .unwrap_or(0))
    }

    /// Gram matrix over `F_q` of `(x, y) -> Tr(xy)` on the basis `g^a`.
    pub fn trace_gram(tower: &FieldTower) -> Mat {
        let f = tower.mid();
        let basis = tower.mid_basis();
        let n = tower.n();
        let mut m = Mat::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m.set(a, b, tower.trace_mid(f.mul(basis[a], basis[b])));
            }
        }
        m
    }

    /// `U^⊥` for `(u, v) -> Tr(sum u_i v_i)`; has dimension `rn - k`.
    pub fn ordinary_dual(&self) -> FqSubspace {
        let n = self.n();
        let fq = self.tower.base();
        let gram = Self::trace_gram(&self.tower);
        let mut m = Mat::zeros(self.k(), self.r * n);
        for (row, v) in self.flat.vectors().iter().enumerate() {
            for i in 0..self.r {
                for b in 0..n {
                    let s = (0..n).fold(0, |acc, a| {
                        fq.add(acc, fq.mul(v[i * n + a], gram.get(a, b)))
                    });
                    m.set(row, i * n + b, s);
                }
            }
        }
        Self::from_flat(self.tower.clone(), self.r, kernel(fq, &m))
    }

    /// Checks `dim(U^⊥' ∩ W^⊥') - dim(U ∩ W) = rn - k - sn` for the
    /// `F_(q^n)`-subspace `W` spanned by `w_basis`.
    pub fn dual_weight_identity_check(&self, w_basis: &[Vec<Elem>]) -> Result<bool> {
        let w = FqSubspace::fqn_span(self.tower.clone(), self.r, w_basis)?;
        let s = w.fqn_rank() as i64;
        let fq = self.tower.base();
        let lhs_dual = self
            .ordinary_dual()
            .flat
            .intersect(fq, &w.ordinary_dual().flat)?
            .dim() as i64;
        let lhs_primal = self.flat.intersect(fq, &w.flat)?.dim() as i64;
        let (r, n, k) = (self.r as i64, self.n() as i64, self.k() as i64);
        Ok(lhs_dual - lhs_primal == r * n - k - s * n)
    }

    /// The three equivalent tests for an `rn/(h+1)`-dimensional `U`.
    pub fn characterize_max_h_scattered(
        &self,
        h: usize,
        budget: &Budget,
    ) -> Result<Characterization> {
        let (r, n, k) = (self.r, self.n(), self.k());
        if (r * n) % (h + 1) != 0 || k != r * n / (h + 1) {
            return Err(Error::DimensionMismatch(format!(
                "k = {k} but rn/(h+1) = {}/{}",
                r * n,
                h + 1
            )));
        }
        let via_definition = self.is_h_scattered(h, budget)?;
        let bound = (r * n / (h + 1)) as i64 - n as i64 + h as i64;
        let via_hyperplanes = (self.max_hyperplane_weight(budget)? as i64) <= bound;
        let via_dual_points = self.ordinary_dual().iota(budget)? <= h;
        Ok(Characterization {
            via_definition,
            via_hyperplanes,
            via_dual_points,
        })
    }

    /// Block-diagonal sum in `F_(q^n)^(r1 + r2)`.
    pub fn direct_sum(&self, other: &FqSubspace) -> Result<FqSubspace> {
        self.same_tower(other)?;
        let r = self.r + other.r;
        let mut vecs = Vec::with_capacity(self.k() + other.k());
        for u in &self.basis_mid {
            let mut v = u.clone();
            v.resize(r, 0);
            vecs.push(v);
        }
        for u in &other.basis_mid {
            let mut v = vec![0; self.r];
            v.extend_from_slice(u);
            vecs.push(v);
        }
        FqSubspace::new(self.tower.clone(), r, &vecs)
    }

    /// `U + <v>_(F_q)`.
    pub fn with_vector(&self, v: &[Elem]) -> Result<FqSubspace> {
        let mut vecs = self.basis_mid.clone();
        vecs.push(v.to_vec());
        FqSubspace::new(self.tower.clone(), self.r, &vecs)
    }

    /// Image under an `F_(q^n)`-linear map `x -> A x` (A is `r' x r`).
    pub fn map_linear(&self, a: &Mat) -> Result<FqSubspace> {
        if a.cols() != self.r {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix applied to F_(q^n)^{}",
                a.rows(),
                a.cols(),
                self.r
            )));
        }
        let vecs: Vec<Vec<Elem>> = self
            .basis_mid
            .iter()
            .map(|u| a.mul_vec(self.tower.mid(), u))
            .collect();
        FqSubspace::new(self.tower.clone(), a.rows(), &vecs)
    }
}

/// Inverts `hits = q^w - 1`.
fn weight_from_hits(hits: u64, q: u64) -> usize {
    let mut w = 0;
    let mut pw = 1u64;
    while pw - 1 < hits {
        pw *= q;
        w += 1;
    }
    debug_assert_eq!(pw - 1, hits);
    w
}

pub(crate) fn flatten_vec(tower: &FieldTower, v: &[Elem]) -> Vec<Elem> {
    v.iter()
        .flat_map(|&x| tower.flatten(Level::Mid, x))
        .collect()
}

pub(crate) fn unflatten_vec(tower: &FieldTower, r: usize, flat: &[Elem]) -> Vec<Elem> {
    let n = tower.n();
    (0..r).map(|i| tower.unflatten(&flat[i * n..(i + 1) * n])).collect()
}

/// `{(z, z^q, ..., z^(q^h))}`: the standard h-scattered subspace of
/// `F_(q^n)^(h+1)`.
pub fn pseudoregulus_block(tower: Arc<FieldTower>, h: usize) -> Result<FqSubspace> {
    let t = tower.clone();
    FqSubspace::from_linear_map(tower, h + 1, move |z| {
        (0..=h).map(|j| t.frobenius(Level::Mid, z, j)).collect()
    })
}
