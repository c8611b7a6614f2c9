use serde::Serialize;

use super::FqSubspace;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fields::Elem;
use crate::fqlinalg::{inverse, kernel, rank_of_rows, Mat, SubspaceBasis};

/// The embedding data behind a Delsarte dual.
///
/// `V̂ = F_(q^n)^k` contains `V` as the first `r` coordinates and
/// `Γ = {0}^r × F_(q^n)^(k-r)`. `W` is the `F_q`-span of the rows
/// `w_i = (u_i, n_i)` of `[M | N]`, and `β` is the `F_(q^n)`-bilinear form
/// with `β(w_i, w_j) = δ_ij`. The dual is the image of `W` in
/// `V̂/Γ^⊥ ≅ F_(q^n)^(k-r)`.
#[derive(Debug, Clone, Serialize)]
pub struct DelsarteDualData {
    pub k: usize,
    pub r: usize,
    /// The `u_i`, in the order used for the rows of `[M | N]`.
    pub primal_basis: Vec<Vec<Elem>>,
    /// `[M | N]`, `k × k` over `F_(q^n)`; `N` has entries in `F_q`.
    pub embedding: Mat,
    /// Gram matrix of `β'` in the `w`-basis.
    pub beta_gram: Mat,
    /// `Γ` over `F_(q^n)`.
    pub gamma: SubspaceBasis,
    /// `Γ^⊥` over `F_(q^n)` in standard coordinates.
    pub gamma_perp: SubspaceBasis,
    /// Images `d_i` of the `w_i` in `F_(q^n)^(k-r)`.
    pub dual_vectors: Vec<Vec<Elem>>,
    #[serde(skip)]
    pub dual: FqSubspace,
}

/// `(U^⊥D)^⊥D` compared with `U` through the `F_(q^n)`-isomorphism forced by
/// the two embeddings.
#[derive(Debug, Clone)]
pub struct DoubleDualCheck {
    pub second: DelsarteDualData,
    /// `A` with `e_i = A u_i` for the double-dual vectors `e_i`.
    pub isomorphism: Mat,
    /// `A^(-1)` applied to the double dual.
    pub pulled_back: FqSubspace,
    pub matches: bool,
}

impl FqSubspace {
    /// The Delsarte dual `U^⊥D`, a `k`-dimensional `F_q`-subspace of
    /// `F_(q^n)^(k-r)`. Requires `k > r` and every hyperplane to meet `U` in
    /// dimension below `k - 1`.
    pub fn delsarte_dual(&self, budget: &Budget) -> Result<DelsarteDualData> {
        delsarte_dual_of_basis(self, self.basis_mid().to_vec(), budget)
    }
}

pub(super) fn delsarte_dual_of_basis(
    u: &FqSubspace,
    basis: Vec<Vec<Elem>>,
    budget: &Budget,
) -> Result<DelsarteDualData> {
    let (k, r) = (u.k(), u.r());
    if k <= r {
        return Err(Error::DimensionMismatch(format!(
            "Delsarte dual needs k > r, got k = {k}, r = {r}"
        )));
    }
    let weight = u.max_hyperplane_weight(budget)?;
    if weight + 1 >= k {
        return Err(Error::PreconditionHyperplaneWeight {
            weight,
            bound: k - 1,
        });
    }
    let tower = u.tower().clone();
    let f = tower.mid();
    let kr = k - r;

    // N: zero on r rows that are independent over F_(q^n), identity on the
    // rest. Then [M | N] is block triangular up to a row permutation.
    let mut pivots = Vec::new();
    let mut chosen: Vec<Vec<Elem>> = Vec::new();
    for (i, row) in basis.iter().enumerate() {
        chosen.push(row.clone());
        if rank_of_rows(f, r, &chosen) == chosen.len() {
            pivots.push(i);
        } else {
            chosen.pop();
        }
    }
    if pivots.len() != r {
        return Err(Error::Internal("U does not span V".into()));
    }
    let mut embedding = Mat::zeros(k, k);
    let mut next = 0;
    for (i, row) in basis.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            embedding.set(i, j, x);
        }
        if !pivots.contains(&i) {
            embedding.set(i, r + next, 1);
            next += 1;
        }
    }
    let binv = inverse(f, &embedding).ok_or(Error::NoEmbedding)?;

    // Rows r.. of B^(-1) are the w-coordinates of e_r, ..., e_(k-1); the
    // quotient map sends w_i to column i of that block.
    let q_block = binv.submatrix_rows(r..k);
    let dual_vectors: Vec<Vec<Elem>> = (0..k).map(|i| q_block.col(i)).collect();
    let dual = FqSubspace::new(tower.clone(), kr, &dual_vectors)?;
    if dual.k() != k {
        return Err(Error::Internal(format!(
            "Delsarte dual has dimension {} instead of {k}",
            dual.k()
        )));
    }

    let gamma_rows: Vec<Vec<Elem>> = (r..k)
        .map(|j| {
            let mut e = vec![0; k];
            e[j] = 1;
            e
        })
        .collect();
    let gamma = SubspaceBasis::span(f, k, &gamma_rows);
    // β(x, y) = x B^(-1) B^(-T) y^T, so Γ^⊥ is cut out by rows r.. of
    // B^(-1) B^(-T).
    let s = binv.mul(f, &binv.transpose());
    let gamma_perp = kernel(f, &s.submatrix_rows(r..k));

    let data = DelsarteDualData {
        k,
        r,
        primal_basis: basis,
        embedding,
        beta_gram: Mat::identity(k),
        gamma,
        gamma_perp,
        dual_vectors,
        dual,
    };
    validate(u, &data)?;
    Ok(data)
}

/// Checks the stated invariants of the embedding by flat-coordinate algebra.
fn validate(u: &FqSubspace, d: &DelsarteDualData) -> Result<()> {
    let tower = u.tower();
    let fq = tower.base();
    let n = tower.n();
    let (k, r) = (d.k, d.r);
    let big = FqSubspace::zero(tower.clone(), k);
    let w_flat: Vec<Vec<Elem>> = d.embedding.row_vecs().iter().map(|w| big.flatten(w)).collect();
    let mut gamma_flat = Vec::new();
    for g in tower.mid_basis() {
        for j in r..k {
            let mut e = vec![0; k];
            e[j] = g;
            gamma_flat.push(big.flatten(&e));
        }
    }
    let w_sp = SubspaceBasis::span(fq, k * n, &w_flat);
    let g_sp = SubspaceBasis::span(fq, k * n, &gamma_flat);
    if w_sp.dim() != k || w_sp.intersect(fq, &g_sp)?.dim() != 0 {
        return Err(Error::Internal("W meets Γ".into()));
    }
    if d.beta_gram != d.beta_gram.transpose() || inverse(fq, &d.beta_gram).is_none() {
        return Err(Error::Internal("β' is degenerate".into()));
    }
    // <W, Γ> ∩ V = U, with V the first r coordinates.
    let sum = w_sp.sum(fq, &g_sp)?;
    let v_rows: Vec<Vec<Elem>> = (0..r * n)
        .map(|i| {
            let mut e = vec![0; k * n];
            e[i] = 1;
            e
        })
        .collect();
    let v_sp = SubspaceBasis::span(fq, k * n, &v_rows);
    let meet = sum.intersect(fq, &v_sp)?;
    let proj: Vec<Vec<Elem>> = meet.vectors().iter().map(|x| x[..r * n].to_vec()).collect();
    if SubspaceBasis::span(fq, r * n, &proj) != *u.flat() {
        return Err(Error::Internal("<W, Γ> ∩ V differs from U".into()));
    }
    Ok(())
}

impl DelsarteDualData {
    /// Dualizes again using the `d_i` in order, and checks that the
    /// resulting `e_i` equal `A u_i` with `A = (M^T N')^(-1)`, so the double
    /// dual pulled back through `A` is `U` itself.
    pub fn double_dual(&self, u: &FqSubspace, budget: &Budget) -> Result<DoubleDualCheck> {
        let tower = u.tower();
        let f = tower.mid();
        let second = delsarte_dual_of_basis(&self.dual, self.dual_vectors.clone(), budget)?;
        let (k, r) = (self.k, self.r);
        let kr = k - r;
        let m_t = Mat::from_rows(r, &self.primal_basis).transpose();
        let mut n2 = Mat::zeros(k, r);
        for i in 0..k {
            for j in 0..r {
                n2.set(i, j, second.embedding.get(i, kr + j));
            }
        }
        let a = inverse(f, &m_t.mul(f, &n2))
            .ok_or_else(|| Error::Internal("M^T N' is singular".into()))?;
        let e = Mat::from_cols(r, &second.dual_vectors);
        let predicted = a.mul(f, &m_t);
        let ainv = inverse(f, &a).expect("inverse of an invertible matrix");
        let pulled_back = second.dual.map_linear(&ainv)?;
        let matches = e == predicted && pulled_back == *u;
        Ok(DoubleDualCheck {
            second,
            isomorphism: a,
            pulled_back,
            matches,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_tower;
    use crate::subspaces::pseudoregulus_block;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pseudoregulus_dual_is_scattered() {
        let b = Budget::default();
        let u = pseudoregulus_block(make_tower(2, 1, 4, 1).unwrap(), 1).unwrap();
        let d = u.delsarte_dual(&b).unwrap();
        assert_eq!((d.dual.r(), d.dual.k()), (2, 4));
        assert!(d.dual.is_h_scattered(1, &b).unwrap());
        let dd = d.double_dual(&u, &b).unwrap();
        assert!(dd.matches);
        assert_eq!(dd.pulled_back, u);
    }

    #[test]
    fn gamma_perp_is_the_quotient_kernel() {
        let b = Budget::default();
        let u = pseudoregulus_block(make_tower(2, 1, 4, 1).unwrap(), 1).unwrap();
        let d = u.delsarte_dual(&b).unwrap();
        assert_eq!(d.gamma_perp.dim(), d.r);
        assert_eq!(d.gamma.dim(), d.k - d.r);
    }

    #[test]
    fn heavy_hyperplane_is_rejected() {
        let b = Budget::default();
        let t = make_tower(2, 1, 4, 1).unwrap();
        let u = FqSubspace::new(t, 2, &[vec![1, 0], vec![2, 0], vec![4, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            u.delsarte_dual(&b),
            Err(Error::PreconditionHyperplaneWeight { weight: 3, bound: 3 })
        ));
    }

    #[test]
    fn random_duals_have_full_dimension() {
        let b = Budget::default();
        let t = make_tower(2, 1, 3, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut done = 0;
        while done < 10 {
            let u = FqSubspace::random(t.clone(), 2, 4, &mut rng).unwrap();
            let Ok(d) = u.delsarte_dual(&b) else { continue };
            assert_eq!(d.dual.k(), 4);
            assert!(d.double_dual(&u, &b).map(|c| c.matches).unwrap_or(true));
            done += 1;
        }
    }
}
