//! Linear algebra over the fields of the tower: RREF, kernels, subspace
//! arithmetic and Grassmannian enumeration.

mod elim;
mod mat;
mod span;
mod subspace;

pub use elim::{
    inverse, matrix_minimal_polynomial, pack_f2, rank, rank_f2, rank_of_rows, rref,
    rref_in_place, solve_combination,
};
pub use mat::{axpy, lin_comb, Mat};
pub use span::{normalize_projective, visit_span};
pub use subspace::{enumerate_subspaces, qbinom, theta, SubspaceBasis, SubspaceIter};

use crate::fields::GaloisField;

/// Right kernel `{x : m x = 0}` as a subspace of `K^cols`.
pub fn kernel(f: &GaloisField, m: &Mat) -> SubspaceBasis {
    let cols = m.cols();
    let (r, rank) = rref(f, m);
    let pivots: Vec<usize> = (0..rank)
        .map(|i| (0..cols).find(|&c| r.get(i, c) != 0).unwrap())
        .collect();
    let mut vecs = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = f.neg(r.get(i, free));
        }
        vecs.push(v);
    }
    SubspaceBasis::span(f, cols, &vecs)
}

/// Normalized representatives of the points of `PG(dim-1, K)`, first nonzero
/// coordinate 1, in canonical order.
pub fn projective_points<'a>(
    f: &'a GaloisField,
    dim: usize,
    budget: &crate::budget::Budget,
) -> crate::error::Result<impl Iterator<Item = Vec<crate::fields::Elem>> + Send + 'a> {
    Ok(enumerate_subspaces(f, dim, 1, budget)?.map(|s| s.basis().row(0).to_vec()))
}
