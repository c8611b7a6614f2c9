mod common;

use std::collections::BTreeSet;

use common::{rank_mod_p, span_mod_p};
use proptest::prelude::*;
use ranklab::fields::GaloisField;
use ranklab::fqlinalg::{kernel, qbinom, rank, enumerate_subspaces, Mat, SubspaceBasis};
use ranklab::Budget;

fn f2() -> GaloisField {
    GaloisField::prime(2)
}

fn vecs(ambient: usize, max: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..2, ambient), 0..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dimension_identity(a in vecs(10, 7), b in vecs(10, 7)) {
        let f = f2();
        let (sa, sb) = (SubspaceBasis::span(&f, 10, &a), SubspaceBasis::span(&f, 10, &b));
        let sum = sa.sum(&f, &sb).unwrap();
        let meet = sa.intersect(&f, &sb).unwrap();
        prop_assert_eq!(sum.dim() + meet.dim(), sa.dim() + sb.dim());
        prop_assert!(meet.is_subspace_of(&f, &sa) && meet.is_subspace_of(&f, &sb));
        prop_assert_eq!(sa.dim(), rank_mod_p(2, &a));
    }

    #[test]
    fn rank_matches_oracle_mod_3(rows in prop::collection::vec(prop::collection::vec(0u32..3, 5), 1..5)) {
        let f = GaloisField::prime(3);
        let m = Mat::from_rows(5, &rows);
        prop_assert_eq!(rank(&f, &m), rank_mod_p(3, &rows));
    }
}

/// Solutions of `A x = 0` by listing every `x`.
fn brute_kernel(p: u32, a: &Mat) -> BTreeSet<Vec<u32>> {
    let cols = a.cols();
    let all: Vec<Vec<u32>> = span_mod_p(p, &(0..cols).map(|i| (0..cols).map(|j| u32::from(i == j)).collect()).collect::<Vec<_>>());
    all.into_iter()
        .filter(|x| (0..a.rows()).all(|i| a.row(i).iter().zip(x).map(|(&u, &v)| u * v).sum::<u32>() % p == 0))
        .collect()
}

/// Every vector of the span of `gens` in `F_p^len`.
fn listed(p: u32, len: usize, gens: &[Vec<u32>]) -> BTreeSet<Vec<u32>> {
    if gens.is_empty() {
        return BTreeSet::from([vec![0; len]]);
    }
    span_mod_p(p, gens).into_iter().collect()
}

#[test]
fn kernel_matches_exhaustive_oracle() {
    // every matrix over F_2 up to 3x4
    let f = f2();
    for rows in 1..=3usize {
        for cols in 1..=4usize {
            for bits in 0u32..(1 << (rows * cols)) {
                let data = (0..rows * cols).map(|i| (bits >> i) & 1).collect();
                let a = Mat::from_vec(rows, cols, data);
                let k = kernel(&f, &a);
                assert_eq!(listed(2, cols, &k.vectors()), brute_kernel(2, &a), "{a:?}");
                assert_eq!(k.dim() + rank(&f, &a), cols);
            }
        }
    }
    // a sample over F_3
    let f = GaloisField::prime(3);
    for seed in 0u32..3u32.pow(6) {
        let data = (0..6).map(|i| (seed / 3u32.pow(i)) % 3).collect();
        let a = Mat::from_vec(2, 3, data);
        assert_eq!(listed(3, 3, &kernel(&f, &a).vectors()), brute_kernel(3, &a));
    }
}

#[test]
fn subspace_enumeration_counts() {
    let f = f2();
    let b = Budget::default();
    for (n, k) in [(4, 2), (5, 2), (5, 3), (6, 3)] {
        let all: Vec<SubspaceBasis> = enumerate_subspaces(&f, n, k, &b).unwrap().collect();
        assert_eq!(num_bigint::BigUint::from(all.len()), qbinom(n as i64, k as i64, 2));
        let distinct: BTreeSet<Vec<Vec<u32>>> = all.iter().map(|s| s.basis().row_vecs()).collect();
        assert_eq!(distinct.len(), all.len());
    }
}
