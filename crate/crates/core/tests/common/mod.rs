//! Brute-force oracles shared by the integration tests. They use their own
//! arithmetic (schoolbook polynomials over F_p, elimination mod p) so they
//! do not lean on the code they check.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use ranklab::fields::FieldTower;
use ranklab::rankcodes::RankCode;
use ranklab::subspaces::FqSubspace;

/// `F_p[x]/(modulus)` with elements encoded as base-p digit strings, low
/// degree first. Only prime base fields are supported.
#[derive(Clone, Debug)]
pub struct PolyField {
    pub p: u32,
    pub modulus: Vec<u32>,
}

impl PolyField {
    /// The middle field of a tower over a prime field.
    pub fn mid_of(t: &FieldTower) -> Self {
        assert_eq!(t.e(), 1, "oracle needs a prime base field");
        PolyField {
            p: t.p(),
            modulus: t.modulus_mid(),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.degree() as u32)
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.degree()];
        for x in d.iter_mut() {
            *x = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p;
        let n = self.degree();
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * n];
        for i in 0..n {
            for j in 0..n {
                prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
            }
        }
        // reduce with the monic modulus
        for deg in (n..2 * n).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            for (k, &m) in self.modulus.iter().enumerate() {
                let idx = deg - n + k;
                prod[idx] = (prod[idx] + (p - c) * m % p) % p;
            }
        }
        self.pack(&prod[..n])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn frob(&self, a: u32) -> u32 {
        self.pow(a, u64::from(self.p))
    }

    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut y = a;
        for _ in 0..self.degree() {
            acc = self.add(acc, y);
            y = self.frob(y);
        }
        acc
    }

    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// Rank of a matrix over `F_p` by plain elimination.
pub fn rank_mod_p(p: u32, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| u64::from(x)).collect()).collect();
    let p = u64::from(p);
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| !m[i][c].is_multiple_of(p)) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = (1..p).find(|&x| x * m[rank][c] % p == 1).unwrap();
        for x in m[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c];
                let pivot = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All `F_p`-combinations of `gens`, each a flat vector mod p.
pub fn span_mod_p(p: u32, gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let len = gens.first().map_or(0, Vec::len);
    let total = (p as usize).pow(gens.len() as u32);
    (0..total)
        .map(|mut idx| {
            let mut v = vec![0u32; len];
            for g in gens {
                let c = (idx % p as usize) as u32;
                idx /= p as usize;
                for (x, &y) in v.iter_mut().zip(g) {
                    *x = (*x + c * y) % p;
                }
            }
            v
        })
        .collect()
}

/// Rank distribution of a code over a prime field by listing every codeword.
pub fn brute_rank_distribution(c: &RankCode) -> Vec<u64> {
    let p = c.q() as u32;
    assert!(c.field().degree() == 1, "oracle needs a prime field");
    let (m, n) = (c.m(), c.n());
    let gens: Vec<Vec<u32>> = c.basis().iter().map(|b| b.data().to_vec()).collect();
    let mut a = vec![0u64; m.min(n) + 1];
    for flat in span_mod_p(p, &gens) {
        let rows: Vec<Vec<u32>> = flat.chunks(n).map(<[u32]>::to_vec).collect();
        a[rank_mod_p(p, &rows)] += 1;
    }
    a
}

pub fn as_u64(v: &[BigUint]) -> Vec<u64> {
    v.iter().map(|x| u64::try_from(x).unwrap()).collect()
}

/// Every vector of `U` (including 0) as an element of `F_(q^n)^r`.
pub fn subspace_vectors(u: &FqSubspace) -> Vec<Vec<u32>> {
    let f = PolyField::mid_of(u.tower());
    let basis = u.basis_mid();
    let (p, r) = (f.p as usize, u.r());
    (0..p.pow(basis.len() as u32))
        .map(|mut idx| {
            let mut v = vec![0u32; r];
            for b in basis {
                let c = (idx % p) as u32;
                idx /= p;
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(c, y));
                }
            }
            v
        })
        .collect()
}

/// Leading nonzero entry scaled to 1; `None` for the zero vector.
pub fn normalize(f: &PolyField, v: &[u32]) -> Option<Vec<u32>> {
    let lead = *v.iter().find(|&&x| x != 0)?;
    let inv = (1..f.order()).find(|&x| f.mul(x, lead) == 1).unwrap();
    Some(v.iter().map(|&x| f.mul(x, inv)).collect())
}

/// Every projective point (normalized) of `F_(q^n)^r`.
pub fn all_points(f: &PolyField, r: usize) -> Vec<Vec<u32>> {
    let qn = f.order() as usize;
    (1..qn.pow(r as u32))
        .filter_map(|mut idx| {
            let v: Vec<u32> = (0..r)
                .map(|_| {
                    let x = (idx % qn) as u32;
                    idx /= qn;
                    x
                })
                .collect();
            normalize(f, &v).filter(|w| *w == v)
        })
        .collect()
}

/// `log_q` of a power of q.
pub fn log_q(q: u64, mut x: u64) -> usize {
    let mut e = 0;
    while x > 1 {
        assert_eq!(x % q, 0);
        x /= q;
        e += 1;
    }
    e
}

/// Point weights of `L_U`: `w(P) = dim_q(U ∩ P)` for points with positive
/// weight.
pub fn brute_point_weights(u: &FqSubspace) -> BTreeMap<Vec<u32>, usize> {
    let f = PolyField::mid_of(u.tower());
    let mut counts: HashMap<Vec<u32>, u64> = HashMap::new();
    for v in subspace_vectors(u) {
        if let Some(pt) = normalize(&f, &v) {
            *counts.entry(pt).or_default() += 1;
        }
    }
    let q = u64::from(f.p);
    counts.into_iter().map(|(pt, c)| (pt, log_q(q, c + 1))).collect()
}

/// `dim_q(U ∩ a^⊥)` for the hyperplane with normalized coordinates `a`.
pub fn brute_hyperplane_weights(u: &FqSubspace) -> Vec<(Vec<u32>, usize)> {
    let f = PolyField::mid_of(u.tower());
    let vecs = subspace_vectors(u);
    let q = u64::from(f.p);
    all_points(&f, u.r())
        .into_iter()
        .map(|a| {
            let c = vecs.iter().filter(|v| f.dot(&a, v) == 0).count() as u64;
            (a, log_q(q, c))
        })
        .collect()
}

/// Whether `U` meets every `F_(q^n)`-subspace of dimension `h` in dimension
/// at most `h`, checked for `h = 1` through point weights and for larger
/// `h` through spans of `h` points of `L_U`.
pub fn brute_is_scattered(u: &FqSubspace) -> bool {
    brute_point_weights(u).values().all(|&w| w <= 1)
}

/// Weight enumerator of the `F_(q^n)`-linear code generated by the rows of
/// `gen`, counting every codeword.
pub fn brute_hamming_enumerator(f: &PolyField, gen: &[Vec<u32>]) -> BTreeMap<usize, u64> {
    let qn = f.order() as usize;
    let len = gen.first().map_or(0, Vec::len);
    let mut out = BTreeMap::new();
    for mut idx in 1..qn.pow(gen.len() as u32) {
        let mut cw = vec![0u32; len];
        for g in gen {
            let c = (idx % qn) as u32;
            idx /= qn;
            for (x, &y) in cw.iter_mut().zip(g) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        *out.entry(cw.iter().filter(|&&x| x != 0).count()).or_insert(0) += 1;
    }
    out
}
