//! Dense univariate polynomials over a [`GaloisField`], low degree first.
//!
//! Only what irreducibility testing and minimal polynomials need.

use super::gf::{Elem, GaloisField};

pub type Poly = Vec<Elem>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Degree, `None` for the zero polynomial.
pub fn degree(a: &[Elem]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(f: &GaloisField, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            f.add(x, y)
        })
        .collect();
    trim(out)
}

pub fn sub(f: &GaloisField, a: &[Elem], b: &[Elem]) -> Poly {
    let nb: Poly = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn mul(f: &GaloisField, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub fn rem(f: &GaloisField, a: &[Elem], b: &[Elem]) -> Poly {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]);
    let mut r = trim(a.to_vec());
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (k, &bk) in b.iter().enumerate().take(db + 1) {
            r[shift + k] = f.sub(r[shift + k], f.mul(c, bk));
        }
        r = trim(r);
    }
    r
}

pub fn gcd(f: &GaloisField, a: &[Elem], b: &[Elem]) -> Poly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    make_monic(f, x)
}

pub fn make_monic(f: &GaloisField, a: Poly) -> Poly {
    match degree(&a) {
        None => a,
        Some(d) => {
            let li = f.inv(a[d]);
            a.iter().map(|&c| f.mul(c, li)).collect()
        }
    }
}

/// `base^e mod m`.
pub fn pow_mod(f: &GaloisField, base: &[Elem], e: u64, m: &[Elem]) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(f, base, m);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(f, &mul(f, &acc, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    rem(f, &acc, m)
}

pub fn eval(f: &GaloisField, a: &[Elem], x: Elem) -> Elem {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Ben-Or irreducibility test: `f` of degree `d` is irreducible iff
/// `gcd(f, X^(Q^i) - X) = 1` for every `1 <= i <= d/2`.
pub fn is_irreducible(field: &GaloisField, f: &[Elem]) -> bool {
    let Some(d) = degree(f) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = pow_mod(field, &h, u64::from(field.order()), f);
        let g = gcd(field, f, &sub(field, &h, &x));
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Lexicographically least monic irreducible polynomial of degree `d`.
///
/// Candidates `X^d + sum_{i<d} c_i X^i` are visited in increasing order of
/// `sum c_i Q^i`, so for `d = 4` over `F_2` the answer is `X^4 + X + 1`.
pub fn least_irreducible(field: &GaloisField, d: usize) -> Poly {
    let q = u64::from(field.order());
    let count = q.checked_pow(d as u32).expect("search space overflow");
    for idx in 0..count {
        let mut c = idx;
        let mut poly: Poly = (0..d)
            .map(|_| {
                let v = (c % q) as Elem;
                c /= q;
                v
            })
            .collect();
        poly.push(1);
        if is_irreducible(field, &poly) {
            return poly;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_irreducibles_over_f2() {
        let f2 = GaloisField::prime(2);
        assert_eq!(least_irreducible(&f2, 1), vec![0, 1]);
        assert_eq!(least_irreducible(&f2, 2), vec![1, 1, 1]);
        assert_eq!(least_irreducible(&f2, 3), vec![1, 1, 0, 1]);
        assert_eq!(least_irreducible(&f2, 4), vec![1, 1, 0, 0, 1]);
    }

    #[test]
    fn irreducibility_matches_root_and_factor_search() {
        // Degree <= 3 over F_3: irreducible iff no root.
        let f3 = GaloisField::prime(3);
        for idx in 0..27u32 {
            let poly = vec![idx % 3, (idx / 3) % 3, idx / 9, 1];
            let has_root = (0..3).any(|x| eval(&f3, &poly, x) == 0);
            assert_eq!(is_irreducible(&f3, &poly), !has_root, "{poly:?}");
        }
        // X^4 + X^2 + 1 = (X^2 + X + 1)^2 over F_2 has no root but is reducible.
        let f2 = GaloisField::prime(2);
        assert!(!is_irreducible(&f2, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn remainder_and_gcd() {
        let f2 = GaloisField::prime(2);
        // (X^2 + 1) = (X + 1)^2
        let g = gcd(&f2, &[1, 0, 1], &[1, 1]);
        assert_eq!(g, vec![1, 1]);
        assert!(rem(&f2, &[1, 0, 1], &[1, 1]).is_empty());
    }
}
