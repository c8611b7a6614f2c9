use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::gf::{is_prime, Elem, GaloisField};
use super::poly;
use crate::error::{Error, Result};

/// Default cap on `q^(nt)` for tower construction.
pub const DEFAULT_TOWER_BUDGET: u64 = 1 << 24;

/// Fixed-point counts of the Frobenius are verified up to this field size.
const FIXED_POINT_CHECK_LIMIT: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// `F_q`
    Base,
    /// `F_(q^n)`
    Mid,
    /// `F_(q^(nt))`
    Top,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::Base => "base",
            Level::Mid => "mid",
            Level::Top => "top",
        }
    }
}

/// A field element tagged with its tower level, stored by its prime-field
/// coefficient vector. This is the portable form; arithmetic uses [`Elem`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fe {
    pub level: Level,
    pub coeffs: Vec<u32>,
}

/// `F_q ⊆ F_(q^n) ⊆ F_(q^(nt))` with `q = p^e`.
///
/// Every modulus is the lexicographically least monic irreducible polynomial
/// of its degree over the level below, so two towers with the same `(p,e,n,t)`
/// are identical and serialized elements are portable.
#[derive(Debug, Clone)]
pub struct FieldTower {
    p: u32,
    e: usize,
    n: usize,
    t: usize,
    base: Arc<GaloisField>,
    mid: Arc<GaloisField>,
    top: Arc<GaloisField>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.e, self.n, self.t) == (other.p, other.e, other.n, other.t)
    }
}

impl Eq for FieldTower {}

/// `make_tower` with the default size budget.
pub fn make_tower(p: u64, e: usize, n: usize, t: usize) -> Result<Arc<FieldTower>> {
    FieldTower::with_budget(p, e, n, t, DEFAULT_TOWER_BUDGET).map(Arc::new)
}

fn extend(parent: &Arc<GaloisField>, degree: usize) -> Arc<GaloisField> {
    if degree == 1 {
        return parent.clone();
    }
    let modulus = poly::least_irreducible(parent, degree);
    Arc::new(GaloisField::extension(parent.clone(), modulus))
}

impl FieldTower {
    pub fn with_budget(p: u64, e: usize, n: usize, t: usize, budget: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 || n == 0 || t == 0 {
            return Err(Error::InvalidParams("e, n, t must be at least 1".into()));
        }
        let total = e * n * t;
        let size = (p as u128).checked_pow(total as u32);
        match size {
            Some(s) if s <= u128::from(budget) && s <= u128::from(u32::MAX) => {}
            _ => {
                return Err(Error::budget(
                    "tower size q^(nt)",
                    format!("{p}^{total}"),
                    budget,
                ))
            }
        }
        let prime = Arc::new(GaloisField::prime(p as u32));
        let base = extend(&prime, e);
        let mid = extend(&base, n);
        let top = extend(&mid, t);
        let tower = FieldTower {
            p: p as u32,
            e,
            n,
            t,
            base,
            mid,
            top,
        };
        tower.verify()?;
        Ok(tower)
    }

    fn verify(&self) -> Result<()> {
        for (field, parent, d) in [
            (&self.base, None, self.e),
            (&self.mid, Some(&self.base), self.n),
            (&self.top, Some(&self.mid), self.t),
        ] {
            if d == 1 {
                continue;
            }
            let parent = parent.unwrap_or_else(|| field.parent().expect("extension"));
            if !poly::is_irreducible(parent, field.modulus()) {
                return Err(Error::Internal("tower modulus is reducible".into()));
            }
        }
        if self.mid.order() <= FIXED_POINT_CHECK_LIMIT {
            let q = u64::from(self.q());
            let fixed = self
                .mid
                .elements()
                .filter(|&x| self.mid.pow(x, q) == x)
                .count();
            if fixed != self.q() as usize {
                return Err(Error::Internal(format!(
                    "Frobenius fixes {fixed} elements, expected q = {}",
                    self.q()
                )));
            }
        }
        Ok(())
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> usize {
        self.e
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn t(&self) -> usize {
        self.t
    }

    /// `q = p^e`
    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn base(&self) -> &Arc<GaloisField> {
        &self.base
    }
    pub fn mid(&self) -> &Arc<GaloisField> {
        &self.mid
    }
    pub fn top(&self) -> &Arc<GaloisField> {
        &self.top
    }

    pub fn field(&self, level: Level) -> &Arc<GaloisField> {
        match level {
            Level::Base => &self.base,
            Level::Mid => &self.mid,
            Level::Top => &self.top,
        }
    }

    /// Degree of a level over `F_q`.
    pub fn degree_over_base(&self, level: Level) -> usize {
        match level {
            Level::Base => 1,
            Level::Mid => self.n,
            Level::Top => self.n * self.t,
        }
    }

    /// Monic moduli as element encodings over the level below.
    pub fn modulus_mid(&self) -> Vec<Elem> {
        if self.n == 1 {
            vec![0, 1]
        } else {
            self.mid.modulus().to_vec()
        }
    }

    pub fn modulus_top(&self) -> Vec<Elem> {
        if self.t == 1 {
            vec![0, 1]
        } else {
            self.top.modulus().to_vec()
        }
    }

    pub fn modulus_base(&self) -> Vec<Elem> {
        if self.e == 1 {
            vec![0, 1]
        } else {
            self.base.modulus().to_vec()
        }
    }

    /// `F_q`-basis `1, g, ..., g^(n-1)` of `F_(q^n)` with `g` the class of `X`.
    pub fn mid_basis(&self) -> Vec<Elem> {
        let q = self.q();
        (0..self.n).map(|a| q.pow(a as u32)).collect()
    }

    /// `F_q`-basis `g^a xi^b` of `F_(q^(nt))`, indexed `a + n b`.
    pub fn top_basis(&self) -> Vec<Elem> {
        let q = self.q();
        (0..self.n * self.t).map(|a| q.pow(a as u32)).collect()
    }

    /// Coordinates over `F_q` of an element at `level`, in the basis above.
    pub fn flatten(&self, level: Level, x: Elem) -> Vec<Elem> {
        let q = self.q();
        let mut x = x;
        (0..self.degree_over_base(level))
            .map(|_| {
                let d = x % q;
                x /= q;
                d
            })
            .collect()
    }

    pub fn unflatten(&self, coords: &[Elem]) -> Elem {
        let q = self.q();
        coords.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// `x^(q^s)`, with `s` reduced modulo the degree of `level` over `F_q`.
    pub fn frobenius(&self, level: Level, x: Elem, s: usize) -> Elem {
        let d = self.degree_over_base(level);
        let f = self.field(level);
        let mut y = x;
        for _ in 0..(s % d) {
            y = f.pow(y, u64::from(self.q()));
        }
        y
    }

    /// `Tr_(q^n/q)(x) = sum_(i<n) x^(q^i)` for `x` in the middle field.
    pub fn trace_mid(&self, x: Elem) -> Elem {
        let f = &self.mid;
        let mut acc = 0;
        let mut y = x;
        for _ in 0..self.n {
            acc = f.add(acc, y);
            y = f.pow(y, u64::from(self.q()));
        }
        acc
    }

    pub fn trace_to_base(&self, x: &Fe) -> Result<Fe> {
        if x.level != Level::Mid {
            return Err(Error::WrongLevel {
                expected: "mid",
                got: x.level.name(),
            });
        }
        let v = self.trace_mid(self.elem(x)?);
        Ok(self.fe(Level::Base, v))
    }

    /// `N_(q^n/q)(x) = x^((q^n-1)/(q-1))`.
    pub fn norm_mid(&self, x: Elem) -> Elem {
        let q = u64::from(self.q());
        let qn = u64::from(self.mid.order());
        self.mid.pow(x, (qn - 1) / (q - 1))
    }

    /// Monic minimal polynomial over `F_q` of `x`, low degree first, as the
    /// product of `(X - x^(q^i))` over the distinct conjugates.
    pub fn minimal_polynomial(&self, level: Level, x: Elem) -> Vec<Elem> {
        let f = self.field(level);
        let mut conj = vec![x];
        let mut y = f.pow(x, u64::from(self.q()));
        while y != x {
            conj.push(y);
            y = f.pow(y, u64::from(self.q()));
        }
        let prod = conj.iter().fold(vec![1], |acc, &c| {
            poly::mul(f, &acc, &[f.neg(c), 1])
        });
        debug_assert!(prod.iter().all(|&c| c < self.q()));
        prod
    }

    pub fn fe(&self, level: Level, x: Elem) -> Fe {
        Fe {
            level,
            coeffs: self.field(level).prime_coeffs(x),
        }
    }

    pub fn elem(&self, x: &Fe) -> Result<Elem> {
        self.field(x.level)
            .from_prime_coeffs(&x.coeffs)
            .ok_or_else(|| Error::Malformed(format!("bad coefficient vector {:?}", x.coeffs)))
    }

    /// Reads an element expected at `level`; base elements are accepted in
    /// higher levels (the encoding of a subfield element does not change).
    pub fn elem_at(&self, x: &Fe, level: Level) -> Result<Elem> {
        let v = self.elem(x)?;
        if x.level > level {
            return Err(Error::WrongLevel {
                expected: level.name(),
                got: x.level.name(),
            });
        }
        Ok(v)
    }

    pub fn spec(&self) -> TowerSpec {
        TowerSpec {
            p: self.p,
            e: self.e,
            n: self.n,
            t: self.t,
            modulus_base: self.modulus_base(),
            modulus_mid: self.modulus_mid(),
            modulus_top: self.modulus_top(),
        }
    }

    pub fn from_spec(spec: &TowerSpec) -> Result<Arc<FieldTower>> {
        let tower = make_tower(u64::from(spec.p), spec.e, spec.n, spec.t)?;
        if tower.spec() != *spec {
            return Err(Error::Malformed(
                "tower moduli differ from the canonical choice".into(),
            ));
        }
        Ok(tower)
    }
}

/// Serialized tower: parameters and the moduli, coefficients as element
/// encodings of the level below.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TowerSpec {
    pub p: u32,
    pub e: usize,
    pub n: usize,
    pub t: usize,
    pub modulus_base: Vec<Elem>,
    pub modulus_mid: Vec<Elem>,
    pub modulus_top: Vec<Elem>,
}
