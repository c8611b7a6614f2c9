use std::fmt;
use std::sync::Arc;

/// Fields up to this size get discrete-log tables.
pub const LOG_TABLE_LIMIT: u64 = 1 << 20;

/// Encoded field element.
///
/// An element of `K = P[y]/(f)` is stored as `sum c_i * |P|^i` where `c_i` is
/// the encoding of its `i`-th coefficient over the parent field `P`. Unfolding
/// recursively down to the prime field, the base-`p` digits of the encoding are
/// exactly the prime-field coefficient vector of the element, so subfield
/// elements keep the same encoding after embedding.
pub type Elem = u32;

#[derive(Clone)]
struct Extension {
    parent: Arc<GaloisField>,
    degree: usize,
    /// Monic modulus over the parent, low degree first, length `degree + 1`.
    modulus: Vec<Elem>,
}

#[derive(Clone)]
struct LogTables {
    /// `exp[i] = w^i` for `i < 2(Q-1)`, so sums of two logs index directly.
    exp: Vec<Elem>,
    log: Vec<u32>,
}

/// A finite field, either prime or a simple extension of another `GaloisField`.
#[derive(Clone)]
pub struct GaloisField {
    p: u32,
    order: u32,
    /// Degree over the prime field.
    prime_degree: usize,
    ext: Option<Extension>,
    tables: Option<LogTables>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p, self.prime_degree)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.order == other.order
            && self.parent_order() == other.parent_order()
            && self.modulus() == other.modulus()
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// The prime field `F_p`. `p` must be prime; callers check primality.
    pub fn prime(p: u32) -> Self {
        let mut f = GaloisField {
            p,
            order: p,
            prime_degree: 1,
            ext: None,
            tables: None,
        };
        if u64::from(p) <= LOG_TABLE_LIMIT && p > 2 {
            f.tables = Some(f.build_tables());
        }
        f
    }

    /// `parent[y]/(modulus)`; `modulus` must be monic and irreducible.
    pub fn extension(parent: Arc<GaloisField>, modulus: Vec<Elem>) -> Self {
        let degree = modulus.len() - 1;
        debug_assert_eq!(modulus[degree], 1);
        let order = u64::from(parent.order).pow(degree as u32);
        assert!(order <= u64::from(u32::MAX), "field too large for u32 encoding");
        let mut f = GaloisField {
            p: parent.p,
            order: order as u32,
            prime_degree: parent.prime_degree * degree,
            ext: Some(Extension {
                parent,
                degree,
                modulus,
            }),
            tables: None,
        };
        if u64::from(f.order) <= LOG_TABLE_LIMIT {
            f.tables = Some(f.build_tables());
        }
        f
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn prime_degree(&self) -> usize {
        self.prime_degree
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn parent(&self) -> Option<&Arc<GaloisField>> {
        self.ext.as_ref().map(|e| &e.parent)
    }

    fn parent_order(&self) -> u32 {
        self.ext.as_ref().map_or(0, |e| e.parent.order)
    }

    /// Degree over the parent (1 for a prime field).
    pub fn degree(&self) -> usize {
        self.ext.as_ref().map_or(1, |e| e.degree)
    }

    pub fn modulus(&self) -> &[Elem] {
        self.ext.as_ref().map_or(&[], |e| &e.modulus)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order
    }

    pub fn is_f2(&self) -> bool {
        self.order == 2
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        if self.ext.is_none() {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let p = self.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut place = 1;
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * place;
            place *= p;
            a /= p;
            b /= p;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let mut a = a;
        let mut out = 0;
        let mut place = 1;
        while a > 0 {
            let d = a % p;
            out += ((p - d) % p) * place;
            place *= p;
            a /= p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            return t.exp[(t.log[a as usize] + t.log[b as usize]) as usize];
        }
        self.mul_slow(a, b)
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero");
        if let Some(t) = &self.tables {
            let m = self.order - 1;
            return t.exp[((m - t.log[a as usize]) % m) as usize];
        }
        self.pow(a, u64::from(self.order) - 2)
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Some(t) = &self.tables {
            let m = u64::from(self.order - 1);
            let idx = (u64::from(t.log[a as usize]) * (e % m)) % m;
            return t.exp[idx as usize];
        }
        let mut base = a;
        let mut e = e;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Elem) -> u64 {
        let m = u64::from(self.order) - 1;
        let mut ord = m;
        for l in prime_factors(m) {
            while ord % l == 0 && self.pow(a, ord / l) == 1 {
                ord /= l;
            }
        }
        ord
    }

    /// Least (by encoding) primitive element.
    pub fn primitive_element(&self) -> Elem {
        if let Some(t) = &self.tables {
            // Tables were generated from the least primitive element.
            return t.exp[1];
        }
        self.find_primitive()
    }

    fn find_primitive(&self) -> Elem {
        if self.order == 2 {
            return 1;
        }
        let m = u64::from(self.order) - 1;
        let factors = prime_factors(m);
        (1..self.order)
            .find(|&c| factors.iter().all(|&l| self.pow_slow(c, m / l) != 1))
            .expect("a finite field has a primitive element")
    }

    /// Splits an element into its coefficient vector over the parent field.
    pub fn to_parent_coeffs(&self, a: Elem) -> Vec<Elem> {
        let ext = self.ext.as_ref().expect("prime field has no parent");
        let po = ext.parent.order;
        let mut a = a;
        (0..ext.degree)
            .map(|_| {
                let c = a % po;
                a /= po;
                c
            })
            .collect()
    }

    pub fn from_parent_coeffs(&self, coeffs: &[Elem]) -> Elem {
        let ext = self.ext.as_ref().expect("prime field has no parent");
        let po = ext.parent.order;
        coeffs.iter().rev().fold(0, |acc, &c| acc * po + c)
    }

    /// Base-`p` digits of an element (its prime-field coefficient vector).
    pub fn prime_coeffs(&self, a: Elem) -> Vec<u32> {
        let mut a = a;
        (0..self.prime_degree)
            .map(|_| {
                let d = a % self.p;
                a /= self.p;
                d
            })
            .collect()
    }

    pub fn from_prime_coeffs(&self, digits: &[u32]) -> Option<Elem> {
        if digits.len() != self.prime_degree || digits.iter().any(|&d| d >= self.p) {
            return None;
        }
        Some(digits.iter().rev().fold(0, |acc, &d| acc * self.p + d))
    }

    fn pow_slow(&self, a: Elem, e: u64) -> Elem {
        let mut base = a;
        let mut e = e;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// Schoolbook multiplication in `parent[y]/(modulus)`.
    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let Some(ext) = &self.ext else {
            return ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as Elem;
        };
        let pf = &ext.parent;
        let d = ext.degree;
        let ca = self.to_parent_coeffs(a);
        let cb = self.to_parent_coeffs(b);
        let mut prod = vec![0; 2 * d - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = pf.add(prod[i + j], pf.mul(x, y));
            }
        }
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for (k, &mk) in ext.modulus.iter().enumerate().take(d) {
                let idx = top - d + k;
                prod[idx] = pf.sub(prod[idx], pf.mul(c, mk));
            }
            prod[top] = 0;
        }
        self.from_parent_coeffs(&prod[..d])
    }

    fn build_tables(&self) -> LogTables {
        let w = self.find_primitive();
        let m = (self.order - 1) as usize;
        let mut exp = vec![0; 2 * m.max(1)];
        let mut log = vec![0; self.order as usize];
        let mut x = 1;
        for (i, e) in exp.iter_mut().take(m).enumerate() {
            *e = x;
            log[x as usize] = i as u32;
            x = self.mul_slow(x, w);
        }
        for i in m..2 * m {
            exp[i] = exp[i - m];
        }
        LogTables { exp, log }
    }
}

pub(crate) fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && prime_factors(p) == [p]
}
