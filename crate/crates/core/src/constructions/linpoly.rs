use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fields::{Elem, FieldTower, Level};
use crate::fqlinalg::{rank, Mat};
use crate::rankcodes::RankCode;
use crate::subspaces::FqSubspace;

/// A `q`-polynomial `sum a_i x^(q^i)` over the field at `level`, reduced
/// modulo `x^(q^N) - x` where `N` is the degree of the level over `F_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearizedPoly {
    tower: Arc<FieldTower>,
    level: Level,
    coeffs: Vec<Elem>,
}

impl LinearizedPoly {
    /// Coefficients `a_0, a_1, ...`; exponents wrap modulo `N`.
    pub fn new(tower: Arc<FieldTower>, level: Level, coeffs: &[Elem]) -> Result<Self> {
        let big_n = tower.degree_over_base(level);
        let field = tower.field(level).clone();
        let mut reduced = vec![0; big_n];
        for (i, &a) in coeffs.iter().enumerate() {
            if a >= field.order() {
                return Err(Error::Malformed(format!("coefficient {a} outside the field")));
            }
            reduced[i % big_n] = field.add(reduced[i % big_n], a);
        }
        Ok(LinearizedPoly {
            tower,
            level,
            coeffs: reduced,
        })
    }

    /// `a x^(q^s)`.
    pub fn monomial(tower: Arc<FieldTower>, level: Level, a: Elem, s: usize) -> Result<Self> {
        let mut c = vec![0; s + 1];
        c[s] = a;
        Self::new(tower, level, &c)
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Field degree `N` over `F_q`.
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = self.tower.field(self.level);
        let q = u64::from(self.tower.q());
        let mut acc = 0;
        let mut y = x;
        for &a in &self.coeffs {
            if a != 0 {
                acc = f.add(acc, f.mul(a, y));
            }
            y = f.pow(y, q);
        }
        acc
    }

    /// `a * f`.
    pub fn scale(&self, a: Elem) -> LinearizedPoly {
        let f = self.tower.field(self.level);
        LinearizedPoly {
            tower: self.tower.clone(),
            level: self.level,
            coeffs: self.coeffs.iter().map(|&c| f.mul(a, c)).collect(),
        }
    }

    /// Matrix over `F_q` in the fixed basis; column `c` holds the
    /// coordinates of `f(basis_c)`.
    pub fn to_matrix(&self) -> Mat {
        map_matrix(&self.tower, self.level, self.degree(), |x| self.eval(x))
    }

    pub fn rank(&self) -> usize {
        rank(self.tower.base(), &self.to_matrix())
    }

    /// `{(f_1(x), ..., f_r(x)) : x in F_(q^n)}` for polynomials over the
    /// middle field.
    pub fn graph_subspace(fs: &[LinearizedPoly]) -> Result<FqSubspace> {
        let tower = common_tower(fs, Level::Mid)?;
        FqSubspace::from_linear_map(tower, fs.len(), |x| fs.iter().map(|f| f.eval(x)).collect())
    }
}

/// Matrix of an `F_q`-linear map from the span of the first `domain_dim`
/// basis elements into the field at `level`.
pub(crate) fn map_matrix(
    tower: &FieldTower,
    level: Level,
    domain_dim: usize,
    f: impl Fn(Elem) -> Elem,
) -> Mat {
    let q = tower.q();
    let cols: Vec<Vec<Elem>> = (0..domain_dim)
        .map(|c| tower.flatten(level, f(q.pow(c as u32))))
        .collect();
    Mat::from_cols(tower.degree_over_base(level), &cols)
}

fn common_tower(fs: &[LinearizedPoly], level: Level) -> Result<Arc<FieldTower>> {
    let first = fs
        .first()
        .ok_or_else(|| Error::InvalidParams("no polynomials given".into()))?;
    for f in fs {
        if *f.tower != *first.tower || f.level != level {
            return Err(Error::TowerMismatch);
        }
    }
    Ok(first.tower.clone())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_gabidulin_params(big_n: usize, k: usize, s: usize) -> Result<()> {
    if k == 0 || k >= big_n {
        return Err(Error::KTooLarge { k, n: big_n });
    }
    let g = gcd(s, big_n);
    if g != 1 {
        return Err(Error::GcdViolation { gcd: g });
    }
    Ok(())
}

/// `F_q`-basis `{γ_j x^(q^(si))}` of a span of monomials, `γ_j` running over
/// the basis of the field.
fn monomial_code(tower: &Arc<FieldTower>, level: Level, exps: &[usize]) -> Result<RankCode> {
    let big_n = tower.degree_over_base(level);
    let mut mats = Vec::with_capacity(big_n * exps.len());
    for &e in exps {
        for gamma in basis_elems(tower, level) {
            mats.push(LinearizedPoly::monomial(tower.clone(), level, gamma, e)?.to_matrix());
        }
    }
    RankCode::new(tower.base().clone(), big_n, big_n, &mats)
}

fn basis_elems(tower: &FieldTower, level: Level) -> Vec<Elem> {
    let q = tower.q();
    (0..tower.degree_over_base(level))
        .map(|c| q.pow(c as u32))
        .collect()
}

/// The generalized Gabidulin code `G_(k,s)` over the field at `level`:
/// maps `a_0 x + a_1 x^(q^s) + ... + a_(k-1) x^(q^(s(k-1)))`.
pub fn gabidulin_at(tower: &Arc<FieldTower>, level: Level, k: usize, s: usize) -> Result<RankCode> {
    let big_n = tower.degree_over_base(level);
    check_gabidulin_params(big_n, k, s)?;
    let exps: Vec<usize> = (0..k).map(|i| (s * i) % big_n).collect();
    monomial_code(tower, level, &exps)
}

/// `G_(k,s)` on `F_(q^N)` with `q = p^e`.
pub fn gabidulin(p: u64, e: usize, big_n: usize, k: usize, s: usize) -> Result<RankCode> {
    check_gabidulin_params(big_n, k, s)?;
    let tower = crate::fields::make_tower(p, e, big_n, 1)?;
    gabidulin_at(&tower, Level::Mid, k, s)
}

#[derive(Debug, Clone)]
pub struct TwistedGabidulin {
    pub code: RankCode,
    /// `η = 0`, so the code is `G_(k,s)`.
    pub untwisted: bool,
}

/// The generalized twisted Gabidulin code `H_(k,s)(η, c)` on the middle
/// field: maps `a_0 x + ... + a_(k-1) x^(q^(s(k-1))) + η a_0^(q^c) x^(q^(sk))`.
pub fn twisted_gabidulin(
    tower: &Arc<FieldTower>,
    k: usize,
    s: usize,
    eta: Elem,
    c: usize,
) -> Result<TwistedGabidulin> {
    let big_n = tower.n();
    check_gabidulin_params(big_n, k, s)?;
    if c >= big_n {
        return Err(Error::InvalidParams(format!("c = {c} must be below N = {big_n}")));
    }
    let f = tower.mid();
    if eta >= f.order() {
        return Err(Error::Malformed(format!("η = {eta} outside F_(q^N)")));
    }
    if !eta_condition_holds(tower, k, eta) {
        return Err(Error::EtaConditionViolated);
    }
    let mut mats = Vec::with_capacity(big_n * k);
    for gamma in basis_elems(tower, Level::Mid) {
        let twisted = f.mul(eta, tower.frobenius(Level::Mid, gamma, c));
        let mut coeffs = vec![0; big_n];
        coeffs[0] = gamma;
        let top = (s * k) % big_n;
        coeffs[top] = f.add(coeffs[top], twisted);
        mats.push(LinearizedPoly::new(tower.clone(), Level::Mid, &coeffs)?.to_matrix());
        for i in 1..k {
            mats.push(
                LinearizedPoly::monomial(tower.clone(), Level::Mid, gamma, (s * i) % big_n)?.to_matrix(),
            );
        }
    }
    let code = RankCode::new(tower.base().clone(), big_n, big_n, &mats)?;
    Ok(TwistedGabidulin {
        code,
        untwisted: eta == 0,
    })
}

/// `N(η) = η^((q^N - 1)/(q - 1)) != (-1)^(Nk)`.
pub fn eta_condition_holds(tower: &FieldTower, k: usize, eta: Elem) -> bool {
    let norm = tower.norm_mid(eta);
    let sign = if (tower.n() * k).is_multiple_of(2) {
        1
    } else {
        tower.base().neg(1)
    };
    norm != sign
}

#[derive(Debug, Clone)]
pub struct SheekeyCode {
    pub code: RankCode,
    /// The `f_i` are dependent over `F_(q^n)`, so the dimension is below
    /// `rn`.
    pub degenerate: bool,
}

/// `S_(f_1..f_r) = {a_1 f_1 + ... + a_r f_r : a_i in F_(q^n)}`.
pub fn sheekey_code(fs: &[LinearizedPoly]) -> Result<SheekeyCode> {
    let tower = common_tower(fs, Level::Mid)?;
    let n = tower.n();
    let mut mats = Vec::with_capacity(n * fs.len());
    for f in fs {
        for gamma in basis_elems(&tower, Level::Mid) {
            mats.push(f.scale(gamma).to_matrix());
        }
    }
    let code = RankCode::new(tower.base().clone(), n, n, &mats)?;
    let degenerate = code.dim() < n * fs.len();
    Ok(SheekeyCode { code, degenerate })
}

/// The restriction of a Gabidulin code on `F_(q^(nt))` to `F_(q^n)`, with
/// the subspace of maps vanishing at 1 and its ordinary dual.
#[derive(Debug, Clone)]
pub struct GabidulinRestriction {
    pub code: RankCode,
    /// `{α : sum_(j,i) ξ^i α_(j,i)^(q^j) = 0}` in coordinates ordered
    /// `j*t + i` (the basis `f_(j,i) = ξ^i x^(q^j)`).
    pub u: FqSubspace,
    pub u_dual: FqSubspace,
    /// `G: α -> f_α(1)`, an `nt × rn` matrix with kernel `U`.
    pub g: Mat,
}

/// Restricts `{a_0 x + ... + a_ι x^(q^ι) : a_i in F_(q^(nt))}` to the
/// domain `F_(q^n)`, where `n` and `t` come from the tower.
pub fn gabidulin_restriction(tower: &Arc<FieldTower>, iota: usize) -> Result<GabidulinRestriction> {
    let (n, t) = (tower.n(), tower.t());
    if iota >= n {
        return Err(Error::InvalidParams(format!("ι = {iota} must be below n = {n}")));
    }
    let nt = n * t;
    if iota + 1 >= nt {
        return Err(Error::KTooLarge { k: iota + 1, n: nt });
    }
    let r = t * (iota + 1);
    let top = tower.top().clone();
    let mut mats = Vec::with_capacity(nt * (iota + 1));
    for j in 0..=iota {
        for a in basis_elems(tower, Level::Top) {
            mats.push(map_matrix(tower, Level::Top, n, |x| {
                top.mul(a, tower.frobenius(Level::Top, x, j))
            }));
        }
    }
    let code = RankCode::new(tower.base().clone(), nt, n, &mats)?;

    // G column (j*t + i, a) = coordinates of ξ^i (g^a)^(q^j).
    let xi_pow = |i: usize| tower.mid().order().pow(i as u32);
    let mut cols = Vec::with_capacity(r * n);
    for j in 0..=iota {
        for i in 0..t {
            for a in tower.mid_basis() {
                let v = top.mul(xi_pow(i), tower.frobenius(Level::Top, a, j));
                cols.push(tower.flatten(Level::Top, v));
            }
        }
    }
    let g = Mat::from_cols(nt, &cols);
    let flat_u = crate::fqlinalg::kernel(tower.base(), &g);
    let u = FqSubspace::from_flat(tower.clone(), r, flat_u);
    let u_dual = u.ordinary_dual();
    Ok(GabidulinRestriction { code, u, u_dual, g })
}

/// `{(y_0..y_(t-1), y^(q^(n-1)).., ..., y^(q^(n-ι))..)}`, the claimed
/// ordinary dual of the restriction subspace.
pub fn restriction_dual_claim(tower: &Arc<FieldTower>, iota: usize) -> Result<FqSubspace> {
    let (n, t) = (tower.n(), tower.t());
    let r = t * (iota + 1);
    let mut vecs = Vec::with_capacity(t * n);
    for i in 0..t {
        for y in tower.mid_basis() {
            let mut v = vec![0; r];
            for j in 0..=iota {
                v[j * t + i] = tower.frobenius(Level::Mid, y, (n - j) % n);
            }
            vecs.push(v);
        }
    }
    FqSubspace::new(tower.clone(), r, &vecs)
}
