//! JSON forms of towers, subspaces and codes.

use std::path::Path;
use std::sync::Arc;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fields::{Fe, FieldTower, GaloisField, Level, TowerSpec};
use crate::fqlinalg::Mat;
use crate::rankcodes::{base_field, RankCode};
use crate::subspaces::FqSubspace;

/// `{tower, r, k, basisMid}` with every coordinate a portable [`Fe`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SubspaceJson {
    pub tower: TowerSpec,
    pub r: usize,
    pub k: usize,
    pub basis_mid: Vec<Vec<Fe>>,
}

impl SubspaceJson {
    pub fn from_subspace(u: &FqSubspace) -> Self {
        let t = u.tower();
        SubspaceJson {
            tower: t.spec(),
            r: u.r(),
            k: u.k(),
            basis_mid: u
                .basis_mid()
                .iter()
                .map(|v| v.iter().map(|&x| t.fe(Level::Mid, x)).collect())
                .collect(),
        }
    }

    pub fn to_subspace(&self) -> Result<FqSubspace> {
        let tower = FieldTower::from_spec(&self.tower)?;
        let vecs = self
            .basis_mid
            .iter()
            .map(|v| v.iter().map(|x| tower.elem_at(x, Level::Mid)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let u = FqSubspace::new(tower, self.r, &vecs)?;
        if u.k() != self.k {
            return Err(Error::Malformed(format!(
                "basis spans dimension {}, header says {}",
                u.k(),
                self.k
            )));
        }
        Ok(u)
    }
}

/// `{level, rows, cols, entries}`; entries are row-major prime-coefficient
/// arrays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub level: Level,
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<u32>>,
}

impl MatrixJson {
    pub fn from_mat(f: &GaloisField, level: Level, a: &Mat) -> Self {
        MatrixJson {
            level,
            rows: a.rows(),
            cols: a.cols(),
            entries: a.data().iter().map(|&x| f.prime_coeffs(x)).collect(),
        }
    }

    pub fn to_mat(&self, f: &GaloisField) -> Result<Mat> {
        if self.entries.len() != self.rows * self.cols {
            return Err(Error::Malformed(format!(
                "{} entries for a {}x{} matrix",
                self.entries.len(),
                self.rows,
                self.cols
            )));
        }
        let data = self
            .entries
            .iter()
            .map(|c| {
                f.from_prime_coeffs(c)
                    .ok_or_else(|| Error::Malformed(format!("bad entry {c:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::from_vec(self.rows, self.cols, data))
    }
}

/// `{q, m, n, basis}` with base-level matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCodeJson {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub basis: Vec<MatrixJson>,
}

impl RankCodeJson {
    pub fn from_code(c: &RankCode) -> Self {
        let f = c.field();
        RankCodeJson {
            q: c.q(),
            m: c.m(),
            n: c.n(),
            basis: c
                .basis()
                .iter()
                .map(|b| MatrixJson::from_mat(f, Level::Base, b))
                .collect(),
        }
    }

    pub fn to_code(&self) -> Result<RankCode> {
        let f: Arc<GaloisField> = base_field(self.q)?;
        let mats = self
            .basis
            .iter()
            .map(|b| {
                if b.level != Level::Base {
                    return Err(Error::WrongLevel {
                        expected: Level::Base.name(),
                        got: b.level.name(),
                    });
                }
                b.to_mat(&f)
            })
            .collect::<Result<Vec<_>>>()?;
        RankCode::new(f, self.m, self.n, &mats)
    }
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn load_subspace(path: &Path) -> Result<FqSubspace> {
    read_json::<SubspaceJson>(path)?.to_subspace()
}

pub fn load_code(path: &Path) -> Result<RankCode> {
    read_json::<RankCodeJson>(path)?.to_code()
}

/// Big integers as decimal strings.
pub mod big_vec {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse().map_err(D::Error::custom))
            .collect()
    }
}
