//! The canonical corpus of small subspaces and codes used by the tests and
//! written to disk under a versioned directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::constructions::{c_ug, gabidulin, gabidulin_restriction, pseudoregulus_subspace, twisted_gabidulin};
use crate::error::Result;
use crate::fields::make_tower;
use crate::rankcodes::RankCode;
use crate::serial::{load_code, load_subspace, write_json, RankCodeJson, SubspaceJson};
use crate::subspaces::FqSubspace;

pub const CORPUS_VERSION: &str = "v1";

#[derive(Debug, Clone)]
pub struct SubspaceFixture {
    pub name: &'static str,
    pub u: FqSubspace,
    /// Set when `U` is maximum h-scattered.
    pub max_scattered_h: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct CodeFixture {
    pub name: &'static str,
    pub code: RankCode,
    /// Expected minimum distance when the code is MRD.
    pub mrd_distance: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Corpus {
    pub subspaces: Vec<SubspaceFixture>,
    pub codes: Vec<CodeFixture>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub subspaces: Vec<String>,
    pub codes: Vec<String>,
}

impl Corpus {
    pub fn subspace(&self, name: &str) -> Option<&FqSubspace> {
        self.subspaces.iter().find(|s| s.name == name).map(|s| &s.u)
    }

    pub fn code(&self, name: &str) -> Option<&RankCode> {
        self.codes.iter().find(|c| c.name == name).map(|c| &c.code)
    }
}

pub fn corpus() -> Result<Corpus> {
    let t24 = make_tower(2, 1, 4, 1)?;
    let t23 = make_tower(2, 1, 3, 1)?;
    let t25 = make_tower(2, 1, 5, 1)?;
    let t232 = make_tower(2, 1, 3, 2)?;
    let t34 = make_tower(3, 1, 4, 1)?;

    let pseudo = pseudoregulus_subspace(&t24, 2, 1)?;
    let pseudo5 = pseudoregulus_subspace(&t25, 2, 1)?;
    let restriction = gabidulin_restriction(&t232, 1)?;
    let subspaces = vec![
        SubspaceFixture {
            name: "pseudoregulus_r2_n4_h1_q2",
            u: pseudo.clone(),
            max_scattered_h: Some(1),
        },
        SubspaceFixture {
            name: "pseudoregulus_r4_n4_h1_q2",
            u: pseudoregulus_subspace(&t24, 4, 1)?,
            max_scattered_h: Some(1),
        },
        SubspaceFixture {
            name: "pseudoregulus_r3_n3_h2_q2",
            u: pseudoregulus_subspace(&t23, 3, 2)?,
            max_scattered_h: Some(2),
        },
        SubspaceFixture {
            name: "pseudoregulus_r4_n3_h1_q2",
            u: pseudoregulus_subspace(&t23, 4, 1)?,
            max_scattered_h: Some(1),
        },
        SubspaceFixture {
            name: "pseudoregulus_r2_n5_h1_q2",
            u: pseudo5.clone(),
            max_scattered_h: Some(1),
        },
        SubspaceFixture {
            name: "pseudoregulus_dual_r2_n4_q2",
            u: pseudo.ordinary_dual(),
            max_scattered_h: Some(1),
        },
        SubspaceFixture {
            name: "restriction_udual_n3_t2_q2",
            u: restriction.u_dual.clone(),
            max_scattered_h: Some(1),
        },
        SubspaceFixture {
            name: "pseudoregulus_prefix_k3_r2_n4_q2",
            u: FqSubspace::new(t24.clone(), 2, &pseudo.basis_mid()[..3])?,
            max_scattered_h: None,
        },
    ];

    let gab = gabidulin(2, 1, 4, 2, 1)?;
    let eta = (1..81).find(|&x| t34.mid().pow(x, 40) != 1).expect("F_81 has non-squares");
    let codes = vec![
        CodeFixture {
            name: "gabidulin_n4_k2_s1_q2",
            code: gab.clone(),
            mrd_distance: Some(3),
        },
        CodeFixture {
            name: "gabidulin_n4_k2_s1_q2_dual",
            code: gab.delsarte_dual(),
            mrd_distance: Some(3),
        },
        CodeFixture {
            name: "twisted_gabidulin_n4_k2_s1_c0_q3",
            code: twisted_gabidulin(&t34, 2, 1, eta, 0)?.code,
            mrd_distance: Some(3),
        },
        CodeFixture {
            name: "cug_pseudoregulus_r2_n4_q2",
            code: c_ug(&pseudo)?.code,
            mrd_distance: Some(3),
        },
        CodeFixture {
            name: "cug_pseudoregulus_r2_n5_q2",
            code: c_ug(&pseudo5)?.code,
            mrd_distance: Some(4),
        },
        CodeFixture {
            name: "gabidulin_restriction_6x3_q2",
            code: restriction.code,
            mrd_distance: Some(2),
        },
    ];
    Ok(Corpus { subspaces, codes })
}

/// Writes every fixture as JSON under `root/v1/` with a manifest.
pub fn write_fixtures(root: &Path) -> Result<Vec<PathBuf>> {
    let c = corpus()?;
    let dir = root.join(CORPUS_VERSION);
    std::fs::create_dir_all(dir.join("subspaces"))?;
    std::fs::create_dir_all(dir.join("codes"))?;
    let mut written = Vec::new();
    for s in &c.subspaces {
        let p = dir.join("subspaces").join(format!("{}.json", s.name));
        write_json(&p, &SubspaceJson::from_subspace(&s.u))?;
        written.push(p);
    }
    for k in &c.codes {
        let p = dir.join("codes").join(format!("{}.json", k.name));
        write_json(&p, &RankCodeJson::from_code(&k.code))?;
        written.push(p);
    }
    let manifest = Manifest {
        version: CORPUS_VERSION.to_string(),
        subspaces: c.subspaces.iter().map(|s| s.name.to_string()).collect(),
        codes: c.codes.iter().map(|k| k.name.to_string()).collect(),
    };
    let p = dir.join("manifest.json");
    write_json(&p, &manifest)?;
    written.push(p);
    Ok(written)
}

/// Named subspaces and codes as read back from disk.
pub type LoadedCorpus = (Vec<(String, FqSubspace)>, Vec<(String, RankCode)>);

/// Reads a corpus written by [`write_fixtures`].
pub fn read_fixtures(root: &Path) -> Result<LoadedCorpus> {
    let dir = root.join(CORPUS_VERSION);
    let manifest: Manifest = crate::serial::read_json(&dir.join("manifest.json"))?;
    let subspaces = manifest
        .subspaces
        .iter()
        .map(|n| Ok((n.clone(), load_subspace(&dir.join("subspaces").join(format!("{n}.json")))?)))
        .collect::<Result<_>>()?;
    let codes = manifest
        .codes
        .iter()
        .map(|n| Ok((n.clone(), load_code(&dir.join("codes").join(format!("{n}.json")))?)))
        .collect::<Result<_>>()?;
    Ok((subspaces, codes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let written = write_fixtures(dir.path()).unwrap();
        let c = corpus().unwrap();
        assert_eq!(written.len(), c.subspaces.len() + c.codes.len() + 1);
        let (subs, codes) = read_fixtures(dir.path()).unwrap();
        for (s, (name, u)) in c.subspaces.iter().zip(&subs) {
            assert_eq!(s.name, name);
            assert_eq!(&s.u, u);
        }
        for (k, (name, code)) in c.codes.iter().zip(&codes) {
            assert_eq!(k.name, name);
            assert_eq!(&k.code, code);
        }
    }

    #[test]
    fn corpus_contents() {
        let c = corpus().unwrap();
        assert!(c.subspace("pseudoregulus_r2_n4_h1_q2").is_some());
        assert!(c.code("gabidulin_n4_k2_s1_q2").is_some());
        let r = c.code("gabidulin_restriction_6x3_q2").unwrap();
        assert_eq!((r.m(), r.n(), r.dim()), (6, 3, 12));
    }
}
