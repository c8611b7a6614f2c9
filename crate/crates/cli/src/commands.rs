use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

use ranklab::constructions::{
    c_ug, c_ug_mrd_predicate, gabidulin, mrd_to_subspace, pseudoregulus_subspace, random_scattered_search,
    twisted_gabidulin, SearchConfig, SearchOutcome,
};
use ranklab::fields::{make_tower, FieldTower};
use ranklab::fqlinalg::Mat;
use ranklab::linsets::{
    closed_form_enumerator, hyperplane_spectrum, is_column_deletion_of, projective_system_code, qsystem_code,
    qsystem_rank_distance, Convention, LinearSet,
};
use ranklab::rankcodes::{
    base_field, dual_relations_check, inequivalence_certificate, macwilliams_check, mrd_weight_distribution,
    RankCode, Side,
};
use ranklab::serial::{load_code, load_subspace, read_json, write_json, MatrixJson, RankCodeJson, SubspaceJson};
use ranklab::subspaces::FqSubspace;
use ranklab::{Budget, Error, Result};
use serde_json::{json, Value};

use crate::args::{CodeSource, Command, SubspaceSource, Triple};

/// Failure of a verb: either bad usage or a library error.
pub enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// A finished verb: its payload and whether it counts as budget exhaustion
/// (a search that ran out of time).
pub struct Outcome {
    pub results: Value,
    pub exhausted: bool,
}

impl From<Value> for Outcome {
    fn from(results: Value) -> Self {
        Outcome {
            results,
            exhausted: false,
        }
    }
}

type Run = std::result::Result<Outcome, Failure>;

/// `(p, e)` with `q = p^e`.
fn prime_power(q: u64) -> Result<(u64, usize)> {
    let f = base_field(q)?;
    Ok((u64::from(f.characteristic()), f.prime_degree()))
}

fn tower(q: u64, n: usize, t: usize) -> Result<Arc<FieldTower>> {
    let (p, e) = prime_power(q)?;
    make_tower(p, e, n, t)
}

/// The subspace and, for a pseudoregulus, its `h`.
fn load_u(src: &SubspaceSource) -> std::result::Result<(FqSubspace, Option<usize>), Failure> {
    match (&src.subspace, src.pseudoregulus) {
        (Some(path), None) => Ok((load_subspace(path)?, None)),
        (None, Some(Triple(r, n, h))) => {
            let t = tower(src.q, n, 1)?;
            Ok((pseudoregulus_subspace(&t, r, h)?, Some(h)))
        }
        _ => Err(Failure::Usage("give exactly one of --subspace or --pseudoregulus".into())),
    }
}

fn load_c(src: &CodeSource) -> std::result::Result<RankCode, Failure> {
    match (&src.code, src.gabidulin) {
        (Some(path), None) => Ok(load_code(path)?),
        (None, Some(Triple(big_n, k, s))) => {
            let (p, e) = prime_power(src.q)?;
            Ok(gabidulin(p, e, big_n, k, s)?)
        }
        _ => Err(Failure::Usage("give exactly one of --code or --gabidulin".into())),
    }
}

fn need_h(h: Option<usize>, default: Option<usize>) -> std::result::Result<usize, Failure> {
    h.or(default)
        .ok_or_else(|| Failure::Usage("--h is required unless --pseudoregulus gives it".into()))
}

fn save_code(out: &Option<std::path::PathBuf>, c: &RankCode) -> Result<()> {
    if let Some(p) = out {
        write_json(p, &RankCodeJson::from_code(c))?;
    }
    Ok(())
}

fn save_subspace(out: &Option<std::path::PathBuf>, u: &FqSubspace) -> Result<()> {
    if let Some(p) = out {
        write_json(p, &SubspaceJson::from_subspace(u))?;
    }
    Ok(())
}

fn code_summary(c: &RankCode) -> Value {
    json!({ "q": c.q(), "m": c.m(), "n": c.n(), "dim": c.dim() })
}

fn subspace_summary(u: &FqSubspace) -> Value {
    json!({
        "q": u.tower().q(),
        "n": u.n(),
        "r": u.r(),
        "k": u.k(),
        "fqn_rank": u.fqn_rank(),
    })
}

fn mrd_report(c: &RankCode, budget: &Budget) -> Result<Value> {
    let d = c.min_distance(budget)?;
    let is_mrd = c.is_mrd(budget)?;
    let dist = c.rank_distribution(budget)?;
    Ok(json!({
        "min_distance": d,
        "is_mrd": is_mrd,
        "params": [c.m(), c.n(), c.q(), d],
        "rank_distribution": serde_json::to_value(dist)?,
    }))
}

fn idealiser_summary(c: &RankCode, side: Side) -> Value {
    let i = c.idealiser(side);
    json!({
        "side": i.side,
        "dim": i.dim,
        "order": format!("{}^{}", c.q(), i.dim),
        "is_field": i.is_field,
        "field_check": i.field_check,
    })
}

pub fn run(cmd: &Command, seed: Option<u64>, budget: &Budget) -> Run {
    match cmd {
        Command::Gabidulin {
            big_n,
            k,
            s,
            q,
            mrd_check,
            out,
        } => {
            let (p, e) = prime_power(*q)?;
            let c = gabidulin(p, e, *big_n, *k, *s)?;
            save_code(out, &c)?;
            let mut v = json!({ "code": code_summary(&c), "design_distance": big_n - k + 1 });
            if *mrd_check {
                v["mrd"] = mrd_report(&c, budget)?;
            }
            Ok(v.into())
        }
        Command::TwistedGabidulin {
            big_n,
            k,
            s,
            eta,
            c,
            q,
            mrd_check,
            out,
        } => {
            let t = tower(*q, *big_n, 1)?;
            let h = twisted_gabidulin(&t, *k, *s, *eta, *c)?;
            save_code(out, &h.code)?;
            let mut v = json!({
                "code": code_summary(&h.code),
                "untwisted": h.untwisted,
                "design_distance": big_n - k + 1,
            });
            if *mrd_check {
                v["mrd"] = mrd_report(&h.code, budget)?;
            }
            Ok(v.into())
        }
        Command::Cug { src, mrd_check, out } => {
            let (u, _) = load_u(src)?;
            let cug = c_ug(&u)?;
            save_code(out, &cug.code)?;
            let iota = u.iota(budget)?;
            let predicate = c_ug_mrd_predicate(&u, budget)?;
            let mut v = json!({
                "subspace": subspace_summary(&u),
                "code": code_summary(&cug.code),
                "iota": iota,
                "mrd_predicate": predicate,
                "params": [cug.code.m(), cug.code.n(), cug.code.q(), u.n() - iota],
                "right_idealiser": idealiser_summary(&cug.code, Side::Right),
            });
            if *mrd_check {
                let d = cug.code.min_distance(budget)?;
                v["min_distance"] = json!(d);
                v["is_mrd"] = json!(cug.code.is_mrd(budget)?);
                v["params"] = json!([cug.code.m(), cug.code.n(), cug.code.q(), d]);
            }
            Ok(v.into())
        }
        Command::ExtractSubspace { src, out } => {
            let c = load_c(src)?;
            let ex = mrd_to_subspace(&c, budget)?;
            save_subspace(out, &ex.u)?;
            Ok(json!({
                "code": code_summary(&c),
                "subspace": subspace_summary(&ex.u),
                "iota": ex.iota,
                "reconstructed_equal": ex.reconstructed_equal,
                "gamma": ex.gamma,
                "min_poly": ex.min_poly,
                "conjugator": ex.h.row_vecs(),
                "u": SubspaceJson::from_subspace(&ex.u),
            })
            .into())
        }
        Command::SearchScattered {
            r,
            n,
            h,
            k,
            q,
            budget: secs,
            chains,
            max_rounds,
            out,
        } => {
            let seed = seed.ok_or_else(|| Failure::Usage("search-scattered requires --seed".into()))?;
            if !secs.is_finite() || *secs < 0.0 {
                return Err(Failure::Usage("--budget must be a non-negative number of seconds".into()));
            }
            let t = tower(*q, *n, 1)?;
            let mut cfg = SearchConfig::new(*r, *h, *k, seed, Duration::from_secs_f64(*secs));
            cfg.chains = *chains;
            cfg.max_rounds = *max_rounds;
            match random_scattered_search(&t, &cfg, budget)? {
                SearchOutcome::Found { witness, chain, round } => {
                    save_subspace(out, &witness)?;
                    Ok(json!({
                        "found": true,
                        "chain": chain,
                        "round": round,
                        "subspace": subspace_summary(&witness),
                        "u": SubspaceJson::from_subspace(&witness),
                    })
                    .into())
                }
                SearchOutcome::NotFound { rounds, best_score } => Ok(Outcome {
                    results: json!({ "found": false, "rounds": rounds, "best_score": best_score }),
                    exhausted: true,
                }),
            }
        }
        Command::ScatteredCheck { src, h } => {
            let (u, _) = load_u(src)?;
            Ok(json!({
                "subspace": subspace_summary(&u),
                "h": h,
                "h_scattered": u.is_h_scattered(*h, budget)?,
                "iota": u.iota(budget)?,
                "dimension_bound": u.check_dimension_bound(*h),
            })
            .into())
        }
        Command::Dualize {
            src,
            ordinary,
            delsarte: _,
            out,
        } => {
            let (u, _) = load_u(src)?;
            let (kind, dual) = if *ordinary {
                ("ordinary", u.ordinary_dual())
            } else {
                ("delsarte", u.delsarte_dual(budget)?.dual)
            };
            save_subspace(out, &dual)?;
            Ok(json!({
                "kind": kind,
                "subspace": subspace_summary(&u),
                "dual": subspace_summary(&dual),
                "u": SubspaceJson::from_subspace(&dual),
            })
            .into())
        }
        Command::MrdCheck { src } => {
            let c = load_c(src)?;
            let mut v = mrd_report(&c, budget)?;
            v["code"] = code_summary(&c);
            Ok(v.into())
        }
        Command::RankDist { src } => {
            let c = load_c(src)?;
            let dist = c.rank_distribution(budget)?.clone();
            let mut v = json!({ "code": code_summary(&c), "rank_distribution": serde_json::to_value(&dist).map_err(Error::from)? });
            if c.is_mrd(budget)? {
                let d = c.min_distance(budget)?;
                let closed = mrd_weight_distribution(c.m(), c.n(), c.q(), d)?;
                v["closed_form_matches"] = json!(closed.a == dist.a);
                v["dual_relations"] = json!(dual_relations_check(&c, budget)?);
            }
            Ok(v.into())
        }
        Command::Macwilliams { src } => {
            let c = load_c(src)?;
            Ok(json!({ "code": code_summary(&c), "macwilliams_holds": macwilliams_check(&c, budget)? }).into())
        }
        Command::Idealiser { src, left, right: _ } => {
            let c = load_c(src)?;
            let side = if *left { Side::Left } else { Side::Right };
            let i = c.idealiser(side);
            let mut v = idealiser_summary(&c, side);
            v["basis"] = json!(i.basis.iter().map(Mat::row_vecs).collect::<Vec<_>>());
            Ok(v.into())
        }
        Command::DualizeCode { src, out } => {
            let c = load_c(src)?;
            let d = c.delsarte_dual();
            save_code(out, &d)?;
            Ok(json!({ "code": code_summary(&c), "dual": code_summary(&d) }).into())
        }
        Command::Puncture { src, matrix, out } => {
            let c = load_c(src)?;
            let a = read_json::<MatrixJson>(matrix)?.to_mat(c.field())?;
            let p = c.puncture(&a)?;
            save_code(out, &p)?;
            Ok(json!({ "code": code_summary(&c), "punctured": code_summary(&p) }).into())
        }
        Command::CertifyInequivalent { code, other } => {
            let (a, b) = (load_code(code)?, load_code(other)?);
            let cert = inequivalence_certificate(&a, &b, budget)?;
            Ok(json!({ "certificate": cert }).into())
        }
        Command::Exclusion { src, r, h } => {
            let c = load_c(src)?;
            let n = c.n();
            let verdict = c.gabidulin_family_exclusion(*r, n, *h, budget)?;
            Ok(json!({
                "code": code_summary(&c),
                "r": r,
                "h": h,
                "right_idealiser": idealiser_summary(&c, Side::Right),
                "verdict": verdict,
            })
            .into())
        }
        Command::LinsetPoints { src } => {
            let (u, _) = load_u(src)?;
            let l = LinearSet::new(&u, budget)?;
            let points: Vec<Value> = l
                .points
                .iter()
                .map(|(p, w)| json!({ "point": p, "weight": w }))
                .collect();
            Ok(json!({
                "subspace": subspace_summary(&u),
                "size": l.len(),
                "partition_identity": l.partition_identity_holds(),
                "points": points,
            })
            .into())
        }
        Command::HyperplaneSpectrum { src, h } => {
            let (u, dh) = load_u(src)?;
            let h = need_h(*h, dh)?;
            let s = hyperplane_spectrum(&u, h, budget)?;
            let low = u.k() - u.n();
            let rows: Vec<Value> = s
                .counts
                .iter()
                .zip(&s.formula)
                .enumerate()
                .map(|(i, (c, f))| json!({ "i": i, "weight": low + i, "count": c.to_string(), "formula": f.to_string() }))
                .collect();
            Ok(json!({
                "subspace": subspace_summary(&u),
                "h": h,
                "spectrum": rows,
                "matches_formula": s.matches_formula(),
            })
            .into())
        }
        Command::ProjsysCode {
            src,
            h,
            enumerator,
            codeword_count,
        } => {
            let (u, dh) = load_u(src)?;
            let l = LinearSet::new(&u, budget)?;
            let code = projective_system_code(&l)?;
            let convention = if *codeword_count {
                Convention::Codeword
            } else {
                Convention::Projective
            };
            let mut v = json!({
                "field": code.field.order(),
                "k": code.k(),
                "N": code.length(),
                "convention": convention,
                "generator": code.generator.row_vecs(),
            });
            if *enumerator {
                let e = code.weight_enumerator(convention, budget)?;
                v["enumerator"] = json!(e.iter().map(|(w, c)| (w.to_string(), Value::String(c.to_string()))).collect::<serde_json::Map<_, _>>());
                v["min_distance"] = json!(code.min_distance(budget)?);
                if let Some(h) = h.or(dh) {
                    let closed = closed_form_enumerator(u.r(), u.n(), h, u64::from(u.tower().q()), convention)?;
                    v["closed_form_matches"] = json!(closed == e);
                }
            }
            Ok(v.into())
        }
        Command::QsystemCode { src, h } => {
            let (u, dh) = load_u(src)?;
            let h = need_h(*h, dh)?;
            let code = qsystem_code(&u, h, budget)?;
            let l = LinearSet::new(&u, budget)?;
            let full = projective_system_code(&l)?;
            Ok(json!({
                "field": code.field.order(),
                "k": code.k(),
                "N": code.length(),
                "generator": code.generator.row_vecs(),
                "min_distance": code.min_distance(budget)?,
                "rank_distance": qsystem_rank_distance(&u, budget)?,
                "column_deletion_of_projective_system": is_column_deletion_of(&code, &full),
            })
            .into())
        }
        Command::Fixtures { out } => {
            let written = ranklab::fixtures::write_fixtures(out)?;
            let rel: Vec<String> = written
                .iter()
                .map(|p| p.strip_prefix(out).unwrap_or(Path::new("")).display().to_string())
                .collect();
            Ok(json!({ "version": ranklab::fixtures::CORPUS_VERSION, "files": rel }).into())
        }
    }
}
