use std::collections::HashSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fields::{Elem, FieldTower};
use crate::fqlinalg::{enumerate_subspaces, normalize_projective, rank_of_rows, visit_span, SubspaceBasis};
use crate::subspaces::{pseudoregulus_block, unflatten_vec, FqSubspace};

/// Direct sum of `r/(h+1)` copies of `{(z, z^q, ..., z^(q^h))}`.
pub fn pseudoregulus_subspace(tower: &Arc<FieldTower>, r: usize, h: usize) -> Result<FqSubspace> {
    if h >= tower.n() {
        return Err(Error::InvalidParams(format!("h = {h} must be below n = {}", tower.n())));
    }
    if r == 0 || !r.is_multiple_of(h + 1) {
        return Err(Error::DivisibilityViolation(format!("h + 1 = {} does not divide r = {r}", h + 1)));
    }
    let block = pseudoregulus_block(tower.clone(), h)?;
    let mut u = block.clone();
    for _ in 1..r / (h + 1) {
        u = u.direct_sum(&block)?;
    }
    Ok(u)
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchConfig {
    pub r: usize,
    pub h: usize,
    pub k: usize,
    pub seed: u64,
    pub time_budget: Duration,
    /// Independent chains; the outcome depends on this, not on the thread
    /// count.
    pub chains: usize,
    pub steps_per_round: usize,
    pub max_rounds: Option<u64>,
}

impl SearchConfig {
    pub fn new(r: usize, h: usize, k: usize, seed: u64, time_budget: Duration) -> Self {
        SearchConfig {
            r,
            h,
            k,
            seed,
            time_budget,
            chains: 8,
            steps_per_round: 200,
            max_rounds: None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found {
        witness: FqSubspace,
        chain: usize,
        round: u64,
    },
    NotFound {
        rounds: u64,
        best_score: u64,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&FqSubspace> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::NotFound { .. } => None,
        }
    }
}

struct Chain {
    rng: ChaCha8Rng,
    rows: Vec<Vec<Elem>>,
    score: u64,
    best_at_round_start: u64,
}

/// Seeded hill climbing over `k`-dimensional `F_q`-subspaces of
/// `F_(q^n)^r`. A move swaps one basis vector for a random one and is kept
/// unless it raises the defect score (0 exactly for spanning h-scattered
/// subspaces). Chains run in rounds; after each round the lowest-indexed
/// chain at score 0 wins, so the result is reproducible from the seed.
pub fn random_scattered_search(
    tower: &Arc<FieldTower>,
    cfg: &SearchConfig,
    budget: &Budget,
) -> Result<SearchOutcome> {
    let (r, h, k, n) = (cfg.r, cfg.h, cfg.k, tower.n());
    if h == 0 || h >= r {
        return Err(Error::InvalidParams(format!("need 1 <= h < r, got h = {h}, r = {r}")));
    }
    if k > r * n / (h + 1) {
        return Err(Error::InvalidParams(format!(
            "k = {k} exceeds the bound rn/(h+1) = {}",
            r * n / (h + 1)
        )));
    }
    if cfg.chains == 0 {
        return Err(Error::InvalidParams("at least one chain is needed".into()));
    }
    // The span condition needs at least r vectors.
    if k < r {
        return Ok(SearchOutcome::NotFound {
            rounds: 0,
            best_score: u64::MAX,
        });
    }
    let scorer = Scorer::new(tower.clone(), r, h, budget)?;
    let mut chains: Vec<Chain> = (0..cfg.chains)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(i as u64);
            let rows = random_rows(&mut rng, tower, r * n, k);
            Ok(Chain {
                score: scorer.score(&rows)?,
                best_at_round_start: u64::MAX,
                rng,
                rows,
            })
        })
        .collect::<Result<_>>()?;
    let start = Instant::now();
    let mut round = 0u64;
    loop {
        if let Some(i) = chains.iter().position(|c| c.score == 0) {
            let witness = scorer.subspace(&chains[i].rows);
            if verify_single_threaded(&witness, h, budget)? {
                return Ok(SearchOutcome::Found {
                    witness,
                    chain: i,
                    round,
                });
            }
            return Err(Error::Internal("search witness failed verification".into()));
        }
        let out_of_rounds = cfg.max_rounds.is_some_and(|m| round >= m);
        if out_of_rounds || start.elapsed() >= cfg.time_budget {
            let best_score = chains.iter().map(|c| c.score).min().unwrap_or(u64::MAX);
            return Ok(SearchOutcome::NotFound {
                rounds: round,
                best_score,
            });
        }
        chains
            .par_iter_mut()
            .map(|c| run_round(c, &scorer, tower, cfg.steps_per_round))
            .collect::<Result<Vec<()>>>()?;
        round += 1;
    }
}

fn run_round(c: &mut Chain, scorer: &Scorer, tower: &FieldTower, steps: usize) -> Result<()> {
    // No progress over a full round: restart from a fresh subspace.
    if c.score >= c.best_at_round_start {
        c.rows = random_rows(&mut c.rng, tower, scorer.len(), c.rows.len());
        c.score = scorer.score(&c.rows)?;
    }
    c.best_at_round_start = c.score;
    let q = tower.q();
    let len = scorer.len();
    for _ in 0..steps {
        if c.score == 0 {
            break;
        }
        let idx = c.rng.gen_range(0..c.rows.len());
        let old = std::mem::replace(&mut c.rows[idx], (0..len).map(|_| c.rng.gen_range(0..q)).collect());
        if rank_of_rows(tower.base(), len, &c.rows) < c.rows.len() {
            c.rows[idx] = old;
            continue;
        }
        let s = scorer.score(&c.rows)?;
        if s <= c.score {
            c.score = s;
        } else {
            c.rows[idx] = old;
        }
    }
    Ok(())
}

fn random_rows(rng: &mut ChaCha8Rng, tower: &FieldTower, len: usize, k: usize) -> Vec<Vec<Elem>> {
    let q = tower.q();
    let mut rows: Vec<Vec<Elem>> = Vec::with_capacity(k);
    while rows.len() < k {
        rows.push((0..len).map(|_| rng.gen_range(0..q)).collect());
        if rank_of_rows(tower.base(), len, &rows) < rows.len() {
            rows.pop();
        }
    }
    rows
}

fn verify_single_threaded(u: &FqSubspace, h: usize, budget: &Budget) -> Result<bool> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::Internal(e.to_string()))?;
    pool.install(|| u.is_h_scattered(h, budget))
}

/// Defect of a candidate: for `h = 1`, the number of nonzero vectors beyond
/// one per `F_(q^n)`-point (`q^k - 1 - (q-1) · #points`); for larger `h`, the
/// number of `h`-dimensional `F_(q^n)`-subspaces met in dimension above `h`.
/// A missing span adds `r - rank` times a penalty larger than any defect.
struct Scorer {
    tower: Arc<FieldTower>,
    r: usize,
    h: usize,
    h_subspaces: Vec<Vec<Vec<Elem>>>,
}

const SPAN_PENALTY: u64 = 1 << 40;

impl Scorer {
    fn new(tower: Arc<FieldTower>, r: usize, h: usize, budget: &Budget) -> Result<Self> {
        let h_subspaces = if h == 1 {
            Vec::new()
        } else {
            enumerate_subspaces(tower.mid(), r, h, budget)?
                .map(|s| s.vectors())
                .collect()
        };
        Ok(Scorer {
            tower,
            r,
            h,
            h_subspaces,
        })
    }

    fn len(&self) -> usize {
        self.r * self.tower.n()
    }

    fn subspace(&self, rows: &[Vec<Elem>]) -> FqSubspace {
        let flat = SubspaceBasis::span(self.tower.base(), self.len(), rows);
        FqSubspace::from_flat(self.tower.clone(), self.r, flat)
    }

    fn score(&self, rows: &[Vec<Elem>]) -> Result<u64> {
        let u = self.subspace(rows);
        let span_gap = (self.r - u.fqn_rank()) as u64 * SPAN_PENALTY;
        let defect = if self.h == 1 {
            let mid = self.tower.mid();
            let mut points: HashSet<Vec<Elem>> = HashSet::new();
            visit_span(self.tower.base(), self.tower.q(), rows, self.len(), |v, _| {
                let mut p = unflatten_vec(&self.tower, self.r, v);
                if normalize_projective(mid, &mut p) {
                    points.insert(p);
                }
                true
            });
            let q = u64::from(self.tower.q());
            let vectors = q.pow(rows.len() as u32) - 1;
            vectors - (q - 1) * points.len() as u64
        } else {
            self.h_subspaces
                .iter()
                .filter(|s| u.meet_dim(s) > self.h)
                .count() as u64
        };
        Ok(span_gap + defect)
    }
}
