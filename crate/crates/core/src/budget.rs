use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_CODEWORD_BUDGET: u64 = 1 << 24;
pub const DEFAULT_SUBSPACE_BUDGET: u64 = 1 << 20;

/// Enumeration limits. Operations refuse to start a scan larger than these
/// instead of silently sampling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Maximum number of codewords (or vectors) a brute-force scan may visit.
    pub codewords: u64,
    /// Maximum number of subspaces a Grassmannian scan may visit.
    pub subspaces: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            codewords: DEFAULT_CODEWORD_BUDGET,
            subspaces: DEFAULT_SUBSPACE_BUDGET,
        }
    }
}

impl Budget {
    pub fn check_codewords(&self, what: &'static str, needed: &BigUint) -> Result<u64> {
        check(what, needed, self.codewords)
    }

    pub fn check_subspaces(&self, what: &'static str, needed: &BigUint) -> Result<u64> {
        check(what, needed, self.subspaces)
    }
}

fn check(what: &'static str, needed: &BigUint, budget: u64) -> Result<u64> {
    match u64::try_from(needed) {
        Ok(v) if v <= budget => Ok(v),
        _ => Err(Error::budget(what, needed, budget)),
    }
}

/// `base^exp` as a big integer.
pub(crate) fn big_pow(base: u64, exp: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), exp)
}
