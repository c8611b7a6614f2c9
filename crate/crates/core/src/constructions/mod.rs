//! Concrete MRD codes and the subspaces behind them.

mod cug;
mod linpoly;
mod search;

pub use cug::{
    c_ug, c_ug_g_independence, c_ug_mrd_predicate, c_ug_with_map, cug_weight_distribution,
    mrd_params_hold, mrd_to_subspace, ConverseExtraction, CugCode, GIndependence,
};
pub use linpoly::{
    eta_condition_holds, gabidulin, gabidulin_at, gabidulin_restriction, restriction_dual_claim,
    sheekey_code, twisted_gabidulin, GabidulinRestriction, LinearizedPoly, SheekeyCode,
    TwistedGabidulin,
};
pub use search::{pseudoregulus_subspace, random_scattered_search, SearchConfig, SearchOutcome};
