//! Exact arithmetic in the tower `F_q ⊆ F_(q^n) ⊆ F_(q^(nt))`.

mod gf;
pub mod poly;
mod tower;

pub use gf::{is_prime, Elem, GaloisField, LOG_TABLE_LIMIT};
pub use tower::{make_tower, Fe, FieldTower, Level, TowerSpec, DEFAULT_TOWER_BUDGET};

pub(crate) use gf::prime_factors;
