pub mod budget;
pub mod constructions;
pub mod error;
pub mod fields;
pub mod fixtures;
pub mod fqlinalg;
pub mod linsets;
pub mod rankcodes;
pub mod serial;
pub mod subspaces;

pub use budget::Budget;
pub use error::{Error, Result};
