pub mod analysis;
pub mod arith;
pub mod audit;
pub mod code;
pub mod error;
pub mod galois;
pub mod hyperplane;
pub mod lattice;
pub mod linalg;
pub mod newton;
pub mod nf;
pub mod signed_perm;
pub mod weil;

pub use error::{Error, Result};
