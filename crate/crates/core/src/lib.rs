pub mod arith;
pub mod constructions;
pub mod error;
pub mod factorization;
pub mod field;
pub mod forms;
pub mod formula;
pub mod matrix;
pub mod perm;
pub mod poly;
pub mod tables;

pub use error::{Error, Result};
