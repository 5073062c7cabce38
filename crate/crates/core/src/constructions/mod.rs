//! Builders for the groups and subgroups that appear in the factorization tables.

pub mod classical;
pub mod mathieu;
pub mod nilpotent;
pub mod typei;
pub mod witness;
