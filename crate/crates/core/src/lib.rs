//! Genus expansions of moments and cumulants: exact algebra, combinatorial
//! enumeration oracles, and generating-function pipelines.

pub mod algebra;
pub mod combinatorics;
pub mod cylinder;
pub mod error;
pub mod genfun_part;
pub mod genfun_perm;
pub mod records;
pub mod spec;
pub mod verify;

pub use error::{Error, Result};
