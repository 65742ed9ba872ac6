//! Finite permutation groups, their Fitting-type radicals and the lengths
//! of the series those radicals generate.

pub mod arith;
pub mod bsgs;
pub mod config;
pub mod error;
pub mod formations;
pub mod group;
pub mod harness;
pub mod modrep;
pub mod perm;
pub mod radicals;
pub mod structure;
pub mod subgroups;
pub mod universe;

pub use config::Limits;
pub use error::{Error, Result};
pub use group::{PermutationGroup, Subgroup};
pub use perm::Permutation;
pub use universe::{Elem, Sub, Universe};
