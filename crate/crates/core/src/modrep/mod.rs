//! Modular representations over prime fields: linear algebra, the MeatAxe,
//! faithful irreducible modules and the chain of affine extensions.

pub mod affine;
pub mod chain;
pub mod matrix;
pub mod meataxe;
pub mod module;
pub mod poly;

pub use affine::{affine_semidirect, AffineProduct};
pub use chain::{counterexample_chain, ChainResult, FormationComparison, LevelReport, ResidualMethod};
pub use matrix::Matrix;
pub use module::{chop, faithful_irreducible, regular_module, GModule, MatrixRepresentation};
