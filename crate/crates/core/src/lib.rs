//! Block theory of finite permutation groups from first principles.
//!
//! The pipeline runs bottom-up: permutation groups and conjugacy classes,
//! exact cyclotomic arithmetic and residue fields, character tables by the
//! Dixon–Schneider method, p-blocks with their idempotents and class
//! partitions, and finally the analysis of block pairs across a normal
//! subgroup.

pub mod blocks;
pub mod catalog;
pub mod chartab;
pub mod classes;
pub mod cyclotomic;
pub mod error;
pub mod finite_field;
pub mod frobenius;
pub mod group;
pub mod io;
pub mod linalg;
pub mod numtheory;
pub mod perm;
pub mod report;
pub mod verify;

pub use blocks::{Block, BlockSystem};
pub use chartab::{CharacterTable, ClassConstants};
pub use classes::{ClassTable, ConjugacyClass};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use finite_field::{FFElem, GaloisField, ReductionContext};
pub use group::PermGroup;
pub use perm::Perm;
