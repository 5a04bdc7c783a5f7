//! Permutation groups, exact character tables, σ-partial characters and
//! nilpotent weights, with checkers for the counting theorems relating them.

pub mod chartab;
pub mod classes;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod glauberman;
pub mod group;
pub mod lattice;
pub mod normal;
pub mod partial;
pub mod perm;
pub mod primes;
pub mod properties;
pub mod schreier;
pub mod verify;
pub mod weights;

pub use chartab::{Character, CharacterTable};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::{Limits, PermGroup, SubgroupRef};
pub use perm::Perm;
pub use primes::PrimeSet;
