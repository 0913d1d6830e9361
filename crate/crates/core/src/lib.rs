//! Exact computations for families of subsets of `[n]` without `s` pairwise
//! disjoint members: the four candidate extremal constructions, matching
//! numbers and weight certificates, deletion numbers, and exhaustive search
//! for `e(n, s)` at small `n`.

pub mod bits;
pub mod config;
pub mod constructions;
pub mod count;
pub mod deletion;
pub mod error;
pub mod family;
pub mod io;
pub mod matching;
pub mod order;
pub mod report;
pub mod search;
pub mod shift;

pub use constructions::{Construction, ConstructionKind, ExtremalParams, WeightVector};
pub use count::BigCount;
pub use error::{Error, Result};
pub use family::{LayerProfile, SetFamily, SetWord};
