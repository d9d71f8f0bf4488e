//! Linear codes over prime fields under poset metrics: canonical generator
//! matrices, maximal P-decompositions, packing-radius bounds and leveled
//! syndrome decoding, together with brute-force oracles for small sizes.

pub mod decode;
pub mod decomp;
pub mod error;
pub mod field;
pub mod format;
pub mod linear;
pub mod oracle;
pub mod poset;
pub mod radius;
pub mod selftest;
mod split;
pub mod subset;

pub use error::{Error, Result, DEFAULT_BUDGET};
pub use field::{FieldElement, PrimeField};
pub use linear::{all_vectors, Code, Matrix, Vector};
pub use poset::Poset;
pub use subset::{CoordSet, MAX_N};
