//! Exact arithmetic for commutative algebras built from binary linear codes.

pub mod algebra;
pub mod codes;
mod error;
pub mod fixtures;
pub mod form;
pub mod group;
pub mod linalg;
pub mod maps;
pub mod scalar;
pub mod smap;
pub mod structure;
pub mod spectral;

pub use algebra::{CodeAlgebra, Element, StructureParams};
pub use codes::{Codeword, LinearCode, Perm};
pub use error::{Error, Result};
pub use linalg::{Matrix, Polynomial, Subspace};
pub use maps::{LinearMap, SignedMap};
pub use scalar::Scalar;
