//! Exact computations with root data, Weyl groups, Steinberg bases and
//! equivariant cochain complexes.

pub mod bredon;
pub mod cli;
pub mod error;
pub mod ktheory;
pub mod linalg;
pub mod rep_ring;
pub mod root_system;
pub mod weyl;

pub use error::{Error, Result};
pub use rep_ring::LaurentPoly;
pub use root_system::{build_root_datum, RootDatum, Weight, WeylElement, WeylGroup};
