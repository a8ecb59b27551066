//! The representation ring of the maximal torus, Steinberg bases and the
//! group-ring side of the coefficient comparison.

mod group_ring;
mod laurent;
mod steinberg;

pub use group_ring::*;
pub use laurent::LaurentPoly;
pub use steinberg::*;
