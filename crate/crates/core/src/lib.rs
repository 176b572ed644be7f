//! Counting triples `(u, v, w)` in `E^3` with `u.v = alpha` and `u.w = beta`
//! for point sets over finite fields and residue rings `Z/p^l`.

pub mod algebra;
pub mod bounds;
pub mod constructions;
pub mod counting;
pub mod error;
pub mod geometry;
pub mod io;
pub mod par;
pub mod pointset;

pub use algebra::{Elem, Ring, RingKind, RingSpec};
pub use error::{Error, Result};
pub use par::Strategy;
pub use pointset::PointSet;
