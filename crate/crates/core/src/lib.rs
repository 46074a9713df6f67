//! Exact computer algebra for 3-Lie algebras and compatible pairs.
//!
//! Everything is computed over exact rationals: structure constants,
//! graded brackets, coboundary matrices, cohomology dimensions,
//! deformation and extension checks. There are no tolerances; every
//! asserted identity holds bit for bit or is reported as a violation.

pub mod bracket;
pub mod cochain;
pub mod compatible;
pub mod extensions;
pub mod io;
pub mod linalg;
pub mod scalar;
pub mod shuffle;
pub mod split;
pub mod three_lie;

pub use cochain::{Cochain, Idx, PreCochain};
pub use linalg::Matrix;
pub use scalar::Scalar;
pub use three_lie::{Representation, ThreeLieAlgebra};
