//! Rank-one local-system cohomology of real line arrangement complements,
//! computed exactly from the minimal cochain complex on chambers.
//!
//! The pipeline is: parse an [`Arrangement`], enumerate its chambers, pick a
//! generic flag, split the chambers into `ch⁰ ⊔ ch¹ ⊔ ch²`, build the
//! coboundary matrices over the Laurent ring in the half-twists, and either
//! evaluate them at a torsion monodromy or work with them symbolically.

pub mod arith;
pub mod arrangement;
pub mod chambers;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod feasibility;
pub mod flag;
pub mod testkit;
pub mod fixtures;

pub use arrangement::{parse_arrangement, Arrangement, EdgeAtInfinity, Line};
pub use error::{Error, Result};
