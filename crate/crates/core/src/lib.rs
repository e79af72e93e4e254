//! Unit-quadrance graphs over finite fields.
//!
//! Builds `D_q^m` (points of `F_q^m` joined at quadrance 1), runs the
//! line-based colouring construction and its character-sum certificates,
//! computes exact chromatic numbers at small scale, and evaluates spectra by a
//! dense eigensolver and by additive character sums.

pub mod chi;
pub mod coloring;
pub mod construction;
pub mod error;
pub mod field;
pub mod graph;
pub mod report;
pub mod spectral;

pub use coloring::{verify_coloring, Coloring, Verdict};
pub use construction::ColoringPlan;
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldElement};
pub use graph::{Adjacency, Point, UnitQuadranceGraph};
