//! Exact computations with the gap poset of a two-generator numerical
//! semigroup `<a, b>`: the quadratic form `Q` and its bilinear forms, the
//! `dinv` and cross-`dinv` statistics of rational Dyck paths, the blue/red
//! arrow bijections, the cone of decreasing functions on `G` and truncated
//! generating series.

pub mod bijections;
pub mod cone;
pub mod diagram;
pub mod error;
pub mod forms;
pub mod rational;
pub mod semigroup;
pub mod series;
pub mod statistics;
pub mod verify;

pub use diagram::{enumerate_subdiagrams, BoundarySet, Subdiagram};
pub use error::{Error, Result};
pub use forms::GVector;
pub use semigroup::{Cell, GapDiagram, SemigroupParams};
