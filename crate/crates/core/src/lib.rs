//! Exact red-blue separation of planar point sets by lines.
//!
//! * [`axis_fpt`] solves the axis-parallel problem exactly in time
//!   exponential only in the size of the smaller color class, by guessing how
//!   many lines fall in each blue-free strip and deciding each guess with
//!   [`twosat`].
//! * [`exact_search`] holds independent brute-force solvers, axis-parallel and
//!   arbitrary slope, used as oracles.
//! * [`reduction`] builds hardness instances from structured two-track
//!   hitting-set instances together with their witness line sets.
//! * [`io`] and [`svg`] cover the text formats and rendering.

pub mod axis_fpt;
pub mod error;
pub mod exact_search;
pub mod geometry;
pub mod hull;
pub mod io;
pub mod reduction;
pub mod svg;
pub mod twosat;

pub use error::{Error, Result};
pub use geometry::{
    is_feasible, rat, Color, FeasibilityReport, Instance, Line, LineKind, Point, Rational,
    StripDecomposition, Violation,
};
pub use hull::hulls_strictly_disjoint;
