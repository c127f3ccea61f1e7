//! Minimum-link covering paths and covering trees for orthogonal grids.
//!
//! The crate is organised bottom-up:
//!
//! * [`geometry`]: exact points, segments, lines and predicates,
//! * [`grid`]: unit and non-uniform orthogonal grids,
//! * [`construct`]: explicit upper-bound witnesses (snake, spiral, comb),
//! * [`verify`]: coverage/crossing/count checks, closed-form bounds and the
//!   row/column accounting certificate,
//! * [`solver`]: exhaustive search for exact minima on small grids,
//! * [`cli`] and [`svg`]: the command-line front end and figure output.
//!
//! Geometry is generic over an exact [`Scalar`]; everything above it works
//! with arbitrary-precision rationals through the aliases below.

pub mod cli;
pub mod construct;
pub mod error;
pub mod geometry;
pub mod grid;
pub mod io;
pub mod scalar;
pub mod solver;
pub mod svg;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{Line, Orientation};
pub use grid::{Alignment, Grid};
pub use scalar::Scalar;

/// Exact rational coordinate.
pub type Rational = num_rational::BigRational;
/// Point with rational coordinates.
pub type Point = geometry::Point<Rational>;
/// Segment with rational endpoints.
pub type Segment = geometry::Segment<Rational>;

pub use construct::{Polyline, SegmentSet, SetKind};
