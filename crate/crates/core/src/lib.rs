//! Discrete curve shortening flow for closed plane curves, with generators
//! for test corpora and verification of the curvature-area inequality
//! k_max >= sqrt(pi / A) and its supporting identities.
//!
//! Conventions used throughout:
//! - curves are closed polylines with counterclockwise (positive-area)
//!   orientation and uniform arc-length spacing;
//! - curvature is the signed Menger curvature of each vertex and its two
//!   neighbors, positive where the curve bends toward the interior;
//! - the outer normal is the unit tangent rotated a quarter turn clockwise.

pub mod corpus;
pub mod curve;
pub mod error;
pub mod export;
pub mod flow;
pub mod geometry;
pub mod inradius;
pub mod vec2;
pub mod verify;

pub use curve::ClosedCurve;
pub use error::{Error, Result};
pub use flow::{FlowConfig, FlowTrajectory};
pub use geometry::CurveGeometry;
pub use vec2::Vec2;
