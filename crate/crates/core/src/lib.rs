//! Crease patterns for negative origami-extrusion gadgets.

pub mod cheng;
pub mod cli;
pub mod division;
pub mod error;
pub mod export;
pub mod first;
pub mod frame;
pub mod interference;
pub mod geometry;
pub mod onepleat;
pub mod pattern;
pub mod second;
pub mod third;

pub use error::{GadgetError, Result};
pub use frame::{build_frame, derive_angles, validate, GadgetSpec, PleatFrame, Side};
pub use geometry::{Angle, Point2};
pub use pattern::{CreasePattern, Fold};
