//! Exact-arithmetic Radon transforms over finite affine geometries.

pub mod complex;
pub mod data;
pub mod enumeration;
pub mod errata;
pub mod error;
pub mod geometry;
pub mod hyperplane;
pub mod linalg;
pub mod radon;

pub use data::{DataVector, Role};
pub use error::{Error, Result};
pub use geometry::{AffineFlat, GeometrySpace, Point, Spread};
pub use radon::{BolkerReport, IncidenceGeometry, IncidenceMatrix};
