//! Corruption synthesis and robustness evaluation for oriented object
//! detection on aerial imagery.
//!
//! The crate is organised bottom-up:
//!
//! - [`raster`]: RGB image container, codecs, resampling, convolution, HSV
//!   conversion and seeded randomness.
//! - [`corruption`]: the 19 common corruptions at five severities, plus the
//!   dataset job that writes corrupted copies of a test set.
//! - [`cloud`]: real-cloud transfer (threshold self-subtraction, intensity
//!   compensation and atmospheric compositing).
//! - [`dota`]: DOTA annotation/detection formats, tiling and tile merging.
//! - [`geometry`]: points, oriented boxes, convex clipping.
//! - [`eval`]: rotated IoU, AP@50 and the robustness aggregates
//!   (mPC, rPC, per-category rPC, rPC for clouds).
//!
//! Geometry, metrics and cloud maps are generic over the scalar type
//! ([`Real`] for IEEE floats); the aliases below fix `f64`, which is what
//! the command-line tool uses.

pub mod cloud;
pub mod corruption;
pub mod dota;
mod error;
pub mod eval;
pub mod geometry;
pub mod raster;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Real;

pub use corruption::{Category, CorruptionKind, CorruptionSpec, Severity, SeveritySchedule};
pub use raster::{FloatImage, RasterImage, RngStream};

pub type Point64 = geometry::Point<f64>;
pub type OrientedBox64 = geometry::OrientedBox<f64>;
pub type GroundTruth64 = dota::GroundTruthRecord<f64>;
pub type Detection64 = dota::DetectionRecord<f64>;
pub type EvalMatrix64 = eval::EvalMatrix<f64>;
pub type RealMap64 = cloud::RealMap<f64>;
pub type CloudIngredient64 = cloud::CloudIngredient<f64>;
pub type CloudSource64 = cloud::CloudSource<f64>;
pub type CompositeParams64 = cloud::CompositeParams<f64>;

pub type Point32 = geometry::Point<f32>;
pub type OrientedBox32 = geometry::OrientedBox<f32>;
pub type RealMap32 = cloud::RealMap<f32>;

/// Tool version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");













