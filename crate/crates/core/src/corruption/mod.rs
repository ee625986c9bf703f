//! The 19 common corruptions at five severities.
//!
//! Every corruption computes on a real-valued working image and quantises
//! once at the end; all randomness comes from an [`RngStream`] seeded by
//! the spec's seed, so [`corrupt`] is a pure function of its inputs.
//!
//! [`RngStream`]: crate::raster::RngStream

mod blur;
mod dataset;
mod digital;
mod engine;
mod frost;
mod kind;
mod noise;
mod psnr;
mod schedule;
mod weather;

pub use dataset::{corrupt_dataset, image_id, output_path, CorruptJob, DatasetItem, ItemFailure, JobReport};
pub use engine::{corrupt, gaussian_blur, CorruptionEngine};
pub use frost::{frost_texture, FrostSource};
pub use kind::{Category, CorruptionKind, CorruptionSpec, Severity};
pub use psnr::psnr;
pub use schedule::*;
