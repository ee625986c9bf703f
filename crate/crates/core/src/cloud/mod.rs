//! Real-cloud transfer: threshold self-subtraction of a cloudy scene,
//! intensity compensation into a cloud ingredient map, and atmospheric
//! compositing onto clean images.

mod dataset;
mod pool;
mod transfer;

pub use dataset::{
    cloud_output_path, cloudify_dataset, cloudify_image, draw_cloud, CloudDraw, CloudReport, SourceUsage, CLOUDS,
};
pub use pool::{load_pool, parse_pool_manifest, CloudSource, PoolEntry, DEFAULT_GAMMA};
pub use transfer::{
    cloud_compensate, cloud_composite, cloud_self_subtract, composite_real, CloudIngredient, CompositeParams, RealMap,
};
