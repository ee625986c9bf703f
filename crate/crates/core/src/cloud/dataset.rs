use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{cloud_composite, CloudSource, CompositeParams};
use crate::corruption::{image_id, DatasetItem, ItemFailure};
use crate::raster::{read_image, write_png, RasterImage, RngStream};
use crate::{Error, Real, Result};

/// Lineage kind used for every cloud draw.
pub const CLOUDS: &str = "clouds";

/// Source index and wrap-around window origin chosen for one target.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CloudDraw {
    pub source: usize,
    pub offset: (usize, usize),
}

/// Seeded choice of a cloud source for `image_id`: uniform over the pool,
/// followed by a uniform window origin when the source and target sizes
/// differ.
pub fn draw_cloud(
    global_seed: u64,
    image_id: &str,
    source_dims: &[(usize, usize)],
    target: (usize, usize),
) -> CloudDraw {
    let mut rng = RngStream::for_lineage(global_seed, image_id, CLOUDS, 0);
    let source = rng.below(source_dims.len());
    let (sw, sh) = source_dims[source];
    let offset = if (sw, sh) == target { (0, 0) } else { (rng.below(sw), rng.below(sh)) };
    CloudDraw { source, offset }
}

/// Cloud a single clean image with a pool entry at a given window origin.
pub fn cloudify_image<T: Real>(
    clean: &RasterImage,
    source: &CloudSource<T>,
    offset: (usize, usize),
    params: &CompositeParams<T>,
) -> Result<RasterImage> {
    let ingredient = source.ingredient();
    let (w, h) = clean.dims();
    if ingredient.dims() == (w, h) && offset == (0, 0) {
        cloud_composite(clean, ingredient, params)
    } else {
        cloud_composite(clean, &ingredient.window(offset.0, offset.1, w, h), params)
    }
}

/// Output path of a clouded image: `<root>/clouds/<id>.png`.
pub fn cloud_output_path(root: &Path, id: &str) -> PathBuf {
    root.join(CLOUDS).join(format!("{id}.png"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SourceUsage {
    pub name: String,
    pub gamma: f64,
    pub uses: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CloudReport {
    pub images_total: usize,
    pub images_processed: usize,
    pub outputs_written: usize,
    pub sources: Vec<SourceUsage>,
    pub failures: Vec<ItemFailure>,
    pub global_seed: u64,
    pub atmospheric_light: f64,
}

impl CloudReport {
    pub fn is_partial_failure(&self) -> bool {
        !self.failures.is_empty()
    }
}

fn process<T: Real>(
    item: &DatasetItem,
    pool: &[CloudSource<T>],
    dims: &[(usize, usize)],
    params: &CompositeParams<T>,
    global_seed: u64,
    out_root: &Path,
) -> std::result::Result<usize, ItemFailure> {
    let fail = |path: &Path, e: Error| ItemFailure { path: path.display().to_string(), error: e.to_string() };
    let clean = read_image(&item.image).map_err(|e| fail(&item.image, e))?;
    let id = image_id(&item.image);
    let draw = draw_cloud(global_seed, &id, dims, clean.dims());
    let dest = cloud_output_path(out_root, &id);
    let out = cloudify_image(&clean, &pool[draw.source], draw.offset, params).map_err(|e| fail(&item.image, e))?;
    write_png(&dest, &out).map_err(|e| fail(&dest, e))?;
    if let Some(label) = &item.annotation {
        let lp = dest.parent().unwrap().join("labelTxt").join(format!("{id}.txt"));
        std::fs::create_dir_all(lp.parent().unwrap())
            .and_then(|_| std::fs::copy(label, &lp))
            .map_err(|e| fail(&lp, Error::io(&lp, e)))?;
    }
    Ok(draw.source)
}

/// Composite one pool cloud onto every clean image. Annotations are copied
/// next to the outputs unchanged.
pub fn cloudify_dataset<T: Real>(
    items: &[DatasetItem],
    pool: &[CloudSource<T>],
    params: &CompositeParams<T>,
    global_seed: u64,
    out_root: &Path,
) -> Result<CloudReport> {
    if pool.is_empty() {
        return Err(Error::Config("cloud pool is empty".into()));
    }
    std::fs::create_dir_all(out_root).map_err(|e| Error::io(out_root, e))?;
    let dims: Vec<(usize, usize)> = pool.iter().map(|s| s.ingredient().dims()).collect();
    let outcomes: Vec<_> =
        items.par_iter().map(|item| process(item, pool, &dims, params, global_seed, out_root)).collect();

    let mut uses = vec![0usize; pool.len()];
    let mut failures = Vec::new();
    for o in outcomes {
        match o {
            Ok(i) => uses[i] += 1,
            Err(f) => failures.push(f),
        }
    }
    let written = uses.iter().sum();
    Ok(CloudReport {
        images_total: items.len(),
        images_processed: written,
        outputs_written: written,
        sources: pool
            .iter()
            .zip(uses)
            .map(|(s, uses)| SourceUsage { name: s.name.clone(), gamma: s.gamma.to_f64().unwrap_or(f64::NAN), uses })
            .collect(),
        failures,
        global_seed,
        atmospheric_light: params.a.to_f64().unwrap_or(f64::NAN),
    })
}
