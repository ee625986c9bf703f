use serde::{Deserialize, Serialize};

use crate::geometry::Point;
use crate::raster::RasterImage;
use crate::{Error, Real, Result};

use super::GroundTruthRecord;

pub const DEFAULT_TILE_SIZE: usize = 1024;
pub const DEFAULT_OVERLAP: usize = 200;
pub const DEFAULT_KEEP_FRACTION: f64 = 0.7;

/// Tile origins for one source image.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TilePlan {
    pub width: usize,
    pub height: usize,
    pub tile_size: usize,
    pub overlap: usize,
    pub offsets: Vec<(usize, usize)>,
}

fn axis_offsets(dim: usize, tile: usize, stride: usize) -> Vec<usize> {
    if dim <= tile {
        return vec![0];
    }
    let mut offs: Vec<usize> = (0..).map(|i| i * stride).take_while(|&o| o + tile < dim).collect();
    offs.push(dim - tile);
    offs.dedup();
    offs
}

/// Sliding-window plan with stride `tile_size - overlap`; the last window
/// per axis is pulled back to end exactly at the image edge. Images smaller
/// than a tile get a single (padded) tile at the origin.
pub fn plan_tiles(width: usize, height: usize, tile_size: usize, overlap: usize) -> Result<TilePlan> {
    if width == 0 || height == 0 {
        return Err(Error::param(format!("image must be non-empty, got {width}x{height}")));
    }
    if tile_size == 0 || overlap >= tile_size {
        return Err(Error::param(format!("overlap {overlap} must be smaller than the tile size {tile_size}")));
    }
    let stride = tile_size - overlap;
    let xs = axis_offsets(width, tile_size, stride);
    let ys = axis_offsets(height, tile_size, stride);
    let offsets = ys.iter().flat_map(|&y| xs.iter().map(move |&x| (x, y))).collect();
    Ok(TilePlan { width, height, tile_size, overlap, offsets })
}

impl TilePlan {
    pub fn len(&self) -> usize {
        self.offsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.offsets.is_empty()
    }

    pub fn contains_offset(&self, offset: (usize, usize)) -> bool {
        self.offsets.contains(&offset)
    }

    /// Tile window as a positively oriented polygon in image coordinates.
    pub fn tile_polygon<T: Real>(&self, (x, y): (usize, usize)) -> [Point<T>; 4] {
        let (x0, y0) = (T::from_usize_lossy(x), T::from_usize_lossy(y));
        let s = T::from_usize_lossy(self.tile_size);
        [Point::new(x0, y0), Point::new(x0 + s, y0), Point::new(x0 + s, y0 + s), Point::new(x0, y0 + s)]
    }

    /// Pixels of one tile, zero-padded where the tile overhangs the image.
    pub fn crop(&self, image: &RasterImage, (x, y): (usize, usize)) -> RasterImage {
        image.crop_padded(x, y, self.tile_size, self.tile_size, 0)
    }
}

/// `<image_id>__<x>__<y>`.
pub fn tile_name(image_id: &str, (x, y): (usize, usize)) -> String {
    format!("{image_id}__{x}__{y}")
}

/// Inverse of [`tile_name`]. Returns `None` when the name has no
/// well-formed offset suffix.
pub fn parse_tile_name(name: &str) -> Option<(&str, (usize, usize))> {
    let (rest, y) = name.rsplit_once("__")?;
    let (id, x) = rest.rsplit_once("__")?;
    if id.is_empty() {
        return None;
    }
    Some((id, (x.parse().ok()?, y.parse().ok()?)))
}

/// Ground truth of one tile, in tile-local coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct TileAnnotations<T> {
    pub offset: (usize, usize),
    pub name: String,
    pub records: Vec<GroundTruthRecord<T>>,
}

/// Fraction of a box's area inside a tile window. A zero-area box counts
/// as fully inside when its centroid is.
pub fn fraction_inside<T: Real>(record: &GroundTruthRecord<T>, window: &[Point<T>; 4]) -> T {
    let area = record.bbox.area();
    if area == T::zero() {
        let c = record.bbox.centroid();
        let inside = c.x >= window[0].x && c.x <= window[2].x && c.y >= window[0].y && c.y <= window[2].y;
        return if inside { T::one() } else { T::zero() };
    }
    (record.bbox.area_inside(window) / area).min(T::one())
}

/// Assign boxes to tiles. A box goes to every tile holding a positive
/// fraction of its area; below `keep_fraction` it is marked difficult.
/// Vertices are translated to the tile origin but not clipped, so adding
/// the offset back recovers the original coordinates.
pub fn split_ground_truth<T: Real>(
    gt: &[GroundTruthRecord<T>],
    image_id: &str,
    plan: &TilePlan,
    keep_fraction: T,
) -> Vec<TileAnnotations<T>> {
    plan.offsets
        .iter()
        .map(|&offset| {
            let window = plan.tile_polygon::<T>(offset);
            let (dx, dy) = (-T::from_usize_lossy(offset.0), -T::from_usize_lossy(offset.1));
            let name = tile_name(image_id, offset);
            let records = gt
                .iter()
                .filter_map(|r| {
                    let frac = fraction_inside(r, &window);
                    (frac > T::zero()).then(|| GroundTruthRecord {
                        image_id: name.clone(),
                        bbox: r.bbox.translate(dx, dy),
                        category: r.category.clone(),
                        difficult: r.difficult || frac < keep_fraction,
                    })
                })
                .collect();
            TileAnnotations { offset, name, records }
        })
        .collect()
}
