use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use aerobust_core::corruption::{image_id, DatasetItem, ItemFailure};
use aerobust_core::dota::{
    emit_annotations, parse_annotations, plan_tiles, split_ground_truth, TilePlan, DEFAULT_KEEP_FRACTION,
    DEFAULT_OVERLAP, DEFAULT_TILE_SIZE,
};
use aerobust_core::raster::{read_image, write_png};
use aerobust_core::GroundTruth64;
use anyhow::{bail, Result};
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::common::{check_unit, write_json, write_text, Outcome, ToolInfo};
use crate::config::required;

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitArgs {
    /// Dataset root: `images/` and `labelTxt/`.
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    /// Output root; tiles go to `<out>/images` and `<out>/labelTxt`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Tile edge in pixels (default 1024).
    #[arg(long)]
    pub tile_size: Option<usize>,
    /// Overlap between neighbouring tiles in pixels (default 200).
    #[arg(long)]
    pub overlap: Option<usize>,
    /// Objects with less of their area inside a tile are marked difficult there.
    #[arg(long)]
    pub keep_fraction: Option<f64>,
}

#[derive(Debug, Serialize)]
struct Resolved {
    #[serde(rename = "in")]
    input: PathBuf,
    out: PathBuf,
    tile_size: usize,
    overlap: usize,
    keep_fraction: f64,
}

#[derive(Serialize)]
struct Report {
    tool: ToolInfo,
    images_total: usize,
    images_processed: usize,
    tiles_written: usize,
    missing_annotations: Vec<String>,
    failures: Vec<ItemFailure>,
}

struct Split {
    id: String,
    plan: TilePlan,
    missing_annotation: bool,
}

fn split_one(item: &DatasetItem, cfg: &Resolved) -> std::result::Result<Split, ItemFailure> {
    let fail = |path: &Path, e: String| ItemFailure { path: path.display().to_string(), error: e };
    let id = image_id(&item.image);
    let image = read_image(&item.image).map_err(|e| fail(&item.image, e.to_string()))?;
    let gt: Vec<GroundTruth64> = match &item.annotation {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| fail(p, e.to_string()))?;
            parse_annotations(&text, &id).map_err(|e| fail(p, e.to_string()))?
        }
        None => Vec::new(),
    };
    let (w, h) = image.dims();
    let plan = plan_tiles(w, h, cfg.tile_size, cfg.overlap).map_err(|e| fail(&item.image, e.to_string()))?;
    for tile in split_ground_truth(&gt, &id, &plan, cfg.keep_fraction) {
        let png = cfg.out.join("images").join(format!("{}.png", tile.name));
        write_png(&png, &plan.crop(&image, tile.offset)).map_err(|e| fail(&png, e.to_string()))?;
        let label = cfg.out.join("labelTxt").join(format!("{}.txt", tile.name));
        write_text(&label, &emit_annotations(&tile.records)).map_err(|e| fail(&label, e.to_string()))?;
    }
    Ok(Split { id, plan, missing_annotation: item.annotation.is_none() })
}

pub fn run(args: SplitArgs) -> Result<Outcome> {
    let input = required(&args.input, "in")?;
    let out = required(&args.out, "out")?;
    let tile_size = args.tile_size.unwrap_or(DEFAULT_TILE_SIZE);
    let overlap = args.overlap.unwrap_or(DEFAULT_OVERLAP);
    if tile_size == 0 || overlap >= tile_size {
        bail!("usage error: --overlap {overlap} must be smaller than --tile-size {tile_size}");
    }
    let keep_fraction = check_unit(args.keep_fraction.unwrap_or(DEFAULT_KEEP_FRACTION), "keep_fraction", true)?;
    if !input.is_dir() {
        bail!("usage error: input dataset {} does not exist", input.display());
    }
    let items = DatasetItem::discover(&input)?;
    if items.is_empty() {
        bail!("usage error: no images found under {}", input.display());
    }
    let cfg = Resolved { input, out: out.clone(), tile_size, overlap, keep_fraction };

    let results: Vec<_> = items.par_iter().map(|item| split_one(item, &cfg)).collect();
    let mut plans = BTreeMap::new();
    let mut missing = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(s) => {
                if s.missing_annotation {
                    eprintln!("warning: {}: no annotation file; tiles get empty label files", s.id);
                    missing.push(s.id.clone());
                }
                plans.insert(s.id, s.plan);
            }
            Err(f) => {
                eprintln!("failed: {}: {}", f.path, f.error);
                failures.push(f);
            }
        }
    }
    let tiles_written = plans.values().map(TilePlan::len).sum();
    write_json(&out.join("tiles.json"), &plans)?;
    let report = Report {
        tool: ToolInfo::new("split", &cfg),
        images_total: items.len(),
        images_processed: plans.len(),
        tiles_written,
        missing_annotations: missing,
        failures,
    };
    write_json(&out.join("split_report.json"), &report)?;
    println!(
        "split: {} images into {} tiles of {}px (overlap {}) under {}",
        report.images_processed,
        tiles_written,
        tile_size,
        overlap,
        out.display()
    );
    Ok(Outcome::from_failures(report.failures.len()))
}
