use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use aerobust_core::dota::{merge_detections, read_annotation_dir, read_detection_dir, TilePlan, DEFAULT_NMS_IOU, DOTA_V1_CLASSES};
use aerobust_core::eval::{average_precision, ApOptions, EvalMatrix, Interpolation, RobustnessReport};
use aerobust_core::{CorruptionKind, Error, GroundTruth64, Severity};
use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::common::{check_unit, write_json, write_text, Outcome, ToolInfo};
use crate::config::required;
use crate::tables::all_tables;

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EvaluateArgs {
    /// Detection root: `clean/`, `<kind>/<severity>/` and optionally `clouds/`, each holding `Task1_<class>.txt` files.
    #[arg(long)]
    pub dets: Option<PathBuf>,
    /// Ground-truth label directory (`<image_id>.txt` files).
    #[arg(long)]
    pub gt: Option<PathBuf>,
    /// Precomputed AP grid (`kind,severity,ap` CSV) instead of detections.
    #[arg(long, conflicts_with_all = ["dets", "gt", "tiles"])]
    pub grid: Option<PathBuf>,
    /// Tile plans from `split`; when given, per-tile detections are merged first.
    #[arg(long)]
    pub tiles: Option<PathBuf>,
    /// Output directory for matrix.csv, report.json and table.txt.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Row label in the result tables.
    #[arg(long)]
    pub model: Option<String>,
    /// `voc07_11point` or `continuous`.
    #[arg(long)]
    pub interp: Option<String>,
    /// IoU a detection needs to match a ground truth (default 0.5).
    #[arg(long)]
    pub iou_thresh: Option<f64>,
    /// IoU at which merged duplicates are suppressed.
    #[arg(long)]
    pub nms_iou: Option<f64>,
    /// Comma-separated label set; DOTA-v1.0 classes plus ground-truth categories when absent.
    #[arg(long)]
    pub classes: Option<String>,
}

#[derive(Debug, Serialize)]
struct Resolved {
    dets: Option<PathBuf>,
    gt: Option<PathBuf>,
    grid: Option<PathBuf>,
    tiles: Option<PathBuf>,
    out: PathBuf,
    model: String,
    interp: Interpolation,
    iou_thresh: f64,
    nms_iou: f64,
    classes: Option<Vec<String>>,
}

#[derive(Serialize)]
struct Report<'a> {
    tool: ToolInfo,
    model: &'a str,
    interpolation: Option<Interpolation>,
    #[serde(flatten)]
    summary: &'a RobustnessReport,
    /// AP per cell, keyed `clean`, `clouds` or `kind/severity`.
    grid: BTreeMap<String, f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Cell {
    Clean,
    Clouds,
    Corrupt(CorruptionKind, Severity),
}

impl Cell {
    fn label(self) -> String {
        match self {
            Cell::Clean => "clean".into(),
            Cell::Clouds => "clouds".into(),
            Cell::Corrupt(k, s) => format!("{}/{}", k.name(), s),
        }
    }

    fn dir(self, root: &Path) -> PathBuf {
        root.join(self.label())
    }
}

fn load_plans(path: &Path) -> Result<BTreeMap<String, TilePlan>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!("configuration error: {}: {e}", path.display()))
}

fn matrix_from_detections(cfg: &Resolved, dets: &Path, gt_dir: &Path) -> Result<EvalMatrix<f64>> {
    let gts: Vec<GroundTruth64> = read_annotation_dir(gt_dir)?;
    let plans = cfg.tiles.as_deref().map(load_plans).transpose()?;
    let classes: Vec<String> = match &cfg.classes {
        Some(c) => c.clone(),
        None => {
            let mut set: BTreeSet<String> = DOTA_V1_CLASSES.iter().map(|c| c.to_string()).collect();
            set.extend(gts.iter().map(|g| g.category.clone()));
            set.into_iter().collect()
        }
    };
    let opts = ApOptions { iou_thresh: cfg.iou_thresh, interpolation: cfg.interp, classes: Some(classes) };

    let mut cells = vec![Cell::Clean];
    cells.extend(CorruptionKind::ALL.iter().flat_map(|&k| Severity::all().map(move |s| Cell::Corrupt(k, s))));
    let missing: Vec<String> = cells.iter().filter(|c| !c.dir(dets).is_dir()).map(|c| c.label()).collect();
    if !missing.is_empty() {
        return Err(Error::IncompleteMatrix(missing.join(", ")).into());
    }
    if Cell::Clouds.dir(dets).is_dir() {
        cells.push(Cell::Clouds);
    }

    let scores: Vec<(Cell, f64)> = cells
        .par_iter()
        .map(|&cell| -> Result<(Cell, f64)> {
            let dir = cell.dir(dets);
            let mut d = read_detection_dir::<f64>(&dir)?;
            if plans.is_some() {
                d = merge_detections(&d, plans.as_ref(), cfg.nms_iou)?;
            }
            let ap = average_precision(&d, &gts, &opts).with_context(|| format!("evaluating {}", dir.display()))?;
            log::info!("{}: AP50 {:.2}", cell.label(), ap.map);
            Ok((cell, ap.map))
        })
        .collect::<Result<_>>()?;

    let mut m = EvalMatrix::new();
    for (cell, ap) in scores {
        match cell {
            Cell::Clean => m.set_clean(ap)?,
            Cell::Clouds => m.set_clouds(ap)?,
            Cell::Corrupt(k, s) => m.set(k, s, ap)?,
        }
    }
    Ok(m)
}

pub fn run(args: EvaluateArgs) -> Result<Outcome> {
    let out = required(&args.out, "out")?;
    let interp: Interpolation = match &args.interp {
        Some(s) => s.parse().map_err(|e| anyhow!("usage error: {e}"))?,
        None => Interpolation::default(),
    };
    let iou_thresh = check_unit(args.iou_thresh.unwrap_or(0.5), "iou_thresh", false)?;
    let nms_iou = check_unit(args.nms_iou.unwrap_or(DEFAULT_NMS_IOU), "nms_iou", false)?;
    let classes = args.classes.as_ref().map(|c| {
        c.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect::<Vec<_>>()
    });
    if classes.as_ref().is_some_and(Vec::is_empty) {
        bail!("usage error: --classes lists no classes");
    }
    let source = match (&args.grid, &args.dets, &args.gt) {
        (Some(_), None, None) => None,
        (None, Some(d), Some(g)) => Some((d.clone(), g.clone())),
        (None, Some(_), None) => bail!("usage error: --dets needs --gt"),
        (None, None, _) => bail!("usage error: give either --grid or --dets with --gt"),
        _ => bail!("usage error: --grid cannot be combined with --dets/--gt"),
    };
    if args.grid.is_some() && args.tiles.is_some() {
        bail!("usage error: --tiles only applies to --dets");
    }
    let cfg = Resolved {
        dets: args.dets.clone(),
        gt: args.gt.clone(),
        grid: args.grid.clone(),
        tiles: args.tiles.clone(),
        out: out.clone(),
        model: args.model.clone().unwrap_or_else(|| "model".into()),
        interp,
        iou_thresh,
        nms_iou,
        classes,
    };

    let matrix = match (&source, &cfg.grid) {
        (Some((dets, gt)), _) => matrix_from_detections(&cfg, dets, gt)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            EvalMatrix::from_csv(&text).with_context(|| format!("parsing {}", path.display()))?
        }
        (None, None) => unreachable!("checked above"),
    };
    let summary = RobustnessReport::from_matrix(&matrix)?;

    let mut grid = BTreeMap::new();
    grid.insert("clean".to_string(), summary.AP_clean);
    if let Some(c) = matrix.clouds {
        grid.insert("clouds".to_string(), c);
    }
    for (k, s, v) in matrix.cells() {
        grid.insert(format!("{}/{}", k.name(), s), v);
    }
    let table = all_tables(&[(cfg.model.as_str(), &summary)]);
    let report = Report {
        tool: ToolInfo::new("evaluate", &cfg),
        model: &cfg.model,
        interpolation: source.as_ref().map(|_| interp),
        summary: &summary,
        grid,
    };
    write_text(&out.join("matrix.csv"), &matrix.to_csv())?;
    write_json(&out.join("report.json"), &report)?;
    write_text(&out.join("table.txt"), &table)?;
    print!("{table}");
    Ok(Outcome::Success)
}
