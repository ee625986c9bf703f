use std::path::PathBuf;

use aerobust_core::cloud::{cloudify_dataset, load_pool, CloudReport, DEFAULT_GAMMA};
use aerobust_core::corruption::DatasetItem;
use aerobust_core::CompositeParams64;
use anyhow::{bail, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use crate::common::{check_unit, write_json, Outcome, ToolInfo};
use crate::config::required;

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CloudifyArgs {
    /// Dataset root: `images/` (+ optional `labelTxt/`), or a flat image directory.
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    /// Output root; images go to `<out>/clouds/<id>.png`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Pool manifest: one `path [gamma]` per line, relative to the manifest.
    #[arg(long)]
    pub pool: Option<PathBuf>,
    /// Background threshold for sources without their own value.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Weight of the cloud layer in the composite.
    #[arg(long)]
    pub atmospheric_light: Option<f64>,
    /// Base seed for source and window draws (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Serialize)]
struct Resolved {
    #[serde(rename = "in")]
    input: PathBuf,
    out: PathBuf,
    pool: PathBuf,
    gamma: f64,
    atmospheric_light: f64,
    seed: u64,
}

#[derive(Serialize)]
struct Report<'a> {
    tool: ToolInfo,
    #[serde(flatten)]
    job: &'a CloudReport,
}

pub fn run(args: CloudifyArgs) -> Result<Outcome> {
    let input = required(&args.input, "in")?;
    let out = required(&args.out, "out")?;
    let pool_path = required(&args.pool, "pool")?;
    let gamma = args.gamma.unwrap_or(DEFAULT_GAMMA);
    if !(0.0..=255.0).contains(&gamma) {
        bail!("usage error: --gamma must lie in [0, 255], got {gamma}");
    }
    let a = check_unit(args.atmospheric_light.unwrap_or(0.95), "atmospheric_light", false)?;
    let seed = args.seed.unwrap_or(0);
    if !input.is_dir() {
        bail!("usage error: input dataset {} does not exist", input.display());
    }
    let params = CompositeParams64::new(a)?;
    let pool = load_pool::<f64>(&pool_path, gamma)?;
    let items = DatasetItem::discover(&input)?;
    if items.is_empty() {
        bail!("usage error: no images found under {}", input.display());
    }

    let resolved = Resolved { input, out: out.clone(), pool: pool_path, gamma, atmospheric_light: a, seed };
    log::info!("clouding {} images from a pool of {}", items.len(), pool.len());
    let report = cloudify_dataset(&items, &pool, &params, seed, &out)?;

    for f in &report.failures {
        eprintln!("failed: {}: {}", f.path, f.error);
    }
    let mut tool = ToolInfo::new("cloudify", &resolved);
    tool.seed = Some(seed);
    write_json(&out.join("cloudify_report.json"), &Report { tool, job: &report })?;
    println!(
        "cloudify: {} of {} images written to {} from {} sources",
        report.outputs_written,
        report.images_total,
        out.join("clouds").display(),
        report.sources.len()
    );
    for s in &report.sources {
        println!("  {:>5}  gamma {:>5}  {}", s.uses, s.gamma, s.name);
    }
    Ok(Outcome::from_failures(report.failures.len()))
}
