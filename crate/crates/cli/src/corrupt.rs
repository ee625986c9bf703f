use std::path::PathBuf;

use aerobust_core::corruption::{corrupt_dataset, CorruptJob, CorruptionEngine, DatasetItem, FrostSource, JobReport};
use aerobust_core::SeveritySchedule;
use anyhow::{bail, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use crate::common::{parse_kinds, parse_severities, write_json, Outcome, ToolInfo};
use crate::config::required;

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorruptArgs {
    /// Dataset root: `images/` (+ optional `labelTxt/`), or a flat image directory.
    #[arg(long = "in")]
    #[serde(rename = "in")]
    pub input: Option<PathBuf>,
    /// Output root; images go to `<out>/<kind>/<severity>/<id>.png`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `all`, a category (noise, blur, weather, digital) or a comma-separated list of kinds.
    #[arg(long)]
    pub kinds: Option<String>,
    /// `1-5`, `3` or `1,3,5`.
    #[arg(long)]
    pub severities: Option<String>,
    /// Base seed; every image draws from a stream derived from it, its id, kind and severity (default 0).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Severity schedule (TOML); the bundled schedule when absent.
    #[arg(long)]
    pub schedule: Option<PathBuf>,
    /// Directory of frost textures; procedural frost when absent.
    #[arg(long)]
    pub frost_dir: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Resolved {
    #[serde(rename = "in")]
    input: PathBuf,
    out: PathBuf,
    kinds: Vec<String>,
    severities: Vec<u8>,
    seed: u64,
    schedule: Option<PathBuf>,
    frost_dir: Option<PathBuf>,
}

#[derive(Serialize)]
struct Report<'a> {
    tool: ToolInfo,
    #[serde(flatten)]
    job: &'a JobReport,
}

pub fn run(args: CorruptArgs) -> Result<Outcome> {
    let input = required(&args.input, "in")?;
    let out = required(&args.out, "out")?;
    let kinds = parse_kinds(args.kinds.as_deref().unwrap_or("all"))?;
    let severities = parse_severities(args.severities.as_deref().unwrap_or("1-5"))?;
    let seed = args.seed.unwrap_or(0);
    if !input.is_dir() {
        bail!("usage error: input dataset {} does not exist", input.display());
    }
    let schedule = match &args.schedule {
        Some(p) => SeveritySchedule::load(p)?,
        None => SeveritySchedule::default(),
    };
    let frost = match &args.frost_dir {
        Some(dir) => FrostSource::from_dir(dir)?,
        None => FrostSource::Procedural,
    };
    let items = DatasetItem::discover(&input)?;
    if items.is_empty() {
        bail!("usage error: no images found under {}", input.display());
    }

    let resolved = Resolved {
        input,
        out: out.clone(),
        kinds: kinds.iter().map(|k| k.name().to_string()).collect(),
        severities: severities.iter().map(|s| s.get()).collect(),
        seed,
        schedule: args.schedule.clone(),
        frost_dir: args.frost_dir.clone(),
    };
    let engine = CorruptionEngine::new(schedule).with_frost(frost);
    let job = CorruptJob { engine: &engine, kinds, severities, global_seed: seed, out_root: out.clone() };
    log::info!("corrupting {} images into {} cells", items.len(), job.kinds.len() * job.severities.len());
    let report = corrupt_dataset(&items, &job)?;

    for f in &report.failures {
        eprintln!("failed: {}: {}", f.path, f.error);
    }
    let mut tool = ToolInfo::new("corrupt", &resolved);
    tool.seed = Some(seed);
    tool.schedule_sha256 = Some(engine.schedule.checksum().to_string());
    write_json(&out.join("corrupt_report.json"), &Report { tool, job: &report })?;
    println!(
        "corrupt: {} of {} images processed, {} outputs written to {}",
        report.images_processed,
        report.images_total,
        report.outputs_written,
        out.display()
    );
    Ok(Outcome::from_failures(report.failures.len()))
}
