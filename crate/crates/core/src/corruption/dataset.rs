use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{CorruptionEngine, CorruptionKind, CorruptionSpec, Severity};
use crate::raster::{derive_seed, read_image, write_png, ImageFormat};
use crate::{Error, Result};

/// One test image and its (optional) DOTA label file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetItem {
    pub image: PathBuf,
    pub annotation: Option<PathBuf>,
}

impl DatasetItem {
    pub fn new(image: impl Into<PathBuf>) -> Self {
        Self { image: image.into(), annotation: None }
    }

    /// List images under `root/images` (or `root` itself when that does not
    /// exist), pairing each with `root/labelTxt/<id>.txt` when present.
    pub fn discover(root: &Path) -> Result<Vec<DatasetItem>> {
        let images = if root.join("images").is_dir() { root.join("images") } else { root.to_path_buf() };
        let labels = root.join("labelTxt");
        let mut paths: Vec<PathBuf> = std::fs::read_dir(&images)
            .map_err(|e| Error::io(&images, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && ImageFormat::from_path(p).is_some())
            .collect();
        paths.sort();
        Ok(paths
            .into_iter()
            .map(|image| {
                let label = labels.join(format!("{}.txt", image_id(&image)));
                DatasetItem { annotation: label.is_file().then_some(label), image }
            })
            .collect())
    }
}

/// Image identifier: the file stem.
pub fn image_id(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

#[derive(Clone, Debug)]
pub struct CorruptJob<'a> {
    pub engine: &'a CorruptionEngine,
    pub kinds: Vec<CorruptionKind>,
    pub severities: Vec<Severity>,
    pub global_seed: u64,
    pub out_root: PathBuf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemFailure {
    pub path: String,
    pub error: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobReport {
    pub images_total: usize,
    pub images_processed: usize,
    pub outputs_written: usize,
    pub per_kind: BTreeMap<String, usize>,
    pub failures: Vec<ItemFailure>,
    pub global_seed: u64,
    pub schedule_version: String,
    pub schedule_sha256: String,
}

impl JobReport {
    pub fn is_partial_failure(&self) -> bool {
        !self.failures.is_empty()
    }
}

/// Output path of one corrupted image: `<root>/<kind>/<severity>/<id>.png`.
pub fn output_path(root: &Path, kind: CorruptionKind, severity: Severity, id: &str) -> PathBuf {
    root.join(kind.name()).join(severity.to_string()).join(format!("{id}.png"))
}

struct ItemOutcome {
    written: Vec<CorruptionKind>,
    failures: Vec<ItemFailure>,
    processed: bool,
}

fn process_item(item: &DatasetItem, job: &CorruptJob<'_>) -> ItemOutcome {
    let fail = |path: &Path, e: Error| ItemFailure { path: path.display().to_string(), error: e.to_string() };
    let image = match read_image(&item.image) {
        Ok(img) => img,
        Err(e) => return ItemOutcome { written: vec![], failures: vec![fail(&item.image, e)], processed: false },
    };
    let label = match &item.annotation {
        Some(p) => match std::fs::read(p) {
            Ok(bytes) => Some(bytes),
            Err(e) => {
                return ItemOutcome { written: vec![], failures: vec![fail(p, Error::io(p, e))], processed: false }
            }
        },
        None => None,
    };
    let id = image_id(&item.image);
    let mut out = ItemOutcome { written: vec![], failures: vec![], processed: true };
    for &kind in &job.kinds {
        for &severity in &job.severities {
            let seed = derive_seed(job.global_seed, &id, kind.name(), severity.get() as u32);
            let spec = CorruptionSpec { kind, severity, seed };
            let dest = output_path(&job.out_root, kind, severity, &id);
            let result = job.engine.corrupt(&image, &spec).and_then(|img| write_png(&dest, &img)).and_then(|_| {
                if let Some(bytes) = &label {
                    let lp = dest.parent().unwrap().join("labelTxt").join(format!("{id}.txt"));
                    std::fs::create_dir_all(lp.parent().unwrap()).map_err(|e| Error::io(&lp, e))?;
                    std::fs::write(&lp, bytes).map_err(|e| Error::io(&lp, e))?;
                }
                Ok(())
            });
            match result {
                Ok(()) => out.written.push(kind),
                Err(e) => out.failures.push(fail(&dest, e)),
            }
        }
    }
    out
}

/// Corrupt every image for every (kind, severity) cell. Per-item errors are
/// collected into the report; the job itself only fails on setup errors.
pub fn corrupt_dataset(items: &[DatasetItem], job: &CorruptJob<'_>) -> Result<JobReport> {
    if job.kinds.is_empty() || job.severities.is_empty() {
        return Err(Error::Config("no corruption kinds or severities selected".into()));
    }
    std::fs::create_dir_all(&job.out_root).map_err(|e| Error::io(&job.out_root, e))?;
    let outcomes: Vec<ItemOutcome> = items.par_iter().map(|item| process_item(item, job)).collect();

    let mut per_kind: BTreeMap<String, usize> = job.kinds.iter().map(|k| (k.name().to_string(), 0)).collect();
    let mut failures = Vec::new();
    let mut processed = 0;
    let mut written = 0;
    for o in outcomes {
        processed += o.processed as usize;
        written += o.written.len();
        for k in o.written {
            *per_kind.entry(k.name().to_string()).or_default() += 1;
        }
        failures.extend(o.failures);
    }
    Ok(JobReport {
        images_total: items.len(),
        images_processed: processed,
        outputs_written: written,
        per_kind,
        failures,
        global_seed: job.global_seed,
        schedule_version: job.engine.schedule.version.clone(),
        schedule_sha256: job.engine.schedule.checksum().to_string(),
    })
}
