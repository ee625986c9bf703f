use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use aerobust_core::eval::{mpc, severity_curve, EvalMatrix};
use aerobust_core::{Category, CorruptionKind};
use anyhow::{bail, Context, Result};
use clap::Args;
use serde::{Deserialize, Serialize};

use crate::common::{fmt2, render_table, write_json, write_text, Outcome, ToolInfo};
use crate::config::required;

/// Largest tolerated gap between the curve mean and mPC.
const IDENTITY_TOL: f64 = 1e-9;

#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportArgs {
    /// Matrix CSV from `evaluate`, as `name=path` or `path` (named by file stem); repeatable.
    #[arg(long = "matrix")]
    #[serde(rename = "matrix")]
    pub matrices: Option<Vec<String>>,
    /// Output directory for the plot-data files.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct Resolved {
    matrices: Vec<(String, PathBuf)>,
    out: PathBuf,
}

#[derive(Debug, Serialize)]
struct ModelSummary {
    mpc: f64,
    severity_curve: [f64; 5],
    curve_mean: f64,
    category_mean_ap: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ap_clean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    category_rpc: Option<BTreeMap<String, f64>>,
}

#[derive(Serialize)]
struct Report<'a> {
    tool: ToolInfo,
    models: BTreeMap<&'a str, &'a ModelSummary>,
}

fn named(spec: &str) -> Result<(String, PathBuf)> {
    match spec.split_once('=') {
        Some((name, path)) if !name.is_empty() && !path.is_empty() => Ok((name.to_string(), PathBuf::from(path))),
        Some(_) => bail!("usage error: --matrix {spec:?} must be `name=path` or `path`"),
        None => {
            let path = PathBuf::from(spec);
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            if name.is_empty() {
                bail!("usage error: cannot name matrix {spec:?}");
            }
            Ok((name, path))
        }
    }
}

fn summarise(path: &Path) -> Result<ModelSummary> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let m = EvalMatrix::<f64>::from_csv(&text).with_context(|| format!("parsing {}", path.display()))?;
    let mpc = mpc(&m)?;
    let severity_curve = severity_curve(&m)?;
    let curve_mean = severity_curve.iter().sum::<f64>() / 5.0;
    let mut category_mean_ap = BTreeMap::new();
    for cat in Category::ALL {
        let kinds: Vec<CorruptionKind> = cat.kinds().collect();
        let sum = kinds.iter().map(|&k| m.kind_mean(k)).sum::<aerobust_core::Result<f64>>()?;
        category_mean_ap.insert(cat.name().to_string(), sum / kinds.len() as f64);
    }
    let category_rpc = m.clean.filter(|&c| c > 0.0).map(|c| {
        category_mean_ap.iter().map(|(k, v)| (k.clone(), 100.0 * v / c)).collect::<BTreeMap<_, _>>()
    });
    Ok(ModelSummary { mpc, severity_curve, curve_mean, category_mean_ap, ap_clean: m.clean, category_rpc })
}

pub fn run(args: ReportArgs) -> Result<Outcome> {
    let out = required(&args.out, "out")?;
    let specs = required(&args.matrices, "matrix")?;
    if specs.is_empty() {
        bail!("usage error: give at least one --matrix");
    }
    let matrices = specs.iter().map(|s| named(s)).collect::<Result<Vec<_>>>()?;
    for (i, (name, _)) in matrices.iter().enumerate() {
        if matrices[..i].iter().any(|(n, _)| n == name) {
            bail!("usage error: model name {name:?} given twice");
        }
    }
    let cfg = Resolved { matrices, out: out.clone() };
    let models: Vec<(String, ModelSummary)> =
        cfg.matrices.iter().map(|(n, p)| Ok((n.clone(), summarise(p)?))).collect::<Result<_>>()?;

    let mut curve = String::from("model,severity,mean_ap\n");
    let mut bars = String::from("model,category,mean_ap,rpc\n");
    for (name, s) in &models {
        for (i, v) in s.severity_curve.iter().enumerate() {
            curve.push_str(&format!("{name},{},{v}\n", i + 1));
        }
        for (cat, v) in &s.category_mean_ap {
            let rpc = s.category_rpc.as_ref().map(|r| r[cat].to_string()).unwrap_or_default();
            bars.push_str(&format!("{name},{cat},{v},{rpc}\n"));
        }
    }

    let headers: Vec<String> = ["Model", "s1", "s2", "s3", "s4", "s5", "mPC"].map(String::from).to_vec();
    let rows: Vec<Vec<String>> = models
        .iter()
        .map(|(name, s)| {
            let mut row = vec![name.clone()];
            row.extend(s.severity_curve.iter().map(|&v| fmt2(v)));
            row.push(fmt2(s.mpc));
            row
        })
        .collect();
    let mut summary = String::from("Mean AP50 over all corruptions at each severity\n");
    summary.push_str(&render_table(&headers, &rows));
    let mut outcome = Outcome::Success;
    summary.push('\n');
    for (name, s) in &models {
        let gap = (s.curve_mean - s.mpc).abs();
        let verdict = if gap <= IDENTITY_TOL { "ok" } else { "MISMATCH" };
        if gap > IDENTITY_TOL {
            outcome = Outcome::Partial;
        }
        summary.push_str(&format!("check {name}: mean(curve) = mPC, |diff| = {gap:.1e} ({verdict})\n"));
    }

    write_text(&out.join("severity_curve.csv"), &curve)?;
    write_text(&out.join("category_bars.csv"), &bars)?;
    write_text(&out.join("summary.txt"), &summary)?;
    let report = Report {
        tool: ToolInfo::new("report", &cfg),
        models: models.iter().map(|(n, s)| (n.as_str(), s)).collect(),
    };
    write_json(&out.join("report.json"), &report)?;
    print!("{summary}");
    Ok(outcome)
}
