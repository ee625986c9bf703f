use std::path::Path;

use aerobust_core::{Category, CorruptionKind, Severity, VERSION};
use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

/// How a command finished when it did not fail outright.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Some items failed; the rest were written.
    Partial,
}

impl Outcome {
    pub fn from_failures(n: usize) -> Self {
        if n == 0 {
            Outcome::Success
        } else {
            Outcome::Partial
        }
    }
}

/// Provenance block embedded in every report.
#[derive(Debug, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub config: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub schedule_sha256: Option<String>,
}

impl ToolInfo {
    pub fn new(command: &'static str, config: &impl Serialize) -> Self {
        Self {
            name: "aerobust",
            version: VERSION,
            command,
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
            seed: None,
            schedule_sha256: None,
        }
    }
}

pub fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    write_text(path, &(text + "\n"))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// `all`, a category name, or a comma-separated list of kinds and
/// categories.
pub fn parse_kinds(spec: &str) -> Result<Vec<CorruptionKind>> {
    let mut kinds = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok == "all" {
            kinds.extend(CorruptionKind::ALL);
        } else if let Ok(cat) = tok.parse::<Category>() {
            kinds.extend(cat.kinds());
        } else {
            kinds.push(tok.parse::<CorruptionKind>().map_err(|e| anyhow!("usage error: {e}"))?);
        }
    }
    if kinds.is_empty() {
        bail!("usage error: no corruption kinds given; valid kinds: {}", CorruptionKind::valid_names());
    }
    let mut seen = Vec::new();
    kinds.retain(|k| if seen.contains(k) { false } else { seen.push(*k); true });
    Ok(kinds)
}

/// `3`, `1-5`, `1,3,5` or `all`.
pub fn parse_severities(spec: &str) -> Result<Vec<Severity>> {
    let bad = || anyhow!("usage error: severities {spec:?} must look like 3, 1-5 or 1,3,5 with levels in 1..=5");
    let level = |t: &str| -> Result<u8> {
        let v: u8 = t.trim().parse().map_err(|_| bad())?;
        Severity::new(v).map_err(|_| bad())?;
        Ok(v)
    };
    let mut levels = Vec::new();
    for tok in spec.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        if tok == "all" {
            levels.extend(1..=5);
        } else if let Some((a, b)) = tok.split_once('-') {
            let (a, b) = (level(a)?, level(b)?);
            if a > b {
                return Err(bad());
            }
            levels.extend(a..=b);
        } else {
            levels.push(level(tok)?);
        }
    }
    levels.sort();
    levels.dedup();
    if levels.is_empty() {
        return Err(bad());
    }
    Ok(levels.into_iter().map(|l| Severity::new(l).expect("validated")).collect())
}

pub fn check_unit(v: f64, name: &str, allow_zero: bool) -> Result<f64> {
    let ok = v.is_finite() && v <= 1.0 && if allow_zero { v >= 0.0 } else { v > 0.0 };
    if ok {
        Ok(v)
    } else {
        let lo = if allow_zero { "[0" } else { "(0" };
        bail!("usage error: --{} must lie in {lo}, 1], got {v}", name.replace('_', "-"))
    }
}

/// Aligned plain-text table; the first column is left-aligned, the rest
/// right-aligned.
pub fn render_table(headers: &[String], rows: &[Vec<String>]) -> String {
    let n = headers.len();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| {
        let mut s = String::new();
        for (i, cell) in cells.iter().enumerate().take(n) {
            if i > 0 {
                s.push_str("  ");
            }
            if i == 0 {
                s.push_str(&format!("{cell:<w$}", w = widths[i]));
            } else {
                s.push_str(&format!("{cell:>w$}", w = widths[i]));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(headers);
    out.push_str(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  "));
    out.push('\n');
    for row in rows {
        out.push_str(&line(row));
    }
    out
}

pub fn fmt2(v: f64) -> String {
    format!("{v:.2}")
}
