//! Config-file loading and flag overlay.
//!
//! A config file is TOML. Keys are the long flag names with `-` replaced by
//! `_`. They are either flat at the top level or grouped under a
//! `[<command>]` table. A top-level `threads` key sets the worker count.
//! Flags given on the command line win over the file.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

pub const COMMANDS: [&str; 5] = ["corrupt", "cloudify", "split", "evaluate", "report"];

/// Settings for one command read from a config file.
#[derive(Debug, Default)]
pub struct FileSettings {
    pub section: Map<String, Value>,
    pub threads: Option<usize>,
}

pub fn load(path: &Path, command: &str) -> Result<FileSettings> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
    let table: toml::Table =
        toml::from_str(&text).map_err(|e| anyhow!("configuration error: {}: {e}", path.display()))?;
    let threads = match table.get("threads") {
        None => None,
        Some(v) => Some(
            v.as_integer()
                .and_then(|n| usize::try_from(n).ok())
                .ok_or_else(|| anyhow!("configuration error: threads must be a non-negative integer"))?,
        ),
    };
    let section: toml::Table = match table.get(command) {
        Some(toml::Value::Table(t)) => t.clone(),
        Some(_) => return Err(anyhow!("configuration error: [{command}] must be a table")),
        None => table.into_iter().filter(|(k, _)| k != "threads" && !COMMANDS.contains(&k.as_str())).collect(),
    };
    let section = match serde_json::to_value(section)? {
        Value::Object(m) => m,
        _ => unreachable!("a TOML table serialises to an object"),
    };
    Ok(FileSettings { section, threads })
}

/// Overlay the flags that were given onto the file settings.
pub fn merge<T: Serialize + DeserializeOwned>(file: Map<String, Value>, flags: &T) -> Result<T> {
    let mut merged = file;
    if let Value::Object(given) = serde_json::to_value(flags)? {
        merged.extend(given.into_iter().filter(|(_, v)| !v.is_null()));
    }
    serde_json::from_value(Value::Object(merged)).map_err(|e| anyhow!("configuration error: {e}"))
}

pub fn required<T: Clone>(v: &Option<T>, key: &str) -> Result<T> {
    v.clone().ok_or_else(|| anyhow!("usage error: missing --{} (or `{}` in the config file)", key.replace('_', "-"), key))
}
