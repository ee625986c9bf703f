use std::path::{Path, PathBuf};

use super::{cloud_compensate, cloud_self_subtract, CloudIngredient};
use crate::raster::{read_image, RasterImage};
use crate::{Error, Real, Result};

/// Default background threshold.
pub const DEFAULT_GAMMA: f64 = 128.0;

/// A real cloudy scene and its threshold. Construction extracts the cloud
/// ingredient once, so a source that yields no cloud is rejected up front.
#[derive(Clone, Debug)]
pub struct CloudSource<T> {
    pub name: String,
    pub image: RasterImage,
    pub gamma: T,
    ingredient: CloudIngredient<T>,
}

impl<T: Real> CloudSource<T> {
    pub fn new(name: impl Into<String>, image: RasterImage, gamma: T) -> Result<Self> {
        let name = name.into();
        let i_dc = cloud_self_subtract(&image, gamma)?;
        let ingredient = cloud_compensate(&image, &i_dc).map_err(|e| match e {
            Error::EmptyCloud(_) => Error::EmptyCloud(format!("cloud source {name} (gamma {gamma})")),
            other => other,
        })?;
        Ok(Self { name, image, gamma, ingredient })
    }

    pub fn ingredient(&self) -> &CloudIngredient<T> {
        &self.ingredient
    }
}

/// One line of a pool manifest.
#[derive(Clone, Debug, PartialEq)]
pub struct PoolEntry {
    pub path: PathBuf,
    pub gamma: Option<f64>,
}

/// Parse a pool manifest: one `path [gamma]` per line, `#` starts a
/// comment, blank lines are ignored. Relative paths are resolved against
/// `base`.
pub fn parse_pool_manifest(text: &str, base: &Path) -> Result<Vec<PoolEntry>> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let path = base.join(tokens.next().unwrap_or_default());
        let gamma = match tokens.next() {
            Some(t) => {
                let g: f64 = t
                    .parse()
                    .map_err(|_| Error::Parse { line: n + 1, message: format!("gamma {t:?} is not a number") })?;
                if !(0.0..=255.0).contains(&g) {
                    return Err(Error::Parse { line: n + 1, message: format!("gamma {g} outside [0, 255]") });
                }
                Some(g)
            }
            None => None,
        };
        if tokens.next().is_some() {
            return Err(Error::Parse { line: n + 1, message: "expected `path [gamma]`".into() });
        }
        entries.push(PoolEntry { path, gamma });
    }
    Ok(entries)
}

/// Read and validate every source listed in a pool manifest file.
pub fn load_pool<T: Real>(manifest: &Path, default_gamma: f64) -> Result<Vec<CloudSource<T>>> {
    let text = std::fs::read_to_string(manifest).map_err(|e| Error::io(manifest, e))?;
    let base = manifest.parent().unwrap_or(Path::new(""));
    let entries = parse_pool_manifest(&text, base)?;
    if entries.is_empty() {
        return Err(Error::Config(format!("cloud pool {} lists no sources", manifest.display())));
    }
    entries
        .into_iter()
        .map(|e| {
            let image = read_image(&e.path)?;
            let gamma = T::lit(e.gamma.unwrap_or(default_gamma));
            CloudSource::new(e.path.display().to_string(), image, gamma)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_lines() {
        let text = "# pool\na.png\n\n b.png 140 # bright\n";
        let e = parse_pool_manifest(text, Path::new("/p")).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0], PoolEntry { path: "/p/a.png".into(), gamma: None });
        assert_eq!(e[1].gamma, Some(140.0));
    }

    #[test]
    fn manifest_errors_carry_line_numbers() {
        match parse_pool_manifest("a.png\nb.png x\n", Path::new("")) {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_pool_manifest("a.png 300", Path::new("")).is_err());
        assert!(parse_pool_manifest("a.png 1 2", Path::new("")).is_err());
    }

    #[test]
    fn dark_source_is_rejected_by_name() {
        let img = RasterImage::filled(4, 4, [100, 100, 100]);
        let err = CloudSource::new("dark.png", img, 128.0f64).unwrap_err();
        assert!(matches!(&err, Error::EmptyCloud(n) if n.contains("dark.png")), "{err}");
    }
}
