use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

const DEFAULT_SCHEDULE: &str = include_str!("../../schedules/default.toml");

type Levels<T> = [T; 5];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaParams {
    pub sigma: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShotParams {
    pub photons: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpulseParams {
    pub amount: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefocusParams {
    pub radius: Levels<f64>,
    pub alias_sigma: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlassParams {
    pub sigma: Levels<f64>,
    pub max_delta: Levels<u32>,
    pub iterations: Levels<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MotionParams {
    pub length: Levels<f64>,
    pub sigma: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZoomParams {
    pub max_zoom: Levels<f64>,
    pub step: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SnowParams {
    pub mean: Levels<f64>,
    pub std: Levels<f64>,
    pub zoom: Levels<f64>,
    pub threshold: Levels<f64>,
    pub streak_length: Levels<f64>,
    pub streak_sigma: Levels<f64>,
    pub base_weight: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrostParams {
    pub image_weight: Levels<f64>,
    pub frost_weight: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FogParams {
    pub strength: Levels<f64>,
    pub decay: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BrightnessParams {
    pub delta: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpatterParams {
    pub mean: Levels<f64>,
    pub std: Levels<f64>,
    pub sigma: Levels<f64>,
    pub threshold: Levels<f64>,
    pub intensity: Levels<f64>,
    pub mud: Levels<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContrastParams {
    pub factor: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElasticParams {
    pub alpha: Levels<f64>,
    pub sigma: Levels<f64>,
    pub affine: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PixelateParams {
    pub scale: Levels<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JpegParams {
    pub quality: Levels<u8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SaturateParams {
    pub scale: Levels<f64>,
    pub shift: Levels<f64>,
}

/// Per-kind parameters for the five severities.
///
/// Loaded from a TOML file with one table per kind; the SHA-256 of the
/// source text identifies the schedule in job reports.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeveritySchedule {
    pub version: String,
    pub gaussian_noise: SigmaParams,
    pub shot_noise: ShotParams,
    pub impulse_noise: ImpulseParams,
    pub speckle_noise: SigmaParams,
    pub defocus_blur: DefocusParams,
    pub glass_blur: GlassParams,
    pub motion_blur: MotionParams,
    pub zoom_blur: ZoomParams,
    pub gaussian_blur: SigmaParams,
    pub snow: SnowParams,
    pub frost: FrostParams,
    pub fog: FogParams,
    pub brightness: BrightnessParams,
    pub spatter: SpatterParams,
    pub contrast: ContrastParams,
    pub elastic_transform: ElasticParams,
    pub pixelate: PixelateParams,
    pub jpeg_compression: JpegParams,
    pub saturate: SaturateParams,
    #[serde(skip)]
    checksum: String,
}

fn sha256_hex(text: &str) -> String {
    Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn check(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Config(format!("schedule: {what}")))
    }
}

fn all(v: &[f64], pred: impl Fn(f64) -> bool) -> bool {
    v.iter().all(|&x| x.is_finite() && pred(x))
}

impl SeveritySchedule {
    pub fn from_toml(text: &str) -> Result<Self> {
        let mut schedule: SeveritySchedule =
            toml::from_str(text).map_err(|e| Error::Config(format!("schedule: {e}")))?;
        schedule.checksum = sha256_hex(text);
        schedule.validate()?;
        Ok(schedule)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml(&text)
    }

    /// The schedule shipped with the crate.
    pub fn default_text() -> &'static str {
        DEFAULT_SCHEDULE
    }

    /// SHA-256 (hex) of the TOML text this schedule was parsed from.
    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    pub fn validate(&self) -> Result<()> {
        let pos = |x: f64| x > 0.0;
        let nonneg = |x: f64| x >= 0.0;
        let unit = |x: f64| (0.0..=1.0).contains(&x);
        check(all(&self.gaussian_noise.sigma, nonneg), "gaussian_noise.sigma must be >= 0")?;
        check(all(&self.shot_noise.photons, pos), "shot_noise.photons must be > 0")?;
        check(all(&self.impulse_noise.amount, unit), "impulse_noise.amount must lie in [0, 1]")?;
        check(all(&self.speckle_noise.sigma, nonneg), "speckle_noise.sigma must be >= 0")?;
        check(all(&self.defocus_blur.radius, nonneg), "defocus_blur.radius must be >= 0")?;
        check(all(&self.defocus_blur.alias_sigma, nonneg), "defocus_blur.alias_sigma must be >= 0")?;
        check(all(&self.glass_blur.sigma, nonneg), "glass_blur.sigma must be >= 0")?;
        check(all(&self.motion_blur.length, nonneg), "motion_blur.length must be >= 0")?;
        check(all(&self.motion_blur.sigma, pos), "motion_blur.sigma must be > 0")?;
        check(all(&self.zoom_blur.max_zoom, |z| z >= 1.0), "zoom_blur.max_zoom must be >= 1")?;
        check(all(&self.zoom_blur.step, pos), "zoom_blur.step must be > 0")?;
        check(all(&self.gaussian_blur.sigma, nonneg), "gaussian_blur.sigma must be >= 0")?;
        check(all(&self.snow.zoom, |z| z >= 1.0), "snow.zoom must be >= 1")?;
        check(all(&self.snow.std, nonneg), "snow.std must be >= 0")?;
        check(all(&self.snow.streak_sigma, pos), "snow.streak_sigma must be > 0")?;
        check(all(&self.snow.base_weight, unit), "snow.base_weight must lie in [0, 1]")?;
        check(all(&self.frost.image_weight, nonneg), "frost.image_weight must be >= 0")?;
        check(all(&self.frost.frost_weight, nonneg), "frost.frost_weight must be >= 0")?;
        check(all(&self.fog.strength, nonneg), "fog.strength must be >= 0")?;
        check(all(&self.fog.decay, pos), "fog.decay must be > 0")?;
        check(all(&self.spatter.std, nonneg), "spatter.std must be >= 0")?;
        check(all(&self.spatter.sigma, nonneg), "spatter.sigma must be >= 0")?;
        check(all(&self.contrast.factor, nonneg), "contrast.factor must be >= 0")?;
        check(all(&self.elastic_transform.alpha, nonneg), "elastic_transform.alpha must be >= 0")?;
        check(all(&self.elastic_transform.sigma, pos), "elastic_transform.sigma must be > 0")?;
        check(all(&self.elastic_transform.affine, nonneg), "elastic_transform.affine must be >= 0")?;
        check(all(&self.pixelate.scale, |s| s > 0.0 && s <= 1.0), "pixelate.scale must lie in (0, 1]")?;
        check(
            self.jpeg_compression.quality.iter().all(|q| (1..=100).contains(q)),
            "jpeg_compression.quality must lie in 1..=100",
        )?;
        check(all(&self.saturate.scale, nonneg), "saturate.scale must be >= 0")?;
        Ok(())
    }
}

impl Default for SeveritySchedule {
    fn default() -> Self {
        Self::from_toml(DEFAULT_SCHEDULE).expect("bundled schedule is valid")
    }
}
