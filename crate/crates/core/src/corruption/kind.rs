use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// The four corruption families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Noise,
    Blur,
    Weather,
    Digital,
}

impl Category {
    pub const ALL: [Category; 4] = [Category::Noise, Category::Blur, Category::Weather, Category::Digital];

    pub fn name(self) -> &'static str {
        match self {
            Category::Noise => "noise",
            Category::Blur => "blur",
            Category::Weather => "weather",
            Category::Digital => "digital",
        }
    }

    pub fn kinds(self) -> impl Iterator<Item = CorruptionKind> {
        CorruptionKind::ALL.into_iter().filter(move |k| k.category() == self)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Category {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Category::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::param(format!("unknown corruption category {s:?}")))
    }
}

macro_rules! kinds {
    ($( $variant:ident => $name:literal, $abbr:literal, $cat:ident; )*) => {
        /// One of the 19 common corruptions, in table order.
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        #[serde(rename_all = "snake_case")]
        pub enum CorruptionKind {
            $($variant,)*
        }

        impl CorruptionKind {
            pub const ALL: [CorruptionKind; 19] = [$(CorruptionKind::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(CorruptionKind::$variant => $name,)*
                }
            }

            /// Short column header used in result tables.
            pub fn abbreviation(self) -> &'static str {
                match self {
                    $(CorruptionKind::$variant => $abbr,)*
                }
            }

            pub fn category(self) -> Category {
                match self {
                    $(CorruptionKind::$variant => Category::$cat,)*
                }
            }
        }
    };
}

kinds! {
    GaussianNoise => "gaussian_noise", "Ga.", Noise;
    ShotNoise => "shot_noise", "Shot", Noise;
    ImpulseNoise => "impulse_noise", "Im.", Noise;
    SpeckleNoise => "speckle_noise", "Spec.", Noise;
    DefocusBlur => "defocus_blur", "De.", Blur;
    GlassBlur => "glass_blur", "Glass", Blur;
    MotionBlur => "motion_blur", "Mo.", Blur;
    ZoomBlur => "zoom_blur", "Zoom", Blur;
    GaussianBlur => "gaussian_blur", "Ga.", Blur;
    Snow => "snow", "Snow", Weather;
    Frost => "frost", "Frost", Weather;
    Fog => "fog", "Fog", Weather;
    Brightness => "brightness", "Br.", Weather;
    Spatter => "spatter", "Spat.", Weather;
    Contrast => "contrast", "Co.", Digital;
    ElasticTransform => "elastic_transform", "El.", Digital;
    Pixelate => "pixelate", "Pixel", Digital;
    JpegCompression => "jpeg_compression", "JPEG", Digital;
    Saturate => "saturate", "Sa.", Digital;
}

impl CorruptionKind {
    pub fn valid_names() -> String {
        CorruptionKind::ALL.map(|k| k.name()).join(", ")
    }
}

impl fmt::Display for CorruptionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorruptionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CorruptionKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            Error::param(format!("unknown corruption kind {s:?}; valid kinds: {}", CorruptionKind::valid_names()))
        })
    }
}

/// Severity level 1..=5.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Severity(u8);

impl Severity {
    pub const MIN: u8 = 1;
    pub const MAX: u8 = 5;

    pub fn new(level: u8) -> Result<Self> {
        if (Self::MIN..=Self::MAX).contains(&level) {
            Ok(Severity(level))
        } else {
            Err(Error::param(format!("severity {level} outside 1..=5")))
        }
    }

    pub fn all() -> impl Iterator<Item = Severity> {
        (Self::MIN..=Self::MAX).map(Severity)
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based position in a five-entry schedule array.
    pub fn index(self) -> usize {
        (self.0 - 1) as usize
    }
}

impl TryFrom<u8> for Severity {
    type Error = Error;

    fn try_from(v: u8) -> Result<Self> {
        Severity::new(v)
    }
}

impl From<Severity> for u8 {
    fn from(s: Severity) -> u8 {
        s.0
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// What to apply to one image.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorruptionSpec {
    pub kind: CorruptionKind,
    pub severity: Severity,
    pub seed: u64,
}

impl CorruptionSpec {
    pub fn new(kind: CorruptionKind, severity: u8, seed: u64) -> Result<Self> {
        Ok(Self { kind, severity: Severity::new(severity)?, seed })
    }

    /// Build from loosely typed inputs (names as found in configs or bindings).
    pub fn parse(kind: &str, severity: i64, seed: u64) -> Result<Self> {
        let kind = kind.parse()?;
        let severity = u8::try_from(severity).map_err(|_| Error::param(format!("severity {severity} outside 1..=5")))?;
        Self::new(kind, severity, seed)
    }
}
