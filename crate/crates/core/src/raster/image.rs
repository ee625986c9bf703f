use crate::{Error, Result};

/// Number of interleaved channels (RGB).
pub const CHANNELS: usize = 3;

/// Round-half-up and clamp to the 8-bit range.
#[inline]
pub fn quantize(v: f32) -> u8 {
    if v.is_nan() {
        return 0;
    }
    (v.clamp(0.0, 255.0) + 0.5).floor().min(255.0) as u8
}

/// 8-bit interleaved RGB raster, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl std::fmt::Debug for RasterImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RasterImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

impl RasterImage {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != width * height * CHANNELS {
            return Err(Error::param(format!(
                "buffer of {} bytes does not match {width}x{height}x{CHANNELS}",
                data.len()
            )));
        }
        Ok(Self { width, height, data })
    }

    pub fn filled(width: usize, height: usize, rgb: [u8; 3]) -> Self {
        let data = rgb.iter().copied().cycle().take(width * height * CHANNELS).collect();
        Self { width, height, data }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [u8; 3]) -> Self {
        let mut data = Vec::with_capacity(width * height * CHANNELS);
        for y in 0..height {
            for x in 0..width {
                data.extend_from_slice(&f(x, y));
            }
        }
        Self { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn into_data(self) -> Vec<u8> {
        self.data
    }

    pub fn pixel(&self, x: usize, y: usize) -> [u8; 3] {
        let i = (y * self.width + x) * CHANNELS;
        [self.data[i], self.data[i + 1], self.data[i + 2]]
    }

    pub fn set_pixel(&mut self, x: usize, y: usize, rgb: [u8; 3]) {
        let i = (y * self.width + x) * CHANNELS;
        self.data[i..i + CHANNELS].copy_from_slice(&rgb);
    }

    pub fn to_float(&self) -> FloatImage {
        FloatImage {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| v as f32).collect(),
        }
    }

    /// Copy a `w`x`h` window whose origin is `(x0, y0)`; pixels falling
    /// outside the source are filled with `pad`.
    pub fn crop_padded(&self, x0: usize, y0: usize, w: usize, h: usize, pad: u8) -> RasterImage {
        let mut out = vec![pad; w * h * CHANNELS];
        for y in 0..h {
            let sy = y0 + y;
            if sy >= self.height {
                break;
            }
            let sx_end = (x0 + w).min(self.width);
            if x0 >= sx_end {
                continue;
            }
            let n = (sx_end - x0) * CHANNELS;
            let src = (sy * self.width + x0) * CHANNELS;
            let dst = y * w * CHANNELS;
            out[dst..dst + n].copy_from_slice(&self.data[src..src + n]);
        }
        RasterImage { width: w, height: h, data: out }
    }
}

/// Real-valued RGB working image with values nominally in `[0, 255]`.
///
/// Values are unclamped until [`FloatImage::quantize`].
#[derive(Clone, Debug, PartialEq)]
pub struct FloatImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f32>,
}

impl FloatImage {
    pub fn zeros(width: usize, height: usize) -> Self {
        Self { width, height, data: vec![0.0; width * height * CHANNELS] }
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize, c: usize) -> f32 {
        self.data[(y * self.width + x) * CHANNELS + c]
    }

    #[inline]
    pub fn at_mut(&mut self, x: usize, y: usize, c: usize) -> &mut f32 {
        &mut self.data[(y * self.width + x) * CHANNELS + c]
    }

    pub fn map(mut self, f: impl Fn(f32) -> f32) -> Self {
        self.data.iter_mut().for_each(|v| *v = f(*v));
        self
    }

    pub fn quantize(&self) -> RasterImage {
        RasterImage {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|&v| quantize(v)).collect(),
        }
    }

    /// Per-channel mean.
    pub fn channel_means(&self) -> [f64; 3] {
        let mut acc = [0.0f64; 3];
        for px in self.data.chunks_exact(CHANNELS) {
            for c in 0..CHANNELS {
                acc[c] += px[c] as f64;
            }
        }
        let n = (self.width * self.height).max(1) as f64;
        acc.map(|s| s / n)
    }

    /// Luma (ITU-R BT.601 weights), one value per pixel.
    pub fn luma(&self) -> GrayMap {
        let data = self
            .data
            .chunks_exact(CHANNELS)
            .map(|p| 0.299 * p[0] + 0.587 * p[1] + 0.114 * p[2])
            .collect();
        GrayMap { width: self.width, height: self.height, data }
    }
}

/// Single-channel real map (noise layers, masks, heightmaps).
#[derive(Clone, Debug, PartialEq)]
pub struct GrayMap {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f32>,
}

impl GrayMap {
    pub fn zeros(width: usize, height: usize) -> Self {
        Self { width, height, data: vec![0.0; width * height] }
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> f32 {
        self.data[y * self.width + x]
    }

    /// Broadcast to three identical channels.
    pub fn to_rgb(&self) -> FloatImage {
        let data = self.data.iter().flat_map(|&v| [v, v, v]).collect();
        FloatImage { width: self.width, height: self.height, data }
    }

    pub fn max(&self) -> f32 {
        self.data.iter().copied().fold(f32::NEG_INFINITY, f32::max)
    }

    pub fn min(&self) -> f32 {
        self.data.iter().copied().fold(f32::INFINITY, f32::min)
    }

    /// Rotate by 180 degrees.
    pub fn rotated_half_turn(&self) -> GrayMap {
        let mut data = self.data.clone();
        data.reverse();
        GrayMap { width: self.width, height: self.height, data }
    }
}
