use super::{FloatImage, GrayMap, CHANNELS};
use crate::{Error, Result};

/// How samples outside the image are folded back inside.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Border {
    /// Clamp to the nearest edge pixel.
    Replicate,
    /// Half-sample symmetric mirror: `... c b a | a b c ... x y z | z y x ...`.
    Reflect,
}

impl Border {
    #[inline]
    pub fn fold(self, i: isize, n: usize) -> usize {
        let n = n as isize;
        match self {
            Border::Replicate => i.clamp(0, n - 1) as usize,
            Border::Reflect => {
                let m = i.rem_euclid(2 * n);
                (if m < n { m } else { 2 * n - 1 - m }) as usize
            }
        }
    }
}

/// Dense 2-D kernel with odd dimensions, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel {
    width: usize,
    height: usize,
    weights: Vec<f32>,
}

impl Kernel {
    pub fn new(width: usize, height: usize, weights: Vec<f32>) -> Result<Self> {
        if width % 2 == 0 || height % 2 == 0 {
            return Err(Error::param(format!("kernel dimensions {width}x{height} must be odd")));
        }
        if weights.len() != width * height {
            return Err(Error::param("kernel weight count does not match its dimensions"));
        }
        Ok(Self { width, height, weights })
    }

    pub fn from_rows(rows: &[&[f32]]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::param("ragged kernel rows"));
        }
        Self::new(width, height, rows.iter().flat_map(|r| r.iter().copied()).collect())
    }

    pub fn identity() -> Self {
        Self { width: 1, height: 1, weights: vec![1.0] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn weights(&self) -> &[f32] {
        &self.weights
    }

    pub fn at(&self, x: usize, y: usize) -> f32 {
        self.weights[y * self.width + x]
    }

    /// Scale so the weights sum to one. No-op on a zero-sum kernel.
    pub fn normalized(mut self) -> Self {
        let s: f64 = self.weights.iter().map(|&w| w as f64).sum();
        if s != 0.0 {
            self.weights.iter_mut().for_each(|w| *w = (*w as f64 / s) as f32);
        }
        self
    }
}

/// Normalised 1-D Gaussian taps covering `[-radius, radius]`.
pub fn gaussian_kernel_1d(sigma: f32, radius: usize) -> Vec<f32> {
    if sigma <= 0.0 {
        let mut k = vec![0.0; 2 * radius + 1];
        k[radius] = 1.0;
        return k;
    }
    let two_s2 = 2.0 * (sigma as f64).powi(2);
    let raw: Vec<f64> = (0..=2 * radius)
        .map(|i| {
            let d = i as f64 - radius as f64;
            (-d * d / two_s2).exp()
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|v| (v / sum) as f32).collect()
}

/// Types that store interleaved planar real samples.
pub trait Planar: Sized {
    fn dims(&self) -> (usize, usize);
    fn channels(&self) -> usize;
    fn samples(&self) -> &[f32];
    fn with_samples(&self, data: Vec<f32>) -> Self;
}

impl Planar for FloatImage {
    fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }
    fn channels(&self) -> usize {
        CHANNELS
    }
    fn samples(&self) -> &[f32] {
        &self.data
    }
    fn with_samples(&self, data: Vec<f32>) -> Self {
        FloatImage { width: self.width, height: self.height, data }
    }
}

impl Planar for GrayMap {
    fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }
    fn channels(&self) -> usize {
        1
    }
    fn samples(&self) -> &[f32] {
        &self.data
    }
    fn with_samples(&self, data: Vec<f32>) -> Self {
        GrayMap { width: self.width, height: self.height, data }
    }
}

/// Per-channel linear convolution (kernel flipped), no clamping.
pub fn convolve2d<P: Planar>(image: &P, kernel: &Kernel, border: Border) -> P {
    let (w, h) = image.dims();
    let ch = image.channels();
    let src = image.samples();
    let (cx, cy) = ((kernel.width / 2) as isize, (kernel.height / 2) as isize);

    // nonzero taps as source offsets
    let taps: Vec<(isize, isize, f32)> = (0..kernel.height)
        .flat_map(|j| (0..kernel.width).map(move |i| (i, j)))
        .filter_map(|(i, j)| {
            let kv = kernel.at(i, j);
            (kv != 0.0).then_some((cx - i as isize, cy - j as isize, kv))
        })
        .collect();

    let mut out = vec![0.0f32; src.len()];
    let mut xs = vec![0usize; w];
    for &(dx, dy, kv) in &taps {
        for (x, sx) in xs.iter_mut().enumerate() {
            *sx = border.fold(x as isize + dx, w);
        }
        for y in 0..h {
            let sy = border.fold(y as isize + dy, h);
            let src_row = &src[sy * w * ch..(sy + 1) * w * ch];
            let dst_row = &mut out[y * w * ch..(y + 1) * w * ch];
            for (x, &sx) in xs.iter().enumerate() {
                for c in 0..ch {
                    dst_row[x * ch + c] += kv * src_row[sx * ch + c];
                }
            }
        }
    }
    image.with_samples(out)
}

/// Convolve with `kx` along rows then `ky` along columns (both odd length).
pub fn convolve_separable<P: Planar>(image: &P, kx: &[f32], ky: &[f32], border: Border) -> Result<P> {
    if kx.len() % 2 == 0 || ky.len() % 2 == 0 {
        return Err(Error::param("separable kernel lengths must be odd"));
    }
    let (w, h) = image.dims();
    let ch = image.channels();
    let src = image.samples();
    let rx = (kx.len() / 2) as isize;
    let ry = (ky.len() / 2) as isize;

    let mut tmp = vec![0.0f32; src.len()];
    for y in 0..h {
        for x in 0..w {
            for (i, &kv) in kx.iter().enumerate() {
                let sx = border.fold(x as isize + rx - i as isize, w);
                let s = (y * w + sx) * ch;
                let d = (y * w + x) * ch;
                for c in 0..ch {
                    tmp[d + c] += kv * src[s + c];
                }
            }
        }
    }
    let mut out = vec![0.0f32; src.len()];
    for y in 0..h {
        for (j, &kv) in ky.iter().enumerate() {
            let sy = border.fold(y as isize + ry - j as isize, h);
            let s_row = sy * w * ch;
            let d_row = y * w * ch;
            for k in 0..w * ch {
                out[d_row + k] += kv * tmp[s_row + k];
            }
        }
    }
    Ok(image.with_samples(out))
}
