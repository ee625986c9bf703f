use std::path::Path;

use super::blur::motion_kernel;
use super::gaussian_blur;
use crate::raster::{convolve2d, fractal_noise, read_image, resize_float, Border, FloatImage, Filter, GrayMap, RasterImage, RngStream};
use crate::{Error, Result};

/// Where frost textures come from.
#[derive(Clone, Debug, Default)]
pub enum FrostSource {
    /// Generated from the seeded stream; needs no assets.
    #[default]
    Procedural,
    /// Photographic textures; one is picked per image and randomly cropped.
    Textures(Vec<RasterImage>),
}

impl FrostSource {
    /// Load every PNG/JPEG in `dir` (sorted by file name).
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(|e| Error::io(dir, e))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| crate::raster::ImageFormat::from_path(p).is_some())
            .collect();
        paths.sort();
        if paths.is_empty() {
            return Err(Error::Config(format!("no frost textures in {}", dir.display())));
        }
        let textures = paths.iter().map(|p| read_image(p)).collect::<Result<Vec<_>>>()?;
        Ok(FrostSource::Textures(textures))
    }

    pub fn texture(&self, w: usize, h: usize, rng: &mut RngStream) -> FloatImage {
        match self {
            FrostSource::Procedural => frost_texture(w, h, rng),
            FrostSource::Textures(textures) => {
                let tex = &textures[rng.below(textures.len())];
                let mut tex = tex.to_float();
                if tex.width < w || tex.height < h {
                    let s = (w as f64 / tex.width as f64).max(h as f64 / tex.height as f64);
                    let nw = ((tex.width as f64 * s).ceil() as usize).max(w);
                    let nh = ((tex.height as f64 * s).ceil() as usize).max(h);
                    tex = resize_float(&tex, nw, nh, Filter::Bilinear).expect("nonzero size");
                }
                let x0 = rng.below(tex.width - w + 1);
                let y0 = rng.below(tex.height - h + 1);
                let mut out = FloatImage::zeros(w, h);
                for y in 0..h {
                    let src = ((y0 + y) * tex.width + x0) * 3;
                    out.data[y * w * 3..(y + 1) * w * 3].copy_from_slice(&tex.data[src..src + w * 3]);
                }
                out
            }
        }
    }
}

/// Procedural frost: a soft fractal haze plus sparse seed crystals grown
/// into needle streaks along a few random directions, tinted ice-blue.
/// Values in `[0, 255]`.
pub fn frost_texture(w: usize, h: usize, rng: &mut RngStream) -> FloatImage {
    let haze = fractal_noise(w, h, 1.8, rng);
    let haze = gaussian_blur(&haze, 1.0);

    let seeds = GrayMap {
        width: w,
        height: h,
        data: (0..w * h).map(|_| if rng.uniform() < 0.02 { 1.0 } else { 0.0 }).collect(),
    };
    let mut needles = GrayMap::zeros(w, h);
    for _ in 0..3 {
        let angle = rng.uniform_range(0.0, 360.0);
        let k = motion_kernel(9.0, 4.0, angle);
        let streak = convolve2d(&seeds, &k, Border::Reflect);
        needles.data.iter_mut().zip(&streak.data).for_each(|(n, s)| *n += s);
    }
    let peak = needles.max().max(1e-6);
    // sharpen: emphasise crisp crystal cores
    needles.data.iter_mut().for_each(|v| *v = (*v / peak * 3.0).min(1.0).powf(0.7));

    let tint = [0.88f32, 0.94, 1.0];
    let mut out = FloatImage::zeros(w, h);
    for i in 0..w * h {
        let v = (0.3 + 0.45 * haze.data[i] + 0.45 * needles.data[i]).min(1.0);
        for c in 0..3 {
            out.data[i * 3 + c] = v * tint[c] * 255.0;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn procedural_texture_is_deterministic_and_bounded() {
        let a = frost_texture(40, 30, &mut RngStream::from_seed(8));
        let b = frost_texture(40, 30, &mut RngStream::from_seed(8));
        assert_eq!(a, b);
        assert!(a.data.iter().all(|&v| (0.0..=255.0).contains(&v)));
    }

    #[test]
    fn texture_source_crops_to_target() {
        let tex = RasterImage::from_fn(10, 6, |x, y| [(x * 20) as u8, (y * 40) as u8, 7]);
        let src = FrostSource::Textures(vec![tex]);
        let out = src.texture(4, 3, &mut RngStream::from_seed(2));
        assert_eq!((out.width, out.height), (4, 3));
        let small = src.texture(25, 12, &mut RngStream::from_seed(2));
        assert_eq!((small.width, small.height), (25, 12));
    }
}
