use super::blur::{center_zoom, motion_kernel};
use super::gaussian_blur;
use super::schedule::{SnowParams, SpatterParams};
use crate::raster::{convolve2d, fractal_noise, hsv_to_rgb_pixel, rgb_to_hsv_pixel, Border, FloatImage, GrayMap, RngStream, CHANNELS};

fn noise_layer(w: usize, h: usize, mean: f64, std: f64, rng: &mut RngStream) -> GrayMap {
    let data = (0..w * h).map(|_| rng.normal(mean, std) as f32).collect();
    GrayMap { width: w, height: h, data }
}

/// Zoomed, thresholded, streaked noise layered over a whitened base.
pub(super) fn snow(x: &FloatImage, p: &SnowParams, s: usize, rng: &mut RngStream) -> FloatImage {
    let (w, h) = (x.width, x.height);
    let mut layer = noise_layer(w, h, p.mean[s], p.std[s], rng);
    layer = center_zoom(&layer, p.zoom[s]);
    let thr = p.threshold[s] as f32;
    layer.data.iter_mut().for_each(|v| {
        if *v < thr {
            *v = 0.0
        }
    });
    let angle = rng.uniform_range(-135.0, -45.0);
    let streaks = convolve2d(&layer, &motion_kernel(p.streak_length[s], p.streak_sigma[s], angle), Border::Replicate);
    let flipped = streaks.rotated_half_turn();

    let bw = p.base_weight[s] as f32;
    let mut out = x.clone();
    for i in 0..w * h {
        let px = &mut out.data[i * CHANNELS..(i + 1) * CHANNELS];
        let gray = (0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2]) / 255.0;
        let lift = gray * 1.5 + 0.5;
        let snowfall = streaks.data[i] + flipped.data[i];
        for v in px.iter_mut() {
            let u = *v / 255.0;
            let base = bw * u + (1.0 - bw) * u.max(lift);
            *v = (base + snowfall) * 255.0;
        }
    }
    out
}

pub(super) fn frost(x: &FloatImage, texture: &FloatImage, image_weight: f64, frost_weight: f64) -> FloatImage {
    let (iw, fw) = (image_weight as f32, frost_weight as f32);
    let data = x.data.iter().zip(&texture.data).map(|(&v, &f)| iw * v + fw * f).collect();
    FloatImage { width: x.width, height: x.height, data }
}

/// Adds a plasma-fractal veil, renormalised so the original maximum maps
/// back onto itself.
pub(super) fn fog(mut x: FloatImage, strength: f64, decay: f64, rng: &mut RngStream) -> FloatImage {
    let veil = fractal_noise(x.width, x.height, decay as f32, rng);
    let max_val = x.data.iter().copied().fold(0.0f32, f32::max) / 255.0;
    let strength = strength as f32;
    let norm = if max_val + strength > 0.0 { max_val / (max_val + strength) } else { 0.0 };
    for (i, px) in x.data.chunks_exact_mut(CHANNELS).enumerate() {
        let add = strength * veil.data[i];
        for v in px {
            *v = (*v / 255.0 + add) * norm * 255.0;
        }
    }
    x
}

pub(super) fn brightness(x: &FloatImage, delta: f64) -> FloatImage {
    map_hsv(x, |[h, s, v]| [h, s, (v + delta as f32).clamp(0.0, 1.0)])
}

pub(super) fn map_hsv(x: &FloatImage, f: impl Fn([f32; 3]) -> [f32; 3]) -> FloatImage {
    let data = x
        .data
        .chunks_exact(CHANNELS)
        .flat_map(|p| hsv_to_rgb_pixel(f(rgb_to_hsv_pixel([p[0], p[1], p[2]]))))
        .collect();
    FloatImage { width: x.width, height: x.height, data }
}

const WATER_RGB: [f32; 3] = [175.0, 238.0, 238.0];
const MUD_RGB: [f32; 3] = [63.0, 42.0, 20.0];

/// Liquid blobs from thresholded smoothed noise: translucent bluish water
/// that lightens, or opaque brown mud that replaces.
pub(super) fn spatter(x: &FloatImage, p: &SpatterParams, s: usize, rng: &mut RngStream) -> FloatImage {
    let (w, h) = (x.width, x.height);
    let mut liquid = noise_layer(w, h, p.mean[s], p.std[s], rng);
    liquid = gaussian_blur(&liquid, p.sigma[s]);
    let thr = p.threshold[s] as f32;
    liquid.data.iter_mut().for_each(|v| {
        if *v < thr {
            *v = 0.0
        }
    });

    let mut out = x.clone();
    if !p.mud[s] {
        // rim-weighted water: blobs shaded by their local relief
        let soft = gaussian_blur(&liquid, 1.0);
        let mut m: Vec<f32> = liquid.data.iter().zip(&soft.data).map(|(&l, &b)| l * (0.5 + (l - b).abs() * 4.0 + 0.5 * b)).collect();
        let peak = m.iter().copied().fold(0.0f32, f32::max);
        let scale = if peak > 0.0 { p.intensity[s] as f32 / peak } else { 0.0 };
        m.iter_mut().for_each(|v| *v *= scale);
        for (i, px) in out.data.chunks_exact_mut(CHANNELS).enumerate() {
            for c in 0..CHANNELS {
                px[c] += m[i] * WATER_RGB[c];
            }
        }
    } else {
        let mask = GrayMap { width: w, height: h, data: liquid.data.iter().map(|&v| if v > thr { 1.0 } else { 0.0 }).collect() };
        let mut m = gaussian_blur(&mask, p.intensity[s]);
        m.data.iter_mut().for_each(|v| {
            if *v < 0.8 {
                *v = 0.0
            }
        });
        for (i, px) in out.data.chunks_exact_mut(CHANNELS).enumerate() {
            let a = m.data[i];
            for c in 0..CHANNELS {
                px[c] = px[c] * (1.0 - a) + MUD_RGB[c] * a;
            }
        }
    }
    out
}
