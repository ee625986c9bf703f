use super::gaussian_blur;
use super::weather::map_hsv;
use crate::raster::{
    decode_image, encode_image, resize_float, sample_bilinear, Border, Codec, FloatImage, Filter, GrayMap, ImageFormat,
    RngStream, CHANNELS,
};
use crate::Result;

pub(super) fn contrast(mut x: FloatImage, factor: f64) -> FloatImage {
    let means = x.channel_means().map(|m| m as f32);
    let c = factor as f32;
    for px in x.data.chunks_exact_mut(CHANNELS) {
        for (v, m) in px.iter_mut().zip(means) {
            *v = (*v - m) * c + m;
        }
    }
    x
}

/// Affine map fitted exactly through three point pairs.
fn affine_from_points(src: [[f64; 2]; 3], dst: [[f64; 2]; 3]) -> [[f64; 3]; 2] {
    let det3 = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let a = [
        [src[0][0], src[0][1], 1.0],
        [src[1][0], src[1][1], 1.0],
        [src[2][0], src[2][1], 1.0],
    ];
    let d = det3(a);
    let mut out = [[0.0; 3]; 2];
    for (row, coord) in out.iter_mut().zip([0usize, 1]) {
        let rhs = [dst[0][coord], dst[1][coord], dst[2][coord]];
        for col in 0..3 {
            let mut m = a;
            for r in 0..3 {
                m[r][col] = rhs[r];
            }
            row[col] = det3(m) / d;
        }
    }
    out
}

fn smooth_field(w: usize, h: usize, sigma: f64, rng: &mut RngStream) -> GrayMap {
    let noise = GrayMap { width: w, height: h, data: (0..w * h).map(|_| rng.uniform_range(-1.0, 1.0) as f32).collect() };
    let mut f = gaussian_blur(&noise, sigma);
    let rms = (f.data.iter().map(|&v| (v as f64).powi(2)).sum::<f64>() / (w * h) as f64).sqrt();
    if rms > 0.0 {
        f.data.iter_mut().for_each(|v| *v = (*v as f64 / rms) as f32);
    }
    f
}

/// Small random affine jitter followed by a smooth displacement field of
/// RMS magnitude `alpha` pixels; bilinear resampling with reflected borders.
pub(super) fn elastic(x: &FloatImage, alpha: f64, sigma: f64, affine: f64, rng: &mut RngStream) -> FloatImage {
    let (w, h) = (x.width, x.height);
    let centre = [w as f64 / 2.0, h as f64 / 2.0];
    let half = (w.min(h) / 3).max(1) as f64;
    let anchors = [
        [centre[0] + half, centre[1] + half],
        [centre[0] + half, centre[1] - half],
        [centre[0] - half, centre[1] - half],
    ];
    let moved = anchors.map(|[px, py]| {
        [px + rng.uniform_range(-affine, affine), py + rng.uniform_range(-affine, affine)]
    });
    // output pixel -> source position
    let inv = affine_from_points(moved, anchors);

    let dx = smooth_field(w, h, sigma, rng);
    let dy = smooth_field(w, h, sigma, rng);
    let mut out = FloatImage::zeros(w, h);
    for y in 0..h {
        for xx in 0..w {
            let i = y * w + xx;
            let qx = xx as f64 + alpha * dx.data[i] as f64;
            let qy = y as f64 + alpha * dy.data[i] as f64;
            let sx = inv[0][0] * qx + inv[0][1] * qy + inv[0][2];
            let sy = inv[1][0] * qx + inv[1][1] * qy + inv[1][2];
            let v = sample_bilinear(x, sx as f32, sy as f32, Border::Reflect);
            out.data[i * CHANNELS..(i + 1) * CHANNELS].copy_from_slice(&v);
        }
    }
    out
}

/// Box-downscale by `scale`, then nearest-upscale back to the original size.
pub(super) fn pixelate(x: &FloatImage, scale: f64) -> Result<FloatImage> {
    if scale >= 1.0 {
        return Ok(x.clone());
    }
    let sw = ((x.width as f64 * scale).round() as usize).max(1);
    let sh = ((x.height as f64 * scale).round() as usize).max(1);
    let small = resize_float(x, sw, sh, Filter::Box)?;
    resize_float(&small, x.width, x.height, Filter::Nearest)
}

pub(super) fn jpeg(x: &FloatImage, quality: u8) -> Result<FloatImage> {
    let bytes = encode_image(&x.quantize(), Codec::Jpeg { quality })?;
    Ok(decode_image(&bytes, ImageFormat::Jpeg)?.to_float())
}

pub(super) fn saturate(x: &FloatImage, scale: f64, shift: f64) -> FloatImage {
    let (a, b) = (scale as f32, shift as f32);
    map_hsv(x, |[h, s, v]| [h, (s * a + b).clamp(0.0, 1.0), v])
}
