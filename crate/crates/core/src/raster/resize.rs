use super::{Border, FloatImage, RasterImage, CHANNELS};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Filter {
    Nearest,
    /// Pixel-centre aligned, edge replicated.
    Bilinear,
    /// Area average.
    Box,
}

type Taps = Vec<Vec<(usize, f32)>>;

fn axis_taps(src: usize, dst: usize, filter: Filter) -> Taps {
    let scale = src as f64 / dst as f64;
    (0..dst)
        .map(|i| match filter {
            Filter::Nearest => {
                let s = (((i as f64 + 0.5) * scale).floor() as usize).min(src - 1);
                vec![(s, 1.0)]
            }
            Filter::Bilinear => {
                let pos = ((i as f64 + 0.5) * scale - 0.5).clamp(0.0, (src - 1) as f64);
                let i0 = pos.floor() as usize;
                let i1 = (i0 + 1).min(src - 1);
                let t = pos - i0 as f64;
                if t == 0.0 {
                    vec![(i0, 1.0)]
                } else {
                    vec![(i0, (1.0 - t) as f32), (i1, t as f32)]
                }
            }
            Filter::Box => {
                let lo = i as f64 * scale;
                let hi = (i + 1) as f64 * scale;
                let first = lo.floor() as usize;
                let last = ((hi.ceil() as usize).min(src)).max(first + 1);
                let mut taps = Vec::with_capacity(last - first);
                for s in first..last {
                    let cover = (hi.min(s as f64 + 1.0) - lo.max(s as f64)).max(0.0);
                    if cover > 0.0 {
                        taps.push((s, (cover / (hi - lo)) as f32));
                    }
                }
                taps
            }
        })
        .collect()
}

pub fn resize_float(image: &FloatImage, new_w: usize, new_h: usize, filter: Filter) -> Result<FloatImage> {
    if new_w == 0 || new_h == 0 {
        return Err(Error::param(format!("resize target {new_w}x{new_h} has a zero dimension")));
    }
    if image.width == 0 || image.height == 0 {
        return Err(Error::param("resize of an empty image"));
    }
    let (w, h) = (image.width, image.height);
    let xt = axis_taps(w, new_w, filter);
    let yt = axis_taps(h, new_h, filter);

    let mut tmp = vec![0.0f32; new_w * h * CHANNELS];
    for y in 0..h {
        for (x, taps) in xt.iter().enumerate() {
            let mut acc = [0.0f32; 3];
            for &(s, wgt) in taps {
                let base = (y * w + s) * CHANNELS;
                for c in 0..CHANNELS {
                    acc[c] += wgt * image.data[base + c];
                }
            }
            tmp[(y * new_w + x) * CHANNELS..][..CHANNELS].copy_from_slice(&acc);
        }
    }
    let mut out = FloatImage::zeros(new_w, new_h);
    for (y, taps) in yt.iter().enumerate() {
        for x in 0..new_w {
            let mut acc = [0.0f32; 3];
            for &(s, wgt) in taps {
                let base = (s * new_w + x) * CHANNELS;
                for c in 0..CHANNELS {
                    acc[c] += wgt * tmp[base + c];
                }
            }
            out.data[(y * new_w + x) * CHANNELS..][..CHANNELS].copy_from_slice(&acc);
        }
    }
    Ok(out)
}

pub fn resize(image: &RasterImage, new_w: usize, new_h: usize, filter: Filter) -> Result<RasterImage> {
    Ok(resize_float(&image.to_float(), new_w, new_h, filter)?.quantize())
}

/// Bilinear sample at a real position (pixel centres at integer
/// coordinates); out-of-range taps are folded by `border`.
pub fn sample_bilinear(image: &FloatImage, x: f32, y: f32, border: Border) -> [f32; 3] {
    let x0 = x.floor();
    let y0 = y.floor();
    let tx = x - x0;
    let ty = y - y0;
    let (x0, y0) = (x0 as isize, y0 as isize);
    let xs = [border.fold(x0, image.width), border.fold(x0 + 1, image.width)];
    let ys = [border.fold(y0, image.height), border.fold(y0 + 1, image.height)];
    let mut out = [0.0f32; 3];
    for (j, &yy) in ys.iter().enumerate() {
        let wy = if j == 0 { 1.0 - ty } else { ty };
        if wy == 0.0 {
            continue;
        }
        for (i, &xx) in xs.iter().enumerate() {
            let wx = if i == 0 { 1.0 - tx } else { tx };
            if wx == 0.0 {
                continue;
            }
            let base = (yy * image.width + xx) * CHANNELS;
            for c in 0..CHANNELS {
                out[c] += wx * wy * image.data[base + c];
            }
        }
    }
    out
}
