use super::gaussian_blur;
use crate::raster::{convolve2d, gaussian_kernel_1d, Border, FloatImage, Kernel, Planar, RngStream, CHANNELS};

/// Disk of `radius` with a light Gaussian smoothing of its aliased rim.
pub(super) fn disk_kernel(radius: f64, alias_sigma: f64) -> Kernel {
    let r = radius.max(0.0);
    let margin = if r <= 8.0 { 1 } else { 2 };
    let half = r.ceil() as usize + margin;
    let size = 2 * half + 1;
    let mut disk = vec![0.0f32; size * size];
    for y in 0..size {
        for x in 0..size {
            let dx = x as f64 - half as f64;
            let dy = y as f64 - half as f64;
            if dx * dx + dy * dy <= r * r {
                disk[y * size + x] = 1.0;
            }
        }
    }
    let g = gaussian_kernel_1d(alias_sigma as f32, margin);
    let mut smooth = vec![0.0f32; size * size];
    for y in 0..size {
        for x in 0..size {
            let mut acc = 0.0;
            for (j, &gy) in g.iter().enumerate() {
                for (i, &gx) in g.iter().enumerate() {
                    let sx = x as isize + i as isize - margin as isize;
                    let sy = y as isize + j as isize - margin as isize;
                    if sx >= 0 && sy >= 0 && (sx as usize) < size && (sy as usize) < size {
                        acc += gx * gy * disk[sy as usize * size + sx as usize];
                    }
                }
            }
            smooth[y * size + x] = acc;
        }
    }
    Kernel::new(size, size, smooth).expect("odd disk").normalized()
}

pub(super) fn defocus(x: &FloatImage, radius: f64, alias_sigma: f64) -> FloatImage {
    convolve2d(x, &disk_kernel(radius, alias_sigma), Border::Reflect)
}

/// Blur, shuffle pixels locally, blur again.
pub(super) fn glass(x: &FloatImage, sigma: f64, max_delta: usize, iterations: usize, rng: &mut RngStream) -> FloatImage {
    let mut img = gaussian_blur(x, sigma);
    let (w, h) = (img.width, img.height);
    let d = max_delta;
    if d > 0 && h > 2 * d + 1 && w > 2 * d + 1 {
        for _ in 0..iterations {
            for y in (d + 1..=h - d).rev() {
                for x in (d + 1..=w - d).rev() {
                    let dx = rng.int_range(-(d as i64), d as i64);
                    let dy = rng.int_range(-(d as i64), d as i64);
                    let (y, x) = (y.min(h - 1), x.min(w - 1));
                    let yp = (y as i64 + dy) as usize;
                    let xp = (x as i64 + dx) as usize;
                    let a = (y * w + x) * CHANNELS;
                    let b = (yp * w + xp) * CHANNELS;
                    for c in 0..CHANNELS {
                        img.data.swap(a + c, b + c);
                    }
                }
            }
        }
    }
    gaussian_blur(&img, sigma)
}

/// One-sided line kernel: taps at distance `0..=length` along `angle_deg`,
/// weighted by a Gaussian of std `sigma` in the distance, bilinearly
/// splatted onto the grid.
pub(super) fn motion_kernel(length: f64, sigma: f64, angle_deg: f64) -> Kernel {
    let n = length.max(0.0).ceil() as usize;
    let size = 2 * n + 1;
    let mut k = vec![0.0f32; size * size];
    let (sin, cos) = angle_deg.to_radians().sin_cos();
    for t in 0..=n {
        let wgt = (-(t as f64).powi(2) / (2.0 * sigma * sigma)).exp();
        let px = n as f64 + t as f64 * cos;
        let py = n as f64 + t as f64 * sin;
        let (x0, y0) = (px.floor(), py.floor());
        let (fx, fy) = (px - x0, py - y0);
        for (ox, wx) in [(0usize, 1.0 - fx), (1, fx)] {
            for (oy, wy) in [(0usize, 1.0 - fy), (1, fy)] {
                let (xi, yi) = (x0 as usize + ox, y0 as usize + oy);
                if xi < size && yi < size && wx * wy > 0.0 {
                    k[yi * size + xi] += (wgt * wx * wy) as f32;
                }
            }
        }
    }
    Kernel::new(size, size, k).expect("odd line").normalized()
}

pub(super) fn motion(x: &FloatImage, length: f64, sigma: f64, angle_deg: f64) -> FloatImage {
    convolve2d(x, &motion_kernel(length, sigma, angle_deg), Border::Replicate)
}

/// Magnify about the image centre by `zoom`, keeping the size (centre crop
/// rescaled back with bilinear sampling).
pub(super) fn center_zoom<P: Planar>(img: &P, zoom: f64) -> P {
    let (w, h) = img.dims();
    let ch = img.channels();
    let src = img.samples();
    if zoom == 1.0 {
        return img.with_samples(src.to_vec());
    }
    let (cx, cy) = ((w as f64 - 1.0) / 2.0, (h as f64 - 1.0) / 2.0);
    let mut out = vec![0.0f32; src.len()];
    for y in 0..h {
        let sy = (cy + (y as f64 - cy) / zoom).clamp(0.0, (h - 1) as f64);
        let y0 = sy.floor() as usize;
        let y1 = (y0 + 1).min(h - 1);
        let ty = (sy - y0 as f64) as f32;
        for x in 0..w {
            let sx = (cx + (x as f64 - cx) / zoom).clamp(0.0, (w - 1) as f64);
            let x0 = sx.floor() as usize;
            let x1 = (x0 + 1).min(w - 1);
            let tx = (sx - x0 as f64) as f32;
            for c in 0..ch {
                let v00 = src[(y0 * w + x0) * ch + c];
                let v01 = src[(y0 * w + x1) * ch + c];
                let v10 = src[(y1 * w + x0) * ch + c];
                let v11 = src[(y1 * w + x1) * ch + c];
                let top = v00 + (v01 - v00) * tx;
                let bot = v10 + (v11 - v10) * tx;
                out[(y * w + x) * ch + c] = top + (bot - top) * ty;
            }
        }
    }
    img.with_samples(out)
}

/// Mean of the image zoomed at `1, 1+step, ..., max_zoom`.
pub(super) fn zoom(x: &FloatImage, max_zoom: f64, step: f64) -> FloatImage {
    let n = ((max_zoom - 1.0) / step + 1e-9).floor() as usize;
    let mut acc = vec![0.0f32; x.data.len()];
    for k in 0..=n {
        let z = center_zoom(x, 1.0 + k as f64 * step);
        acc.iter_mut().zip(&z.data).for_each(|(a, v)| *a += v);
    }
    let inv = 1.0 / (n + 1) as f32;
    acc.iter_mut().for_each(|a| *a *= inv);
    FloatImage { width: x.width, height: x.height, data: acc }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_are_normalized() {
        for k in [disk_kernel(3.0, 0.1), disk_kernel(10.0, 0.5), motion_kernel(15.0, 5.0, 30.0), motion_kernel(0.0, 1.0, 0.0)] {
            let s: f32 = k.weights().iter().sum();
            assert!((s - 1.0).abs() < 1e-5);
            assert!(k.width() % 2 == 1);
        }
    }

    #[test]
    fn horizontal_motion_kernel_lies_on_the_centre_row() {
        let k = motion_kernel(4.0, 2.0, 0.0);
        let c = k.height() / 2;
        for y in 0..k.height() {
            for x in 0..k.width() {
                if y != c || x < c {
                    assert_eq!(k.at(x, y), 0.0);
                }
            }
        }
        assert!(k.at(c, c) > k.at(c + 4, c));
    }

    #[test]
    fn unit_zoom_is_identity() {
        let img = FloatImage { width: 4, height: 3, data: (0..36).map(|v| v as f32).collect() };
        assert_eq!(center_zoom(&img, 1.0), img);
        assert_eq!(zoom(&img, 1.0, 0.01).data, img.data);
    }

    #[test]
    fn zoom_keeps_the_centre_fixed() {
        let img = FloatImage { width: 5, height: 5, data: (0..75).map(|v| (v % 7) as f32).collect() };
        let z = center_zoom(&img, 1.3);
        for c in 0..3 {
            assert_eq!(z.at(2, 2, c), img.at(2, 2, c));
        }
    }

    #[test]
    fn glass_blur_only_shuffles_before_smoothing() {
        let img = FloatImage { width: 12, height: 12, data: vec![50.0; 432] };
        let out = glass(&img, 0.0, 2, 1, &mut RngStream::from_seed(3));
        assert!(out.data.iter().all(|&v| v == 50.0));
    }
}
