use super::{FloatImage, CHANNELS};

/// HSV image: hue in degrees `[0, 360)`, saturation and value in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HsvImage {
    pub width: usize,
    pub height: usize,
    pub data: Vec<f32>,
}

/// `rgb` in `[0, 255]` per channel.
pub fn rgb_to_hsv_pixel(rgb: [f32; 3]) -> [f32; 3] {
    let [r, g, b] = rgb.map(|v| v / 255.0);
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let v = max;
    let s = if max > 0.0 { delta / max } else { 0.0 };
    let h = if delta == 0.0 {
        0.0
    } else if max == r {
        60.0 * ((g - b) / delta).rem_euclid(6.0)
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    let h = if h >= 360.0 { h - 360.0 } else { h };
    [h, s, v]
}

/// Inverse of [`rgb_to_hsv_pixel`], returning values in `[0, 255]`.
pub fn hsv_to_rgb_pixel(hsv: [f32; 3]) -> [f32; 3] {
    let [h, s, v] = hsv;
    let c = v * s;
    let hp = h.rem_euclid(360.0) / 60.0;
    let x = c * (1.0 - (hp.rem_euclid(2.0) - 1.0).abs());
    let (r, g, b) = match hp as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    let m = v - c;
    [(r + m) * 255.0, (g + m) * 255.0, (b + m) * 255.0]
}

pub fn rgb_to_hsv(image: &FloatImage) -> HsvImage {
    let data = image
        .data
        .chunks_exact(CHANNELS)
        .flat_map(|p| rgb_to_hsv_pixel([p[0], p[1], p[2]]))
        .collect();
    HsvImage { width: image.width, height: image.height, data }
}

pub fn hsv_to_rgb(image: &HsvImage) -> FloatImage {
    let data = image
        .data
        .chunks_exact(CHANNELS)
        .flat_map(|p| hsv_to_rgb_pixel([p[0], p[1], p[2]]))
        .collect();
    FloatImage { width: image.width, height: image.height, data }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::raster::quantize;

    #[test]
    fn pure_red() {
        assert_eq!(rgb_to_hsv_pixel([255.0, 0.0, 0.0]), [0.0, 1.0, 1.0]);
    }

    #[test]
    fn gray_axis() {
        let [_, s, v] = rgb_to_hsv_pixel([128.0, 128.0, 128.0]);
        assert_eq!(s, 0.0);
        assert!((v - 0.502).abs() < 1e-3);
    }

    #[test]
    fn hue_is_in_range() {
        for rgb in [[255.0, 0.0, 1.0], [0.0, 255.0, 0.0], [10.0, 20.0, 255.0], [255.0, 255.0, 0.0]] {
            let [h, ..] = rgb_to_hsv_pixel(rgb);
            assert!((0.0..360.0).contains(&h), "{rgb:?} -> {h}");
        }
    }

    #[test]
    fn round_trip_error_at_most_one_level() {
        // dense scan: every third level per channel (~620k triples)
        let mut worst = 0i32;
        for r in (0..256).step_by(3) {
            for g in (0..256).step_by(3) {
                for b in (0..256).step_by(3) {
                    let src = [r as f32, g as f32, b as f32];
                    let back = hsv_to_rgb_pixel(rgb_to_hsv_pixel(src));
                    for c in 0..3 {
                        worst = worst.max((quantize(back[c]) as i32 - src[c] as i32).abs());
                    }
                }
            }
        }
        assert!(worst <= 1, "max round-trip error {worst}");
    }
}
