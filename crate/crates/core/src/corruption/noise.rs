use crate::raster::{FloatImage, RngStream};

pub(super) fn gaussian(x: FloatImage, sigma: f64, rng: &mut RngStream) -> FloatImage {
    let std = sigma * 255.0;
    x.map_with(|v| v + rng.normal(0.0, std) as f32)
}

pub(super) fn shot(x: FloatImage, photons: f64, rng: &mut RngStream) -> FloatImage {
    x.map_with(|v| {
        let lambda = (v.clamp(0.0, 255.0) as f64 / 255.0) * photons;
        (rng.poisson(lambda) / photons * 255.0) as f32
    })
}

/// Salt and pepper: each sample is replaced with probability `amount`,
/// by 0 or 255 with equal odds.
pub(super) fn impulse(x: FloatImage, amount: f64, rng: &mut RngStream) -> FloatImage {
    x.map_with(|v| {
        if rng.uniform() < amount {
            if rng.uniform() < 0.5 {
                0.0
            } else {
                255.0
            }
        } else {
            v
        }
    })
}

pub(super) fn speckle(x: FloatImage, sigma: f64, rng: &mut RngStream) -> FloatImage {
    x.map_with(|v| v + v * rng.normal(0.0, sigma) as f32)
}

trait MapWith {
    fn map_with(self, f: impl FnMut(f32) -> f32) -> Self;
}

impl MapWith for FloatImage {
    fn map_with(mut self, mut f: impl FnMut(f32) -> f32) -> Self {
        self.data.iter_mut().for_each(|v| *v = f(*v));
        self
    }
}
