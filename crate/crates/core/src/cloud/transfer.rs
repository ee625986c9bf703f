use crate::raster::{RasterImage, CHANNELS};
use crate::{Error, Real, Result};

/// Interleaved RGB map of real values, same layout as [`RasterImage`].
#[derive(Clone, Debug, PartialEq)]
pub struct RealMap<T> {
    pub width: usize,
    pub height: usize,
    pub data: Vec<T>,
}

impl<T: Real> RealMap<T> {
    pub fn zeros(width: usize, height: usize) -> Self {
        Self { width, height, data: vec![T::zero(); width * height * CHANNELS] }
    }

    pub fn from_raster(image: &RasterImage) -> Self {
        let data = image.data().iter().map(|&v| T::lit(v as f64)).collect();
        Self { width: image.width(), height: image.height(), data }
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn at(&self, x: usize, y: usize, c: usize) -> T {
        self.data[(y * self.width + x) * CHANNELS + c]
    }

    /// Round half up and clamp to 8 bits.
    pub fn quantize(&self) -> RasterImage {
        let half = T::lit(0.5);
        let hi = T::lit(255.0);
        let data = self
            .data
            .iter()
            .map(|&v| (v + half).floor().max(T::zero()).min(hi).to_u8().unwrap_or(0))
            .collect();
        RasterImage::new(self.width, self.height, data).expect("dimensions are consistent")
    }

    /// `w`x`h` window starting at `(x0, y0)`, wrapping around both edges so
    /// any target size can be served from any source size.
    pub fn wrapped_window(&self, x0: usize, y0: usize, w: usize, h: usize) -> Self {
        let mut data = Vec::with_capacity(w * h * CHANNELS);
        for y in 0..h {
            let sy = (y0 + y) % self.height;
            for x in 0..w {
                let sx = (x0 + x) % self.width;
                let i = (sy * self.width + sx) * CHANNELS;
                data.extend_from_slice(&self.data[i..i + CHANNELS]);
            }
        }
        Self { width: w, height: h, data }
    }
}

/// Cloud intensity per channel after compensation, in `[0, G]` and zero
/// exactly where the self-subtracted map is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CloudIngredient<T>(RealMap<T>);

impl<T: Real> CloudIngredient<T> {
    /// Wrap a precomputed map; every value must lie in `[0, 255]`.
    pub fn new(map: RealMap<T>) -> Result<Self> {
        let g = T::lit(255.0);
        if let Some(v) = map.data.iter().find(|&&v| !(v >= T::zero() && v <= g)) {
            return Err(Error::param(format!("cloud ingredient value {v} outside [0, 255]")));
        }
        Ok(Self(map))
    }

    pub fn values(&self) -> &RealMap<T> {
        &self.0
    }

    pub fn dims(&self) -> (usize, usize) {
        self.0.dims()
    }

    /// Resample to a target size by wrap-around tiling from `(x0, y0)`.
    pub fn window(&self, x0: usize, y0: usize, w: usize, h: usize) -> Self {
        Self(self.0.wrapped_window(x0, y0, w, h))
    }
}

/// Compositing constants: maximum gray level `g` and atmospheric light `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CompositeParams<T> {
    pub g: T,
    pub a: T,
}

impl<T: Real> CompositeParams<T> {
    pub fn new(a: T) -> Result<Self> {
        if !(a > T::zero() && a <= T::one()) {
            return Err(Error::param(format!("atmospheric light must lie in (0, 1], got {a}")));
        }
        Ok(Self { g: T::lit(255.0), a })
    }
}

impl<T: Real> Default for CompositeParams<T> {
    fn default() -> Self {
        Self { g: T::lit(255.0), a: T::lit(0.95) }
    }
}

/// Threshold self-subtraction: `max(0, I - gamma)` per channel value.
pub fn cloud_self_subtract<T: Real>(cloudy: &RasterImage, gamma: T) -> Result<RealMap<T>> {
    if !(gamma >= T::zero() && gamma <= T::lit(255.0)) {
        return Err(Error::param(format!("gamma must lie in [0, 255], got {gamma}")));
    }
    let mut map: RealMap<T> = RealMap::from_raster(cloudy);
    map.data.iter_mut().for_each(|v| *v = (*v - gamma).max(T::zero()));
    Ok(map)
}

/// Intensity compensation. Per channel, `k = sum(I where I_dc != 0) /
/// sum(I_dc)` and the ingredient is `clamp(k * I_dc, 0, G)`. A channel with
/// no cloud support contributes zeros; a map with no support at all is an
/// empty cloud.
pub fn cloud_compensate<T: Real>(cloudy: &RasterImage, i_dc: &RealMap<T>) -> Result<CloudIngredient<T>> {
    if cloudy.dims() != i_dc.dims() {
        return Err(Error::param(format!(
            "cloud image is {:?} but the subtracted map is {:?}",
            cloudy.dims(),
            i_dc.dims()
        )));
    }
    let g = T::lit(255.0);
    let mut out = RealMap::zeros(i_dc.width, i_dc.height);
    let mut any = false;
    for c in 0..CHANNELS {
        let (mut num, mut den) = (T::zero(), T::zero());
        for (i, &d) in i_dc.data.iter().enumerate().skip(c).step_by(CHANNELS) {
            if d != T::zero() {
                num = num + T::lit(cloudy.data()[i] as f64);
                den = den + d;
            }
        }
        if den == T::zero() {
            continue;
        }
        any = true;
        let k = num / den;
        for i in (c..i_dc.data.len()).step_by(CHANNELS) {
            out.data[i] = (k * i_dc.data[i]).max(T::zero()).min(g);
        }
    }
    if !any {
        return Err(Error::EmptyCloud("the subtracted map".into()));
    }
    Ok(CloudIngredient(out))
}

/// Atmospheric compositing before quantisation:
/// `clean * (G - I_ci) / G + A * I_ci`.
pub fn composite_real<T: Real>(
    clean: &RasterImage,
    ingredient: &CloudIngredient<T>,
    params: &CompositeParams<T>,
) -> Result<RealMap<T>> {
    if clean.dims() != ingredient.dims() {
        return Err(Error::param(format!(
            "clean image is {:?} but the cloud ingredient is {:?}",
            clean.dims(),
            ingredient.dims()
        )));
    }
    let CompositeParams { g, a } = *params;
    let data = clean
        .data()
        .iter()
        .zip(&ingredient.0.data)
        .map(|(&v, &ci)| T::lit(v as f64) * (g - ci) / g + a * ci)
        .collect();
    Ok(RealMap { width: clean.width(), height: clean.height(), data })
}

/// [`composite_real`] quantised to 8 bits (round half up).
pub fn cloud_composite<T: Real>(
    clean: &RasterImage,
    ingredient: &CloudIngredient<T>,
    params: &CompositeParams<T>,
) -> Result<RasterImage> {
    Ok(composite_real(clean, ingredient, params)?.quantize())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(w: usize, h: usize, v: &[u8]) -> RasterImage {
        RasterImage::from_fn(w, h, |x, y| [v[y * w + x]; 3])
    }

    #[test]
    fn wrapped_window_tiles_the_source() {
        let m = RealMap::<f64>::from_raster(&gray(2, 1, &[1, 2]));
        let w = m.wrapped_window(1, 0, 3, 2);
        let firsts: Vec<f64> = w.data.iter().step_by(3).copied().collect();
        assert_eq!(firsts, vec![2.0, 1.0, 2.0, 2.0, 1.0, 2.0]);
    }

    #[test]
    fn quantize_rounds_half_up() {
        let m = RealMap { width: 1, height: 1, data: vec![171.5f64, 171.49, -3.0] };
        assert_eq!(m.quantize().data(), &[172, 171, 0]);
    }

    #[test]
    fn gamma_out_of_range_is_rejected() {
        assert!(cloud_self_subtract(&gray(1, 1, &[0]), 256.0f64).is_err());
        assert!(cloud_self_subtract(&gray(1, 1, &[0]), -1.0f32).is_err());
    }

    #[test]
    fn atmospheric_light_domain() {
        assert!(CompositeParams::new(0.0f64).is_err());
        assert!(CompositeParams::new(1.0f64).is_ok());
        assert!(CompositeParams::new(1.01f64).is_err());
    }
}
