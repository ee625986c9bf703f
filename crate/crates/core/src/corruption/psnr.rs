use crate::raster::RasterImage;
use crate::{Error, Result};

/// Peak signal-to-noise ratio in dB; `f64::INFINITY` for identical images.
pub fn psnr(reference: &RasterImage, test: &RasterImage) -> Result<f64> {
    if reference.dims() != test.dims() {
        return Err(Error::param(format!(
            "psnr of {:?} against {:?}: dimensions differ",
            reference.dims(),
            test.dims()
        )));
    }
    let n = reference.data().len();
    if n == 0 {
        return Err(Error::param("psnr of empty images"));
    }
    let sse: f64 = reference
        .data()
        .iter()
        .zip(test.data())
        .map(|(&a, &b)| {
            let d = a as f64 - b as f64;
            d * d
        })
        .sum();
    if sse == 0.0 {
        return Ok(f64::INFINITY);
    }
    let mse = sse / n as f64;
    Ok(10.0 * (255.0f64 * 255.0 / mse).log10())
}
