//! Image container and the low-level pixel machinery shared by the
//! corruption and cloud pipelines.

mod codec;
mod color;
mod convolve;
mod fractal;
mod image;
mod resize;
mod rng;

pub use codec::{decode_image, encode_image, read_image, write_png, Codec, ImageFormat};
pub use color::{hsv_to_rgb, hsv_to_rgb_pixel, rgb_to_hsv, rgb_to_hsv_pixel, HsvImage};
pub use convolve::{convolve2d, convolve_separable, gaussian_kernel_1d, Border, Kernel, Planar};
pub use fractal::fractal_noise;
pub use image::{quantize, FloatImage, GrayMap, RasterImage, CHANNELS};
pub use resize::{resize, resize_float, sample_bilinear, Filter};
pub use rng::{derive_seed, RngStream};
