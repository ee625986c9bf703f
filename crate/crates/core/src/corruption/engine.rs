use super::frost::FrostSource;
use super::{blur, digital, noise, weather, CorruptionKind, CorruptionSpec, SeveritySchedule};
use crate::raster::{convolve_separable, gaussian_kernel_1d, Border, FloatImage, Planar, RasterImage, RngStream};
use crate::{Error, Result};

/// Gaussian blur with taps out to three standard deviations, reflected border.
pub fn gaussian_blur<P: Planar>(image: &P, sigma: f64) -> P {
    if sigma <= 0.0 {
        return image.with_samples(image.samples().to_vec());
    }
    let radius = (3.0 * sigma).ceil().max(1.0) as usize;
    let k = gaussian_kernel_1d(sigma as f32, radius);
    convolve_separable(image, &k, &k, Border::Reflect).expect("odd gaussian taps")
}

/// Schedule plus frost texture source.
#[derive(Clone, Debug, Default)]
pub struct CorruptionEngine {
    pub schedule: SeveritySchedule,
    pub frost: FrostSource,
}

impl CorruptionEngine {
    pub fn new(schedule: SeveritySchedule) -> Self {
        Self { schedule, frost: FrostSource::Procedural }
    }

    pub fn with_frost(mut self, frost: FrostSource) -> Self {
        self.frost = frost;
        self
    }

    pub fn corrupt(&self, image: &RasterImage, spec: &CorruptionSpec) -> Result<RasterImage> {
        if image.is_empty() {
            return Err(Error::param("cannot corrupt an empty image"));
        }
        let s = spec.severity.index();
        let sch = &self.schedule;
        let mut rng = RngStream::from_seed(spec.seed);
        let x = image.to_float();

        let out: FloatImage = match spec.kind {
            CorruptionKind::GaussianNoise => noise::gaussian(x, sch.gaussian_noise.sigma[s], &mut rng),
            CorruptionKind::ShotNoise => noise::shot(x, sch.shot_noise.photons[s], &mut rng),
            CorruptionKind::ImpulseNoise => noise::impulse(x, sch.impulse_noise.amount[s], &mut rng),
            CorruptionKind::SpeckleNoise => noise::speckle(x, sch.speckle_noise.sigma[s], &mut rng),
            CorruptionKind::DefocusBlur => {
                blur::defocus(&x, sch.defocus_blur.radius[s], sch.defocus_blur.alias_sigma[s])
            }
            CorruptionKind::GlassBlur => {
                let p = &sch.glass_blur;
                blur::glass(&x, p.sigma[s], p.max_delta[s] as usize, p.iterations[s] as usize, &mut rng)
            }
            CorruptionKind::MotionBlur => {
                let angle = rng.uniform_range(-45.0, 45.0);
                blur::motion(&x, sch.motion_blur.length[s], sch.motion_blur.sigma[s], angle)
            }
            CorruptionKind::ZoomBlur => blur::zoom(&x, sch.zoom_blur.max_zoom[s], sch.zoom_blur.step[s]),
            CorruptionKind::GaussianBlur => gaussian_blur(&x, sch.gaussian_blur.sigma[s]),
            CorruptionKind::Snow => weather::snow(&x, &sch.snow, s, &mut rng),
            CorruptionKind::Frost => {
                let texture = self.frost.texture(x.width, x.height, &mut rng);
                weather::frost(&x, &texture, sch.frost.image_weight[s], sch.frost.frost_weight[s])
            }
            CorruptionKind::Fog => weather::fog(x, sch.fog.strength[s], sch.fog.decay[s], &mut rng),
            CorruptionKind::Brightness => weather::brightness(&x, sch.brightness.delta[s]),
            CorruptionKind::Spatter => weather::spatter(&x, &sch.spatter, s, &mut rng),
            CorruptionKind::Contrast => digital::contrast(x, sch.contrast.factor[s]),
            CorruptionKind::ElasticTransform => {
                let p = &sch.elastic_transform;
                digital::elastic(&x, p.alpha[s], p.sigma[s], p.affine[s], &mut rng)
            }
            CorruptionKind::Pixelate => digital::pixelate(&x, sch.pixelate.scale[s])?,
            CorruptionKind::JpegCompression => digital::jpeg(&x, sch.jpeg_compression.quality[s])?,
            CorruptionKind::Saturate => digital::saturate(&x, sch.saturate.scale[s], sch.saturate.shift[s]),
        };
        debug_assert_eq!((out.width, out.height), image.dims());
        Ok(out.quantize())
    }
}

/// Apply one corruption with procedural frost.
pub fn corrupt(image: &RasterImage, spec: &CorruptionSpec, schedule: &SeveritySchedule) -> Result<RasterImage> {
    CorruptionEngine::new(schedule.clone()).corrupt(image, spec)
}
