#![allow(dead_code)]

use aerobust_core::raster::fractal_noise;
use aerobust_core::{RasterImage, RngStream};

/// Synthetic aerial-like scene: fractal ground texture, a road, and a few
/// coloured rectangles standing in for roofs and vehicles.
pub fn aerial_fixture(index: u64, w: usize, h: usize) -> RasterImage {
    let mut rng = RngStream::from_seed(0xA11CE + index);
    let ground = fractal_noise(w, h, 2.0, &mut rng);
    let base = [
        rng.uniform_range(60.0, 140.0),
        rng.uniform_range(70.0, 150.0),
        rng.uniform_range(40.0, 120.0),
    ];
    let mut img = RasterImage::from_fn(w, h, |x, y| {
        let g = ground.at(x, y) as f64;
        let px = base.map(|b| (b * (0.6 + 0.8 * g)).clamp(0.0, 255.0) as u8);
        px
    });
    let road_y = rng.below(h);
    let road_w = 2 + rng.below(4);
    for y in road_y..(road_y + road_w).min(h) {
        for x in 0..w {
            img.set_pixel(x, y, [150, 150, 145]);
        }
    }
    let n_rects = 4 + rng.below(6);
    for _ in 0..n_rects {
        let rw = 3 + rng.below(w / 5);
        let rh = 3 + rng.below(h / 5);
        let x0 = rng.below(w - rw);
        let y0 = rng.below(h - rh);
        let color = [rng.below(256) as u8, rng.below(256) as u8, rng.below(256) as u8];
        for y in y0..y0 + rh {
            for x in x0..x0 + rw {
                img.set_pixel(x, y, color);
            }
        }
    }
    img
}

pub fn fixture_set(n: usize, w: usize, h: usize) -> Vec<RasterImage> {
    (0..n as u64).map(|i| aerial_fixture(i, w, h)).collect()
}

pub mod ap_oracle;
pub mod published;

use aerobust_core::eval::EvalMatrix;
use aerobust_core::{CorruptionKind, Severity};

/// Matrix whose every severity of a kind holds that kind's severity-averaged
/// AP, which leaves every per-kind mean (and so every aggregate) unchanged.
pub fn matrix_from_kind_means(kind_ap: &[f64; 19], clean: f64, clouds: Option<f64>) -> EvalMatrix<f64> {
    let mut m = EvalMatrix::new();
    m.set_clean(clean).unwrap();
    if let Some(c) = clouds {
        m.set_clouds(c).unwrap();
    }
    for (k, &v) in CorruptionKind::ALL.iter().zip(kind_ap) {
        for s in Severity::all() {
            m.set(*k, s, v).unwrap();
        }
    }
    m
}

use aerobust_core::geometry::{OrientedBox, Point};

/// Convex polygon as half-planes `a x + b y + c >= 0`.
struct HalfPlanes([(f64, f64, f64); 4]);

impl HalfPlanes {
    fn new(poly: &[Point<f64>; 4]) -> Self {
        let area2: f64 = (0..4).map(|i| poly[i].x * poly[(i + 1) % 4].y - poly[(i + 1) % 4].x * poly[i].y).sum();
        let s = area2.signum();
        Self(std::array::from_fn(|i| {
            let (p, q) = (poly[i], poly[(i + 1) % 4]);
            let (a, b) = (-(q.y - p.y) * s, (q.x - p.x) * s);
            (a, b, -(a * p.x + b * p.y))
        }))
    }

    fn contains(&self, x: f64, y: f64) -> bool {
        self.0.iter().all(|&(a, b, c)| a * x + b * y + c >= 0.0)
    }
}

/// Monte-Carlo IoU from `side * side` jittered samples (one uniform point
/// per cell of a regular grid over the union's bounding box).
pub fn monte_carlo_iou(a: &OrientedBox<f64>, b: &OrientedBox<f64>, side: usize, rng: &mut RngStream) -> f64 {
    use rand::RngCore;
    let pts: Vec<&Point<f64>> = a.vertices().iter().chain(b.vertices()).collect();
    let x0 = pts.iter().map(|p| p.x).fold(f64::INFINITY, f64::min);
    let x1 = pts.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max);
    let y0 = pts.iter().map(|p| p.y).fold(f64::INFINITY, f64::min);
    let y1 = pts.iter().map(|p| p.y).fold(f64::NEG_INFINITY, f64::max);
    let (dx, dy) = ((x1 - x0) / side as f64, (y1 - y0) / side as f64);
    let (ha, hb) = (HalfPlanes::new(a.vertices()), HalfPlanes::new(b.vertices()));
    const SCALE: f64 = 1.0 / 4294967296.0;
    let (mut both, mut either) = (0u64, 0u64);
    for i in 0..side {
        for j in 0..side {
            let r = rng.next_u64();
            let x = x0 + (i as f64 + (r >> 32) as f64 * SCALE) * dx;
            let y = y0 + (j as f64 + (r & 0xffff_ffff) as f64 * SCALE) * dy;
            let (ia, ib) = (ha.contains(x, y), hb.contains(x, y));
            both += (ia & ib) as u64;
            either += (ia | ib) as u64;
        }
    }
    if either == 0 {
        0.0
    } else {
        both as f64 / either as f64
    }
}

/// A random convex box: a rotated rectangle or a quadrilateral inscribed
/// in a rotated ellipse.
pub fn random_box(rng: &mut RngStream, cx: f64, cy: f64) -> OrientedBox<f64> {
    let angle = rng.uniform_range(0.0, std::f64::consts::PI);
    if rng.uniform() < 0.5 {
        let (w, h) = (rng.uniform_range(2.0, 60.0), rng.uniform_range(2.0, 60.0));
        OrientedBox::from_center(cx, cy, w, h, angle)
    } else {
        let (ra, rb) = (rng.uniform_range(3.0, 35.0), rng.uniform_range(3.0, 35.0));
        let mut t: Vec<f64> = (0..4).map(|_| rng.uniform_range(0.0, std::f64::consts::TAU)).collect();
        t.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let (s, c) = angle.sin_cos();
        let v = t.iter().map(|&t| {
            let (px, py) = (ra * t.cos(), rb * t.sin());
            Point::new(cx + px * c - py * s, cy + px * s + py * c)
        });
        let v: Vec<Point<f64>> = v.collect();
        OrientedBox::new([v[0], v[1], v[2], v[3]])
    }
}

/// Two random boxes whose centres are at most `spread` apart.
pub fn random_pair(rng: &mut RngStream, spread: f64) -> (OrientedBox<f64>, OrientedBox<f64>) {
    let (cx, cy) = (rng.uniform_range(0.0, 200.0), rng.uniform_range(0.0, 200.0));
    let a = random_box(rng, cx, cy);
    let (ox, oy) = (rng.uniform_range(-spread, spread), rng.uniform_range(-spread, spread));
    let b = random_box(rng, cx + ox, cy + oy);
    (a, b)
}

use aerobust_core::corruption::{corrupt, psnr, CorruptionSpec, DatasetItem, SeveritySchedule};
use aerobust_core::raster::{derive_seed, write_png};

/// Spec for fixture `id` under global seed 42.
pub fn fixture_spec(kind: CorruptionKind, severity: u8, id: &str) -> CorruptionSpec {
    let seed = derive_seed(42, id, kind.name(), severity as u32);
    CorruptionSpec::new(kind, severity, seed).unwrap()
}

/// Mean PSNR (capped at 99 dB) of `kind` over `fixtures` at each severity.
pub fn psnr_curve(fixtures: &[RasterImage], kind: CorruptionKind, schedule: &SeveritySchedule) -> [f64; 5] {
    std::array::from_fn(|i| {
        let s = i as u8 + 1;
        let total: f64 = fixtures
            .iter()
            .enumerate()
            .map(|(j, img)| {
                let out = corrupt(img, &fixture_spec(kind, s, &format!("fx{j}")), schedule).unwrap();
                psnr(img, &out).unwrap().min(99.0)
            })
            .sum();
        total / fixtures.len() as f64
    })
}

/// A bright, cloud-like scene for the cloud pool.
pub fn cloudy_scene(index: u64, w: usize, h: usize) -> RasterImage {
    let base = aerial_fixture(500 + index, w, h);
    RasterImage::from_fn(w, h, |x, y| base.pixel(x, y).map(|v| v.saturating_add(90)))
}

/// `n` clean fixtures with label files under `dir`.
pub fn write_clean(dir: &std::path::Path, n: usize, w: usize, h: usize) -> Vec<DatasetItem> {
    std::fs::create_dir_all(dir.join("labelTxt")).unwrap();
    (0..n)
        .map(|i| {
            let p = dir.join(format!("img{i:02}.png"));
            write_png(&p, &aerial_fixture(i as u64, w, h)).unwrap();
            let l = dir.join("labelTxt").join(format!("img{i:02}.txt"));
            std::fs::write(&l, "0 0 4 0 4 4 0 4 ship 1\n").unwrap();
            DatasetItem { image: p, annotation: Some(l) }
        })
        .collect()
}
