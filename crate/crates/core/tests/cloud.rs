mod common;

use aerobust_core::cloud::{
    cloud_compensate, cloud_composite, cloud_output_path, cloud_self_subtract, cloudify_dataset, composite_real,
    draw_cloud, CloudIngredient, CloudSource, CompositeParams, RealMap,
};
use aerobust_core::raster::read_image;
use aerobust_core::{Error, RasterImage};
use proptest::prelude::*;
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn gray(w: usize, h: usize, v: &[u8]) -> RasterImage {
    RasterImage::from_fn(w, h, |x, y| [v[y * w + x]; 3])
}

fn channel0<T: Copy>(m: &RealMap<T>) -> Vec<T> {
    m.data.iter().step_by(3).copied().collect()
}

fn constant_ingredient(w: usize, h: usize, v: f64) -> CloudIngredient<f64> {
    CloudIngredient::new(RealMap { width: w, height: h, data: vec![v; w * h * 3] }).unwrap()
}

#[test]
fn self_subtraction_examples() {
    let zero = cloud_self_subtract(&RasterImage::filled(5, 4, [100, 100, 100]), 128.0f64).unwrap();
    assert!(zero.data.iter().all(|&v| v == 0.0));

    let one = cloud_self_subtract(&gray(1, 1, &[200]), 128.0f64).unwrap();
    assert_eq!(channel0(&one), vec![72.0]);

    let m = cloud_self_subtract(&gray(2, 2, &[200, 50, 130, 120]), 128.0f64).unwrap();
    assert_eq!(channel0(&m), vec![72.0, 0.0, 2.0, 0.0]);
}

#[test]
fn compensation_examples() {
    let img = gray(3, 1, &[10, 200, 90]);
    let i_dc = cloud_self_subtract(&img, 128.0f64).unwrap();
    let ci = cloud_compensate(&img, &i_dc).unwrap();
    assert_eq!(channel0(ci.values()), vec![0.0, 200.0, 0.0]);

    let img = gray(2, 2, &[200, 50, 130, 120]);
    let i_dc = cloud_self_subtract(&img, 128.0f64).unwrap();
    let ci = cloud_compensate(&img, &i_dc).unwrap();
    let k = 330.0 / 74.0;
    assert_eq!(channel0(ci.values()), vec![255.0, 0.0, k * 2.0, 0.0]);
    assert!((k * 2.0 - 8.9189).abs() < 1e-4);

    let img = RasterImage::filled(2, 2, [100, 100, 100]);
    let i_dc = cloud_self_subtract(&img, 128.0f64).unwrap();
    assert!(matches!(cloud_compensate(&img, &i_dc), Err(Error::EmptyCloud(_))));
}

#[test]
fn composite_examples() {
    let clean = common::aerial_fixture(1, 16, 12);
    let params = CompositeParams::default();

    let free = cloud_composite(&clean, &constant_ingredient(16, 12, 0.0), &params).unwrap();
    assert_eq!(free, clean);

    let opaque = cloud_composite(&clean, &constant_ingredient(16, 12, 255.0), &params).unwrap();
    assert!(opaque.data().iter().all(|&v| v == 242));

    let flat = RasterImage::filled(1, 1, [100, 100, 100]);
    let real = composite_real(&flat, &constant_ingredient(1, 1, 127.5), &params).unwrap();
    assert_eq!(real.data[0], 171.125);
    assert_eq!(cloud_composite(&flat, &constant_ingredient(1, 1, 127.5), &params).unwrap().data(), &[171; 3]);

    assert!(cloud_composite(&clean, &constant_ingredient(15, 12, 0.0), &params).is_err());
}

#[test]
fn single_precision_agrees_on_the_hand_cases() {
    let img = gray(2, 2, &[200, 50, 130, 120]);
    let i_dc = cloud_self_subtract(&img, 128.0f32).unwrap();
    assert_eq!(channel0(&i_dc), vec![72.0f32, 0.0, 2.0, 0.0]);
    let ci = cloud_compensate(&img, &i_dc).unwrap();
    let v = channel0(ci.values());
    assert_eq!(v[0], 255.0);
    assert!((v[2] - 8.918919).abs() < 1e-5);
    let ingredient = CloudIngredient::new(RealMap { width: 1, height: 1, data: vec![255.0f32; 3] }).unwrap();
    let out = cloud_composite(&RasterImage::filled(1, 1, [3, 90, 250]), &ingredient, &CompositeParams::default());
    assert_eq!(out.unwrap().data(), &[242; 3]);
}

#[test]
fn ingredient_range_is_validated() {
    assert!(CloudIngredient::new(RealMap { width: 1, height: 1, data: vec![0.0f64, 255.5, 1.0] }).is_err());
    assert!(CloudIngredient::new(RealMap { width: 1, height: 1, data: vec![0.0f64, -0.1, 1.0] }).is_err());
}

fn arb_image(w: usize, h: usize) -> impl Strategy<Value = RasterImage> {
    proptest::collection::vec(any::<u8>(), w * h * 3).prop_map(move |d| RasterImage::new(w, h, d).unwrap())
}

proptest! {
    #[test]
    fn veiling_is_monotone_and_in_range(
        clean in arb_image(6, 5),
        cloudy in arb_image(6, 5),
        gamma in 0.0f64..250.0,
    ) {
        let i_dc = cloud_self_subtract(&cloudy, gamma).unwrap();
        prop_assume!(i_dc.data.iter().any(|&v| v > 0.0));
        let ci = cloud_compensate(&cloudy, &i_dc).unwrap();
        let params = CompositeParams::default();
        let real = composite_real(&clean, &ci, &params).unwrap();
        let out = cloud_composite(&clean, &ci, &params).unwrap();
        let ag = params.a * params.g;
        for i in 0..clean.data().len() {
            let (c, v) = (clean.data()[i] as f64, ci.values().data[i]);
            prop_assert!((0.0..=255.0).contains(&v));
            prop_assert_eq!(v == 0.0, i_dc.data[i] == 0.0);
            if v == 0.0 {
                prop_assert_eq!(out.data()[i], clean.data()[i]);
            } else if c < ag {
                prop_assert!(real.data[i] > c);
                prop_assert!(out.data()[i] >= clean.data()[i]);
            }
            prop_assert!((0.0..=255.0).contains(&real.data[i]));
        }
    }

    #[test]
    fn single_support_pixel_restores_the_source_intensity(
        base in 0u8..=100, peak in 101u8..=255, x in 0usize..4, y in 0usize..3, gamma in 100.0f64..100.99,
    ) {
        let mut img = RasterImage::filled(4, 3, [base; 3]);
        img.set_pixel(x, y, [peak; 3]);
        let i_dc = cloud_self_subtract(&img, gamma).unwrap();
        let ci = cloud_compensate(&img, &i_dc).unwrap();
        for c in 0..3 {
            prop_assert!((ci.values().at(x, y, c) - peak as f64).abs() < 1e-9);
        }
    }
}

#[test]
fn cloudify_is_deterministic_and_in_range() {
    let tmp = tempfile::tempdir().unwrap();
    let items = common::write_clean(&tmp.path().join("clean"), 10, 48, 40);
    let pool: Vec<CloudSource<f64>> = (0..3)
        .map(|i| CloudSource::new(format!("c{i}"), common::cloudy_scene(i, 64 + 8 * i as usize, 32), 128.0).unwrap())
        .collect();
    let params = CompositeParams::default();
    let a = cloudify_dataset(&items, &pool, &params, 42, &tmp.path().join("a")).unwrap();
    let b = cloudify_dataset(&items, &pool, &params, 42, &tmp.path().join("b")).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.outputs_written, 10);
    assert_eq!(a.sources.iter().map(|s| s.uses).sum::<usize>(), 10);
    for item in &items {
        let id = item.image.file_stem().unwrap().to_str().unwrap();
        let pa = cloud_output_path(&tmp.path().join("a"), id);
        let bytes = std::fs::read(&pa).unwrap();
        assert_eq!(bytes, std::fs::read(cloud_output_path(&tmp.path().join("b"), id)).unwrap());
        let out = read_image(&pa).unwrap();
        assert_eq!(out.dims(), (48, 40));
        assert!(pa.parent().unwrap().join("labelTxt").join(format!("{id}.txt")).exists());
    }
}

#[test]
fn single_source_pool_varies_the_window() {
    let dims = [(300usize, 200usize)];
    let offsets: Vec<_> = (0..20).map(|i| draw_cloud(9, &format!("t{i}"), &dims, (64, 64))).collect();
    assert!(offsets.iter().all(|d| d.source == 0));
    let mut distinct: Vec<_> = offsets.iter().map(|d| d.offset).collect();
    distinct.sort_unstable();
    distinct.dedup();
    assert!(distinct.len() > 15);
    assert_eq!(draw_cloud(9, "t0", &dims, (64, 64)), offsets[0]);
    assert_eq!(draw_cloud(9, "t0", &[(64, 64)], (64, 64)).offset, (0, 0));
}

#[test]
fn empty_pool_is_a_configuration_error() {
    let tmp = tempfile::tempdir().unwrap();
    let pool: Vec<CloudSource<f64>> = vec![];
    let err = cloudify_dataset(&[], &pool, &CompositeParams::default(), 1, tmp.path()).unwrap_err();
    assert!(matches!(err, Error::Config(_)));
}

#[test]
fn source_assignment_is_uniform() {
    let (k, n) = (30usize, 937usize);
    let dims = vec![(64usize, 64usize); k];
    let mut hist = vec![0usize; k];
    for i in 0..n {
        hist[draw_cloud(42, &format!("P{i:04}"), &dims, (64, 64)).source] += 1;
    }
    let p = 1.0 / k as f64;
    let expected = n as f64 * p;
    let sd = (n as f64 * p * (1.0 - p)).sqrt();
    for (i, &c) in hist.iter().enumerate() {
        assert!((c as f64 - expected).abs() <= 3.0 * sd, "source {i}: {c} uses, expected {expected:.1}±{sd:.1}");
    }
    let chi2: f64 = hist.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let crit = ChiSquared::new((k - 1) as f64).unwrap().inverse_cdf(0.999);
    assert!(chi2 < crit, "chi-square {chi2} >= {crit}");
}
