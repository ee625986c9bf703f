use aerobust_core::dota::{DetectionRecord, GroundTruthRecord, OrientedBox};
use aerobust_core::eval::{average_precision, interpolated_ap, match_class, pr_curve, ApOptions, Interpolation};
use aerobust_core::geometry::rotated_iou;
use aerobust_core::{Error, RngStream};
use num_rational::Ratio;

pub type Q = Ratio<i64>;

pub const CLASSES: [&str; 2] = ["plane", "ship"];
pub const IMAGES: [&str; 2] = ["P0001", "P0002"];

pub fn gt(image: &str, class: &str, x: f64, y: f64, difficult: bool) -> GroundTruthRecord<f64> {
    GroundTruthRecord {
        image_id: image.into(),
        bbox: OrientedBox::axis_aligned(x, y, 10.0, 10.0),
        category: class.into(),
        difficult,
    }
}

pub fn det(image: &str, class: &str, score: f64, x: f64, y: f64) -> DetectionRecord<f64> {
    DetectionRecord {
        image_id: image.into(),
        category: class.into(),
        score,
        bbox: OrientedBox::axis_aligned(x, y, 10.0, 10.0),
    }
}

pub fn opts(interp: Interpolation) -> ApOptions<f64> {
    ApOptions { interpolation: interp, classes: Some(CLASSES.map(String::from).to_vec()), ..Default::default() }
}

/// Random instance with at most 4 ground truths and 6 detections, placed so
/// IoUs straddle 0.5 and scores tie often.
pub fn instance(rng: &mut RngStream) -> (Vec<GroundTruthRecord<f64>>, Vec<DetectionRecord<f64>>) {
    let n_gt = 1 + rng.below(4);
    let gts: Vec<_> = (0..n_gt)
        .map(|_| {
            let (cx, cy) = (rng.below(3) as f64 * 6.0, rng.below(2) as f64 * 6.0);
            gt(IMAGES[rng.below(2)], CLASSES[rng.below(2)], cx, cy, rng.uniform() < 0.25)
        })
        .collect();
    let n_det = rng.below(7);
    let dets = (0..n_det)
        .map(|_| {
            let score = (1 + rng.below(9)) as f64 / 10.0;
            let (image, class, x, y) = if rng.uniform() < 0.8 {
                let g = &gts[rng.below(gts.len())];
                let (x0, y0, _, _) = g.bbox.bounds();
                let image = if rng.uniform() < 0.9 { g.image_id.clone() } else { IMAGES[rng.below(2)].to_string() };
                let class = if rng.uniform() < 0.9 { g.category.clone() } else { CLASSES[rng.below(2)].to_string() };
                (image, class, x0 + rng.uniform_range(-4.0, 4.0), y0 + rng.uniform_range(-4.0, 4.0))
            } else {
                let image = IMAGES[rng.below(2)].to_string();
                (image, CLASSES[rng.below(2)].to_string(), rng.uniform_range(0.0, 20.0), rng.uniform_range(0.0, 20.0))
            };
            det(&image, &class, score, x, y)
        })
        .collect();
    (gts, dets)
}

/// Exhaustive reference: rank, match, then evaluate precision and recall at
/// every cutoff and interpolate by enumeration, all in exact rationals.
pub fn oracle_class(
    gts: &[GroundTruthRecord<f64>],
    dets: &[DetectionRecord<f64>],
    class: &str,
    interp: Interpolation,
) -> Option<Q> {
    let g: Vec<&GroundTruthRecord<f64>> = gts.iter().filter(|g| g.category == class).collect();
    let mut remaining: Vec<&DetectionRecord<f64>> = dets.iter().filter(|d| d.category == class).collect();
    let npos = g.iter().filter(|g| !g.difficult).count() as i64;
    if npos == 0 {
        return None;
    }
    // selection sort: highest score first, earliest input on ties
    let mut ranked = Vec::new();
    while !remaining.is_empty() {
        let mut best = 0;
        for i in 1..remaining.len() {
            if remaining[i].score > remaining[best].score {
                best = i;
            }
        }
        ranked.push(remaining.remove(best));
    }
    let mut matched = vec![false; g.len()];
    let mut counted: Vec<bool> = Vec::new(); // true = TP
    for d in ranked {
        let mut best: Option<(usize, f64)> = None;
        for (i, gt) in g.iter().enumerate() {
            if gt.image_id != d.image_id || matched[i] {
                continue;
            }
            let iou = rotated_iou(&d.bbox, &gt.bbox);
            if best.map_or(true, |(_, b)| iou > b) {
                best = Some((i, iou));
            }
        }
        match best {
            Some((i, iou)) if iou >= 0.5 => {
                if !g[i].difficult {
                    matched[i] = true;
                    counted.push(true);
                }
            }
            _ => counted.push(false),
        }
    }
    let cut: Vec<(Q, Q)> = (1..=counted.len())
        .map(|k| {
            let tp = counted[..k].iter().filter(|&&t| t).count() as i64;
            (Q::new(tp, npos), Q::new(tp, k as i64))
        })
        .collect();
    let best_precision_at = |r: Q| {
        cut.iter().filter(|(rec, _)| *rec >= r).map(|(_, p)| *p).max().unwrap_or(Q::from_integer(0))
    };
    Some(match interp {
        Interpolation::Voc07ElevenPoint => {
            (0..=10).map(|t| best_precision_at(Q::new(t, 10))).sum::<Q>() / Q::from_integer(11)
        }
        Interpolation::Continuous => {
            let mut levels: Vec<Q> = cut.iter().map(|(r, _)| *r).collect();
            levels.sort();
            levels.dedup();
            let mut prev = Q::from_integer(0);
            let mut total = Q::from_integer(0);
            for r in levels {
                total += (r - prev) * best_precision_at(r);
                prev = r;
            }
            total
        }
    })
}

pub fn q_to_f64(q: Q) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Compare the library against the exhaustive reference on `cases` random
/// instances in both interpolation modes. Returns the number of per-class
/// comparisons, or a description of the first mismatch.
pub fn check_random_cases(seed: u64, cases: u64) -> Result<usize, String> {
    let mut compared = 0;
    for case in 0..cases {
        let mut rng = RngStream::for_lineage(seed, &format!("case{case}"), "ap", 0);
        let (gts, dets) = instance(&mut rng);
        for interp in [Interpolation::Voc07ElevenPoint, Interpolation::Continuous] {
            let mut oracle_aps = Vec::new();
            for class in CLASSES {
                let Some(want) = oracle_class(&gts, &dets, class, interp) else { continue };
                let g: Vec<_> = gts.iter().filter(|g| g.category == class).collect();
                let d: Vec<_> = dets.iter().filter(|d| d.category == class).collect();
                let (outcomes, npos) = match_class(&d, &g, 0.5);
                let got = interpolated_ap(&pr_curve::<Q>(&outcomes, npos), interp);
                if got != want {
                    return Err(format!("case {case} {class} {interp}: {got} vs {want}"));
                }
                oracle_aps.push(q_to_f64(want) * 100.0);
                compared += 1;
            }
            let result = average_precision(&dets, &gts, &opts(interp));
            if oracle_aps.is_empty() {
                if !matches!(result, Err(Error::Config(_))) {
                    return Err(format!("case {case}: expected the no-class error, got {result:?}"));
                }
                continue;
            }
            let map = result.map_err(|e| format!("case {case}: {e}"))?.map;
            let mean = oracle_aps.iter().sum::<f64>() / oracle_aps.len() as f64;
            if (map - mean).abs() >= 1e-9 {
                return Err(format!("case {case} {interp}: mAP {map} vs {mean}"));
            }
        }
    }
    Ok(compared)
}
