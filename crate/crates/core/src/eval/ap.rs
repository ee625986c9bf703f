use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::dota::{DetectionRecord, GroundTruthRecord};
use crate::geometry::rotated_iou;
use crate::{Error, Real, Result};

/// How the precision/recall curve is summarised.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interpolation {
    /// Mean of the interpolated precision at recall 0, 0.1, ..., 1.
    #[default]
    #[serde(rename = "voc07_11point")]
    Voc07ElevenPoint,
    /// Area under the monotone precision envelope.
    #[serde(rename = "continuous")]
    Continuous,
}

impl Interpolation {
    pub fn name(self) -> &'static str {
        match self {
            Interpolation::Voc07ElevenPoint => "voc07_11point",
            Interpolation::Continuous => "continuous",
        }
    }
}

impl fmt::Display for Interpolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Interpolation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "voc07_11point" | "voc07" | "11point" => Ok(Interpolation::Voc07ElevenPoint),
            "continuous" | "area" => Ok(Interpolation::Continuous),
            _ => Err(Error::param(format!("unknown interpolation {s:?}; expected voc07_11point or continuous"))),
        }
    }
}

/// Fate of one ranked detection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchOutcome {
    TruePositive,
    FalsePositive,
    /// Matched a difficult ground truth: neither TP nor FP.
    Ignored,
}

/// `(recall, precision)` after each counted detection, in rank order.
#[derive(Clone, Debug, PartialEq)]
pub struct PrCurve<N> {
    pub points: Vec<(N, N)>,
}

fn nat<N: Num + Clone>(k: usize) -> N {
    (0..k).fold(N::zero(), |acc, _| acc + N::one())
}

/// Precision/recall points from ranked outcomes; ignored detections add no
/// point. `n_positive` must be positive.
pub fn pr_curve<N: Num + Clone>(outcomes: &[MatchOutcome], n_positive: usize) -> PrCurve<N> {
    let npos: N = nat(n_positive);
    let (mut tp, mut seen) = (N::zero(), N::zero());
    let mut points = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        match o {
            MatchOutcome::Ignored => continue,
            MatchOutcome::TruePositive => tp = tp + N::one(),
            MatchOutcome::FalsePositive => {}
        }
        seen = seen + N::one();
        points.push((tp.clone() / npos.clone(), tp.clone() / seen.clone()));
    }
    PrCurve { points }
}

fn max_of<N: PartialOrd + Clone>(a: N, b: N) -> N {
    if b > a {
        b
    } else {
        a
    }
}

/// AP as a fraction in `[0, 1]`.
pub fn interpolated_ap<N: Num + PartialOrd + Clone>(curve: &PrCurve<N>, interp: Interpolation) -> N {
    match interp {
        Interpolation::Voc07ElevenPoint => {
            let ten: N = nat(10);
            let total = (0..=10).fold(N::zero(), |acc, k| {
                let t = nat::<N>(k) / ten.clone();
                let p = curve
                    .points
                    .iter()
                    .filter(|(r, _)| *r >= t)
                    .fold(N::zero(), |m, (_, p)| max_of(m, p.clone()));
                acc + p
            });
            total / nat(11)
        }
        Interpolation::Continuous => {
            let mut rec = vec![N::zero()];
            let mut pre = vec![N::zero()];
            for (r, p) in &curve.points {
                rec.push(r.clone());
                pre.push(p.clone());
            }
            rec.push(N::one());
            pre.push(N::zero());
            for i in (0..pre.len() - 1).rev() {
                pre[i] = max_of(pre[i].clone(), pre[i + 1].clone());
            }
            (0..rec.len() - 1)
                .filter(|&i| rec[i + 1] != rec[i])
                .fold(N::zero(), |acc, i| acc + (rec[i + 1].clone() - rec[i].clone()) * pre[i + 1].clone())
        }
    }
}

/// Rank one class's detections by score (stable) and match each to the
/// highest-IoU unmatched ground truth of its image, first index winning
/// ties. Returns the ranked outcomes and the number of non-difficult
/// ground truths.
pub fn match_class<T: Real>(
    dets: &[&DetectionRecord<T>],
    gts: &[&GroundTruthRecord<T>],
    iou_thresh: T,
) -> (Vec<MatchOutcome>, usize) {
    let mut by_image: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, g) in gts.iter().enumerate() {
        by_image.entry(g.image_id.as_str()).or_default().push(i);
    }
    let n_positive = gts.iter().filter(|g| !g.difficult).count();
    let mut order: Vec<usize> = (0..dets.len()).collect();
    order.sort_by(|&a, &b| dets[b].score.partial_cmp(&dets[a].score).unwrap_or(std::cmp::Ordering::Equal));
    let mut matched = vec![false; gts.len()];
    let outcomes = order
        .into_iter()
        .map(|d| {
            let det = dets[d];
            let mut best: Option<(usize, T)> = None;
            for &g in by_image.get(det.image_id.as_str()).map(Vec::as_slice).unwrap_or(&[]) {
                if matched[g] {
                    continue;
                }
                let iou = rotated_iou(&det.bbox, &gts[g].bbox);
                if best.is_none_or(|(_, b)| iou > b) {
                    best = Some((g, iou));
                }
            }
            match best {
                Some((g, iou)) if iou >= iou_thresh => {
                    if gts[g].difficult {
                        MatchOutcome::Ignored
                    } else {
                        matched[g] = true;
                        MatchOutcome::TruePositive
                    }
                }
                _ => MatchOutcome::FalsePositive,
            }
        })
        .collect();
    (outcomes, n_positive)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApOptions<T> {
    pub iou_thresh: T,
    pub interpolation: Interpolation,
    /// Label set; when absent, the ground-truth categories.
    pub classes: Option<Vec<String>>,
}

impl<T: Real> Default for ApOptions<T> {
    fn default() -> Self {
        Self { iou_thresh: T::lit(0.5), interpolation: Interpolation::default(), classes: None }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassAp<T> {
    pub category: String,
    /// Percent.
    pub ap: T,
    pub n_ground_truth: usize,
    pub n_detections: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApReport<T> {
    pub per_class: Vec<ClassAp<T>>,
    /// Unweighted mean of `per_class`, in percent.
    pub map: T,
    pub interpolation: Interpolation,
}

/// Per-class AP and their mean, in percent. Classes without any
/// non-difficult ground truth are left out of the mean; detections of a
/// class outside the label set are rejected.
pub fn average_precision<T: Real>(
    dets: &[DetectionRecord<T>],
    gts: &[GroundTruthRecord<T>],
    opts: &ApOptions<T>,
) -> Result<ApReport<T>> {
    let known: BTreeSet<&str> = match &opts.classes {
        Some(c) => c.iter().map(String::as_str).collect(),
        None => gts.iter().map(|g| g.category.as_str()).collect(),
    };
    let unknown: BTreeSet<&str> = dets.iter().map(|d| d.category.as_str()).filter(|c| !known.contains(c)).collect();
    if !unknown.is_empty() {
        return Err(Error::UnknownClasses(unknown.into_iter().map(String::from).collect()));
    }
    let mut per_class = Vec::new();
    for &class in &known {
        let g: Vec<&GroundTruthRecord<T>> = gts.iter().filter(|g| g.category == class).collect();
        let d: Vec<&DetectionRecord<T>> = dets.iter().filter(|d| d.category == class).collect();
        let (outcomes, n_positive) = match_class(&d, &g, opts.iou_thresh);
        if n_positive == 0 {
            continue;
        }
        let ap = interpolated_ap(&pr_curve::<T>(&outcomes, n_positive), opts.interpolation);
        per_class.push(ClassAp {
            category: class.to_string(),
            ap: ap * T::lit(100.0),
            n_ground_truth: n_positive,
            n_detections: d.len(),
        });
    }
    if per_class.is_empty() {
        return Err(Error::Config("no class has a non-difficult ground truth".into()));
    }
    let map = per_class.iter().fold(T::zero(), |acc, c| acc + c.ap) / T::from_usize_lossy(per_class.len());
    Ok(ApReport { per_class, map, interpolation: opts.interpolation })
}
