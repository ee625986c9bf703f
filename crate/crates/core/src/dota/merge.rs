use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{parse_tile_name, DetectionRecord, TilePlan};
use crate::geometry::rotated_iou;
use crate::{Error, Real, Result};

pub const DEFAULT_NMS_IOU: f64 = 0.1;

/// Greedy rotated NMS over one group: visit boxes by descending score
/// (ties in input order), keep a box and drop every later box whose IoU
/// with it is at least `iou_thresh`. Returns kept indices in visit order.
pub fn nms<T: Real>(dets: &[DetectionRecord<T>], iou_thresh: T) -> Vec<usize> {
    let mut order: Vec<usize> = (0..dets.len()).collect();
    order.sort_by(|&a, &b| dets[b].score.partial_cmp(&dets[a].score).unwrap_or(std::cmp::Ordering::Equal));
    let mut suppressed = vec![false; dets.len()];
    let mut keep = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        if suppressed[a] {
            continue;
        }
        keep.push(a);
        for &b in &order[i + 1..] {
            if !suppressed[b] && rotated_iou(&dets[a].bbox, &dets[b].bbox) >= iou_thresh {
                suppressed[b] = true;
            }
        }
    }
    keep
}

/// Map tile-local detections back to whole images and run NMS per
/// (image, category). Names without a tile suffix are taken as whole-image
/// detections at offset (0, 0), which makes merging idempotent. With
/// `plans`, every referenced image and tile origin must exist.
pub fn merge_detections<T: Real>(
    per_tile: &[DetectionRecord<T>],
    plans: Option<&BTreeMap<String, TilePlan>>,
    nms_iou: T,
) -> Result<Vec<DetectionRecord<T>>> {
    let mut groups: BTreeMap<(String, String), Vec<DetectionRecord<T>>> = BTreeMap::new();
    for d in per_tile {
        let (image, offset) = parse_tile_name(&d.image_id).unwrap_or((d.image_id.as_str(), (0, 0)));
        if let Some(plans) = plans {
            let known = plans.get(image).is_some_and(|p| p.contains_offset(offset));
            if !known {
                return Err(Error::UnknownTile(d.image_id.clone()));
            }
        }
        let (dx, dy) = (T::from_usize_lossy(offset.0), T::from_usize_lossy(offset.1));
        groups.entry((image.to_string(), d.category.clone())).or_default().push(DetectionRecord {
            image_id: image.to_string(),
            category: d.category.clone(),
            score: d.score,
            bbox: d.bbox.translate(dx, dy),
        });
    }
    let merged: Vec<Vec<DetectionRecord<T>>> = groups
        .into_par_iter()
        .map(|(_, dets)| nms(&dets, nms_iou).into_iter().map(|i| dets[i].clone()).collect())
        .collect();
    Ok(merged.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::OrientedBox;

    fn det(id: &str, score: f64, x: f64) -> DetectionRecord<f64> {
        DetectionRecord {
            image_id: id.into(),
            category: "plane".into(),
            score,
            bbox: OrientedBox::axis_aligned(x, 0.0, 10.0, 10.0),
        }
    }

    #[test]
    fn nms_keeps_the_best_of_overlapping_boxes() {
        let d = vec![det("a", 0.8, 0.5), det("a", 0.9, 0.0), det("a", 0.7, 50.0)];
        assert_eq!(nms(&d, 0.1), vec![1, 2]);
    }

    #[test]
    fn score_ties_keep_input_order() {
        let d = vec![det("a", 0.5, 0.0), det("a", 0.5, 0.5)];
        assert_eq!(nms(&d, 0.1), vec![0]);
    }
}
