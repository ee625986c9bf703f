//! DOTA annotation and detection formats, sliding-window tiling of large
//! scenes, and merging of per-tile detections back to whole images.

mod format;
mod merge;
mod tile;

pub use crate::geometry::{rotated_iou, OrientedBox, Point};
pub use format::{
    detection_file_name, emit_annotations, emit_detections, parse_annotations, parse_detections,
    read_annotation_dir, read_detection_dir, write_detection_dir, DetectionRecord, GroundTruthRecord,
    DOTA_V1_CLASSES,
};
pub use merge::{merge_detections, nms, DEFAULT_NMS_IOU};
pub use tile::{
    fraction_inside, parse_tile_name, plan_tiles, split_ground_truth, tile_name, TileAnnotations, TilePlan,
    DEFAULT_KEEP_FRACTION, DEFAULT_OVERLAP, DEFAULT_TILE_SIZE,
};
