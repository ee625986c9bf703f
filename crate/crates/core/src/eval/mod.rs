//! Detection metrics and robustness aggregates: rotated IoU, AP@50 with
//! VOC 11-point or continuous interpolation, and mPC / rPC over a
//! corruption x severity grid.

mod ap;
mod matrix;

pub use crate::geometry::rotated_iou;
pub use ap::{
    average_precision, interpolated_ap, match_class, pr_curve, ApOptions, ApReport, ClassAp, Interpolation,
    MatchOutcome, PrCurve,
};
pub use matrix::{category_rpc, mean_of_means, mpc, rpc, rpc_clouds, severity_curve, EvalMatrix, RobustnessReport};
