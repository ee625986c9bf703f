use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::geometry::OrientedBox;
use crate::{Error, Real, Result};

/// The 15 DOTA-v1.0 object categories.
pub const DOTA_V1_CLASSES: [&str; 15] = [
    "plane",
    "baseball-diamond",
    "bridge",
    "ground-track-field",
    "small-vehicle",
    "large-vehicle",
    "ship",
    "tennis-court",
    "basketball-court",
    "storage-tank",
    "soccer-ball-field",
    "roundabout",
    "harbor",
    "swimming-pool",
    "helicopter",
];

#[derive(Clone, Debug, PartialEq)]
pub struct GroundTruthRecord<T> {
    pub image_id: String,
    pub bbox: OrientedBox<T>,
    pub category: String,
    pub difficult: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DetectionRecord<T> {
    pub image_id: String,
    pub category: String,
    pub score: T,
    pub bbox: OrientedBox<T>,
}

fn parse_num<T: Real>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .map(T::lit)
        .ok_or_else(|| Error::Parse { line, message: format!("{what} {tok:?} is not a finite number") })
}

fn parse_coords<T: Real>(tokens: &[&str], line: usize) -> Result<[T; 8]> {
    let mut c = [T::zero(); 8];
    for (i, tok) in tokens.iter().enumerate() {
        c[i] = parse_num(tok, line, "coordinate")?;
    }
    Ok(c)
}

fn is_header(line: &str) -> bool {
    line.starts_with("imagesource:") || line.starts_with("gsd:")
}

/// Parse a DOTA label file: optional `imagesource:`/`gsd:` header lines,
/// then `x1 y1 x2 y2 x3 y3 x4 y4 category difficult` per object. Non-convex
/// quadrilaterals are replaced by their convex hull with a warning.
pub fn parse_annotations<T: Real>(text: &str, image_id: &str) -> Result<Vec<GroundTruthRecord<T>>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || is_header(line) {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 10 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 10 fields (8 coordinates, category, difficult), found {}", tokens.len()),
            });
        }
        let bbox = OrientedBox::from_coords(parse_coords::<T>(&tokens[..8], line_no)?);
        if bbox.repaired() {
            log::warn!("{image_id} line {line_no}: non-convex quadrilateral replaced by its convex hull");
        }
        let difficult = match tokens[9] {
            "0" => false,
            "1" => true,
            other => {
                return Err(Error::Parse { line: line_no, message: format!("difficult flag must be 0 or 1, got {other:?}") })
            }
        };
        out.push(GroundTruthRecord { image_id: image_id.to_string(), bbox, category: tokens[8].to_string(), difficult });
    }
    Ok(out)
}

fn push_coords<T: Real>(s: &mut String, bbox: &OrientedBox<T>) {
    for (i, v) in bbox.coords().iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "{v}");
    }
}

/// Label file text for `records`, one object per line.
pub fn emit_annotations<T: Real>(records: &[GroundTruthRecord<T>]) -> String {
    let mut s = String::new();
    for r in records {
        push_coords(&mut s, &r.bbox);
        let _ = writeln!(s, " {} {}", r.category, r.difficult as u8);
    }
    s
}

/// Parse a per-class detection file: `image_id score x1 y1 ... x4 y4` per
/// line.
pub fn parse_detections<T: Real>(text: &str, category: &str) -> Result<Vec<DetectionRecord<T>>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 10 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected 10 fields (image id, score, 8 coordinates), found {}", tokens.len()),
            });
        }
        let score: T = parse_num(tokens[1], line_no, "score")?;
        if !(score >= T::zero() && score <= T::one()) {
            return Err(Error::Parse { line: line_no, message: format!("score {score} outside [0, 1]") });
        }
        out.push(DetectionRecord {
            image_id: tokens[0].to_string(),
            category: category.to_string(),
            score,
            bbox: OrientedBox::from_coords(parse_coords::<T>(&tokens[2..], line_no)?),
        });
    }
    Ok(out)
}

/// Detection file text for `records` (the category is implied by the file).
pub fn emit_detections<T: Real>(records: &[DetectionRecord<T>]) -> String {
    let mut s = String::new();
    for r in records {
        let _ = write!(s, "{} {} ", r.image_id, r.score);
        push_coords(&mut s, &r.bbox);
        s.push('\n');
    }
    s
}

/// Detection file name for a category: `Task1_<category>.txt`.
pub fn detection_file_name(category: &str) -> String {
    format!("Task1_{category}.txt")
}

/// Read every `Task1_<category>.txt` in `dir`, in file-name order.
pub fn read_detection_dir<T: Real>(dir: &Path) -> Result<Vec<DetectionRecord<T>>> {
    let mut files: Vec<(String, PathBuf)> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter_map(|p| {
            let name = p.file_name()?.to_str()?;
            let cat = name.strip_prefix("Task1_")?.strip_suffix(".txt")?.to_string();
            Some((cat, p))
        })
        .collect();
    files.sort();
    let mut out = Vec::new();
    for (cat, path) in files {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        out.extend(parse_detections(&text, &cat).map_err(|e| with_path(e, &path))?);
    }
    Ok(out)
}

/// Write detections grouped into one `Task1_<category>.txt` per category.
pub fn write_detection_dir<T: Real>(dir: &Path, records: &[DetectionRecord<T>]) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut by_cat: std::collections::BTreeMap<&str, Vec<DetectionRecord<T>>> = Default::default();
    for r in records {
        by_cat.entry(&r.category).or_default().push(r.clone());
    }
    for (cat, recs) in by_cat {
        let path = dir.join(detection_file_name(cat));
        std::fs::write(&path, emit_detections(&recs)).map_err(|e| Error::io(&path, e))?;
    }
    Ok(())
}

/// Read every `<id>.txt` label file in `dir`.
pub fn read_annotation_dir<T: Real>(dir: &Path) -> Result<Vec<GroundTruthRecord<T>>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| Error::io(dir, e))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "txt"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for path in paths {
        let id = path.file_stem().unwrap().to_string_lossy().into_owned();
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        out.extend(parse_annotations(&text, &id).map_err(|e| with_path(e, &path))?);
    }
    Ok(out)
}

fn with_path(e: Error, path: &Path) -> Error {
    match e {
        Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn annotation_basics() {
        let r = parse_annotations::<f64>("gsd:0.5\nimagesource:GoogleEarth\n0 0 10 0 10 10 0 10 plane 0\n", "P1")
            .unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].category, "plane");
        assert!(!r[0].difficult);
        assert_eq!(r[0].bbox.area(), 100.0);
    }

    #[test]
    fn annotation_errors_name_the_line() {
        let e = parse_annotations::<f64>("0 0 10 0 10 10 0 10 plane 0\n0 0 10 0 10 10 0 10 plane\n", "P").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        assert!(parse_annotations::<f64>("0 0 x 0 10 10 0 10 plane 0", "P").is_err());
        assert!(parse_annotations::<f64>("0 0 1 0 1 1 0 1 plane 2", "P").is_err());
    }

    #[test]
    fn detection_basics() {
        let d = parse_detections::<f64>("P0001 0.97 0 0 10 0 10 10 0 10\n", "plane").unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].score, 0.97);
        assert!(parse_detections::<f64>("", "plane").unwrap().is_empty());
        assert!(matches!(
            parse_detections::<f64>("P 1.5 0 0 1 0 1 1 0 1", "plane"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn emit_uses_shortest_round_trip_numbers() {
        let d = parse_detections::<f64>("P0001 0.5 0 0 10.25 0 10.25 10 0 10", "ship").unwrap();
        assert_eq!(emit_detections(&d), "P0001 0.5 0 0 10.25 0 10.25 10 0 10\n");
    }
}
