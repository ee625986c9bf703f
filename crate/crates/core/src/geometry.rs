//! Planar polygon primitives for oriented boxes: shoelace area, convex
//! hull, Sutherland–Hodgman clipping and rotated IoU.
//!
//! Coordinates are image pixels (x right, y down). "Positive" orientation
//! means a positive shoelace sum, which in image space is the visually
//! clockwise order DOTA files use.

use crate::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn translate(self, dx: T, dy: T) -> Self {
        Self { x: self.x + dx, y: self.y + dy }
    }
}

fn cross<T: Real>(o: Point<T>, a: Point<T>, b: Point<T>) -> T {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Signed shoelace area.
pub fn signed_area<T: Real>(poly: &[Point<T>]) -> T {
    let n = poly.len();
    if n < 3 {
        return T::zero();
    }
    let twice = (0..n).fold(T::zero(), |acc, i| {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        acc + (p.x * q.y - q.x * p.y)
    });
    twice / T::lit(2.0)
}

pub fn polygon_area<T: Real>(poly: &[Point<T>]) -> T {
    signed_area(poly).abs()
}

/// True when every turn has the same sign (collinear runs allowed) and the
/// polygon does not wind around more than once.
pub fn is_convex<T: Real>(poly: &[Point<T>]) -> bool {
    let n = poly.len();
    if n < 3 {
        return false;
    }
    let (mut pos, mut neg) = (false, false);
    let mut turning = T::zero();
    for i in 0..n {
        let (a, b, c) = (poly[i], poly[(i + 1) % n], poly[(i + 2) % n]);
        let z = cross(a, b, c);
        pos |= z > T::zero();
        neg |= z < T::zero();
        let (e1, e2) = ((b.x - a.x, b.y - a.y), (c.x - b.x, c.y - b.y));
        turning = turning + (e1.0 * e2.1 - e1.1 * e2.0).atan2(e1.0 * e2.0 + e1.1 * e2.1);
    }
    let full = T::lit(2.0 * std::f64::consts::PI);
    !(pos && neg) && (turning.abs() - full).abs() < T::lit(1e-3)
}

/// Convex hull by Andrew's monotone chain, positively oriented, without
/// collinear points.
pub fn convex_hull<T: Real>(points: &[Point<T>]) -> Vec<Point<T>> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Point<T>> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= T::zero() {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point<T>> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= T::zero() {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Sutherland–Hodgman: clip `subject` against the convex, positively
/// oriented polygon `clip`.
pub fn clip_convex<T: Real>(subject: &[Point<T>], clip: &[Point<T>]) -> Vec<Point<T>> {
    let mut out = subject.to_vec();
    let n = clip.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let (a, b) = (clip[i], clip[(i + 1) % n]);
        let input = std::mem::take(&mut out);
        let m = input.len();
        for j in 0..m {
            let (p, q) = (input[j], input[(j + 1) % m]);
            let (dp, dq) = (cross(a, b, p), cross(a, b, q));
            let (p_in, q_in) = (dp >= T::zero(), dq >= T::zero());
            if p_in {
                out.push(p);
            }
            if p_in != q_in {
                let t = dp / (dp - dq);
                out.push(Point::new(p.x + (q.x - p.x) * t, p.y + (q.y - p.y) * t));
            }
        }
    }
    out
}

/// Quadrilateral in canonical form: positive orientation, first vertex as
/// given. Non-convex input is replaced by its convex hull (see
/// [`OrientedBox::repaired`]).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrientedBox<T> {
    vertices: [Point<T>; 4],
    repaired: bool,
}

impl<T: Real> OrientedBox<T> {
    /// Canonicalise four vertices. A negatively oriented quadrilateral is
    /// reversed keeping its first vertex (`v0 v3 v2 v1`); a non-convex one
    /// becomes its convex hull, padded to four vertices with the midpoint
    /// of the longest edge if the hull is a triangle. Zero-area input is
    /// kept as given and reported by [`is_degenerate`](Self::is_degenerate).
    pub fn new(vertices: [Point<T>; 4]) -> Self {
        let area = signed_area(&vertices);
        let oriented = if area >= T::zero() {
            vertices
        } else {
            [vertices[0], vertices[3], vertices[2], vertices[1]]
        };
        if area != T::zero() && is_convex(&oriented) {
            return Self { vertices: oriented, repaired: false };
        }
        let hull = convex_hull(&vertices);
        let vertices = match hull.len() {
            4 => [hull[0], hull[1], hull[2], hull[3]],
            3 => {
                let longest = (0..3)
                    .max_by(|&i, &j| {
                        let len = |k: usize| {
                            let (p, q) = (hull[k], hull[(k + 1) % 3]);
                            (q.x - p.x).powi(2) + (q.y - p.y).powi(2)
                        };
                        len(i).partial_cmp(&len(j)).unwrap()
                    })
                    .unwrap();
                let (p, q) = (hull[longest], hull[(longest + 1) % 3]);
                let mid = Point::new((p.x + q.x) / T::lit(2.0), (p.y + q.y) / T::lit(2.0));
                let mut v = hull.clone();
                v.insert(longest + 1, mid);
                [v[0], v[1], v[2], v[3]]
            }
            // collinear or coincident points: nothing to repair
            _ => return Self { vertices, repaired: false },
        };
        Self { vertices, repaired: true }
    }

    /// Axis-aligned box from its corner and size.
    pub fn axis_aligned(x: T, y: T, w: T, h: T) -> Self {
        Self::new([Point::new(x, y), Point::new(x + w, y), Point::new(x + w, y + h), Point::new(x, y + h)])
    }

    /// Rectangle of size `w`x`h` centred at `(cx, cy)` rotated by `angle`
    /// radians.
    pub fn from_center(cx: T, cy: T, w: T, h: T, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let half = T::lit(0.5);
        let corner = |dx: T, dy: T| Point::new(cx + dx * c - dy * s, cy + dx * s + dy * c);
        let (hw, hh) = (w * half, h * half);
        Self::new([corner(-hw, -hh), corner(hw, -hh), corner(hw, hh), corner(-hw, hh)])
    }

    pub fn from_coords(c: [T; 8]) -> Self {
        Self::new([Point::new(c[0], c[1]), Point::new(c[2], c[3]), Point::new(c[4], c[5]), Point::new(c[6], c[7])])
    }

    pub fn vertices(&self) -> &[Point<T>; 4] {
        &self.vertices
    }

    pub fn coords(&self) -> [T; 8] {
        let v = &self.vertices;
        [v[0].x, v[0].y, v[1].x, v[1].y, v[2].x, v[2].y, v[3].x, v[3].y]
    }

    /// Whether the input was non-convex and replaced by its hull.
    pub fn repaired(&self) -> bool {
        self.repaired
    }

    pub fn area(&self) -> T {
        polygon_area(&self.vertices)
    }

    pub fn is_degenerate(&self) -> bool {
        self.area() == T::zero()
    }

    pub fn translate(&self, dx: T, dy: T) -> Self {
        Self { vertices: self.vertices.map(|p| p.translate(dx, dy)), repaired: self.repaired }
    }

    /// Apply `f` to every vertex and re-canonicalise.
    pub fn map(&self, f: impl Fn(Point<T>) -> Point<T>) -> Self {
        Self::new(self.vertices.map(f))
    }

    /// Mean of the vertices.
    pub fn centroid(&self) -> Point<T> {
        let q = T::lit(0.25);
        let (sx, sy) = self.vertices.iter().fold((T::zero(), T::zero()), |(x, y), p| (x + p.x, y + p.y));
        Point::new(sx * q, sy * q)
    }

    /// Area of the part of this box inside a convex, positively oriented
    /// polygon.
    pub fn area_inside(&self, region: &[Point<T>]) -> T {
        polygon_area(&clip_convex(&self.vertices, region))
    }

    /// `(min_x, min_y, max_x, max_y)`.
    pub fn bounds(&self) -> (T, T, T, T) {
        self.vertices.iter().fold(
            (T::infinity(), T::infinity(), T::neg_infinity(), T::neg_infinity()),
            |(a, b, c, d), p| (a.min(p.x), b.min(p.y), c.max(p.x), d.max(p.y)),
        )
    }
}

/// Intersection over union of two oriented boxes by convex clipping. A
/// degenerate (zero-area) box has IoU 0 with anything.
pub fn rotated_iou<T: Real>(a: &OrientedBox<T>, b: &OrientedBox<T>) -> T {
    let (area_a, area_b) = (a.area(), b.area());
    if area_a == T::zero() || area_b == T::zero() {
        log::warn!("rotated IoU with a degenerate box; defined as 0");
        return T::zero();
    }
    let (ax0, ay0, ax1, ay1) = a.bounds();
    let (bx0, by0, bx1, by1) = b.bounds();
    if ax1 <= bx0 || bx1 <= ax0 || ay1 <= by0 || by1 <= ay0 {
        return T::zero();
    }
    // averaging both clipping directions makes the result exactly symmetric
    let inter = polygon_area(&clip_convex(a.vertices(), b.vertices()));
    let inter_rev = polygon_area(&clip_convex(b.vertices(), a.vertices()));
    let inter = (inter + inter_rev) / T::lit(2.0);
    let union = area_a + area_b - inter;
    if union <= T::zero() {
        return T::zero();
    }
    (inter / union).max(T::zero()).min(T::one())
}

/// Winding-number-free test for convex, positively oriented polygons.
pub fn contains_convex<T: Real>(poly: &[Point<T>], p: Point<T>) -> bool {
    let n = poly.len();
    (0..n).all(|i| cross(poly[i], poly[(i + 1) % n], p) >= T::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(x: f64, y: f64, s: f64) -> OrientedBox<f64> {
        OrientedBox::axis_aligned(x, y, s, s)
    }

    #[test]
    fn shoelace_of_dota_order_is_positive() {
        let b = OrientedBox::from_coords([0.0, 0.0, 10.0, 0.0, 10.0, 10.0, 0.0, 10.0]);
        assert_eq!(signed_area(b.vertices()), 100.0);
        assert!(!b.repaired());
    }

    #[test]
    fn reversed_winding_keeps_the_first_vertex() {
        let b = OrientedBox::from_coords([0.0, 0.0, 0.0, 10.0, 10.0, 10.0, 10.0, 0.0]);
        assert_eq!(b.coords(), [0.0, 0.0, 10.0, 0.0, 10.0, 10.0, 0.0, 10.0]);
        assert!(!b.repaired());
    }

    #[test]
    fn bowtie_is_repaired_to_its_hull() {
        let b = OrientedBox::from_coords([0.0, 0.0, 10.0, 10.0, 10.0, 0.0, 0.0, 10.0]);
        assert!(b.repaired());
        assert_eq!(b.area(), 100.0);
        assert!(is_convex(b.vertices()));
    }

    #[test]
    fn concave_quad_becomes_a_padded_triangle() {
        let b = OrientedBox::from_coords([0.0, 0.0, 10.0, 0.0, 2.0, 2.0, 0.0, 10.0]);
        assert!(b.repaired());
        assert_eq!(b.area(), 50.0);
        assert!(signed_area(b.vertices()) > 0.0);
    }

    #[test]
    fn iou_hand_cases() {
        assert_eq!(rotated_iou(&sq(0.0, 0.0, 1.0), &sq(0.0, 0.0, 1.0)), 1.0);
        assert_eq!(rotated_iou(&sq(0.0, 0.0, 1.0), &sq(3.0, 0.0, 1.0)), 0.0);
        assert!((rotated_iou(&sq(0.0, 0.0, 1.0), &sq(0.5, 0.0, 1.0)) - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_box_has_zero_iou() {
        let flat = OrientedBox::from_coords([0.0, 0.0, 1.0, 0.0, 2.0, 0.0, 3.0, 0.0]);
        assert!(flat.is_degenerate());
        assert_eq!(rotated_iou(&flat, &sq(0.0, -1.0, 4.0)), 0.0);
    }

    #[test]
    fn containment() {
        let b = sq(0.0, 0.0, 2.0);
        assert!(contains_convex(b.vertices(), Point::new(1.0, 1.0)));
        assert!(!contains_convex(b.vertices(), Point::new(3.0, 1.0)));
    }
}
