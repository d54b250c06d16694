//! Planar primitives shared by every other module.
//!
//! All coordinates are `f64` in sheet units. Comparisons go through
//! [`Tolerance`], which combines an absolute epsilon with one relative to the
//! bounding-box diagonal of whatever is being compared.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("degenerate angle at ({x}, {y}): neighbours are collinear")]
    DegenerateAngle { x: f64, y: f64 },
    #[error("degenerate triangle (area {area})")]
    DegenerateTriangle { area: f64 },
    #[error("perpendicular foot falls outside the segment (parameter {t})")]
    FootOutsideSegment { t: f64 },
    #[error("polygon is self-intersecting")]
    SelfIntersecting,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("non-finite coordinate")]
    NonFinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

/// Points double as vectors; there is no separate vector type.
pub type Vec2 = Point2;

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n)
    }

    /// Counter-clockwise perpendicular.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn lerp(self, o: Self, t: f64) -> Self {
        self + (o - self) * t
    }

    pub fn midpoint(self, o: Self) -> Self {
        self.lerp(o, 0.5)
    }

    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

impl Neg for Point2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point2,
    pub b: Point2,
}

impl Segment {
    pub const fn new(a: Point2, b: Point2) -> Self {
        Self { a, b }
    }

    pub fn length(&self) -> f64 {
        self.a.dist(self.b)
    }

    pub fn direction(&self) -> Vec2 {
        (self.b - self.a).normalized()
    }

    pub fn midpoint(&self) -> Point2 {
        self.a.midpoint(self.b)
    }

    /// Parameter of the orthogonal projection of `p` onto the supporting line,
    /// 0 at `a` and 1 at `b`.
    pub fn project_param(&self, p: Point2) -> f64 {
        let d = self.b - self.a;
        (p - self.a).dot(d) / d.dot(d)
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.a.lerp(self.b, t)
    }

    /// Distance from `p` to the closed segment.
    pub fn distance_to(&self, p: Point2) -> f64 {
        let t = self.project_param(p).clamp(0.0, 1.0);
        self.point_at(t).dist(p)
    }

    /// Distance from `p` to the supporting line.
    pub fn line_distance(&self, p: Point2) -> f64 {
        ((self.b - self.a).cross(p - self.a)).abs() / self.length()
    }

    pub fn reversed(&self) -> Self {
        Self::new(self.b, self.a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ray {
    pub origin: Point2,
    /// Unit length.
    pub dir: Vec2,
}

impl Ray {
    pub fn at(&self, t: f64) -> Point2 {
        self.origin + self.dir * t
    }

    /// Distance from `p` to the supporting line of the ray.
    pub fn line_distance(&self, p: Point2) -> f64 {
        self.dir.cross(p - self.origin).abs()
    }

    /// Intersection parameters `(t_self, t_other)` of the two supporting lines,
    /// or `None` when parallel.
    pub fn intersect(&self, other: &Ray) -> Option<(f64, f64)> {
        let den = self.dir.cross(other.dir);
        if den.abs() < 1e-15 {
            return None;
        }
        let w = other.origin - self.origin;
        Some((w.cross(other.dir) / den, w.cross(self.dir) / den))
    }
}

/// Rigid motion of the plane: optional mirror across the x-axis, then a
/// rotation about the origin, then a translation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Isometry {
    pub rotation: f64,
    pub translation: Vec2,
    pub reflect: bool,
}

impl Default for Isometry {
    fn default() -> Self {
        Self::IDENTITY
    }
}

impl Isometry {
    pub const IDENTITY: Isometry = Isometry {
        rotation: 0.0,
        translation: Point2::ORIGIN,
        reflect: false,
    };

    pub fn new(rotation: f64, translation: Vec2, reflect: bool) -> Self {
        Self {
            rotation,
            translation,
            reflect,
        }
    }

    pub fn translation(t: Vec2) -> Self {
        Self::new(0.0, t, false)
    }

    pub fn rotation(angle: f64) -> Self {
        Self::new(angle, Point2::ORIGIN, false)
    }

    /// Rotation by `angle` about `center`.
    pub fn rotation_about(angle: f64, center: Point2) -> Self {
        Self::new(angle, center - center.rotated(angle), false)
    }

    /// Mirror across the line through `a` and `b`.
    pub fn mirror_across(a: Point2, b: Point2) -> Self {
        let theta = (b - a).angle();
        // Rotate the line onto the x-axis, mirror, rotate back:
        // linear part R(theta) F R(-theta) = R(2 theta) F.
        let lin = Self::new(2.0 * theta, Point2::ORIGIN, true);
        let t = a - lin.apply_linear(a);
        Self::new(2.0 * theta, t, true)
    }

    pub fn apply_linear(&self, v: Vec2) -> Vec2 {
        let v = if self.reflect { Point2::new(v.x, -v.y) } else { v };
        v.rotated(self.rotation)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        self.apply_linear(p) + self.translation
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let rotation = if self.reflect {
            self.rotation - other.rotation
        } else {
            self.rotation + other.rotation
        };
        Isometry {
            rotation: normalize_angle(rotation),
            translation: self.apply(other.translation),
            reflect: self.reflect ^ other.reflect,
        }
    }

    pub fn inverse(&self) -> Isometry {
        // x = F R(-θ) (y - t); for a reflection F R(-θ) = R(θ) F.
        let rotation = if self.reflect {
            self.rotation
        } else {
            -self.rotation
        };
        let lin = Isometry::new(rotation, Point2::ORIGIN, self.reflect);
        Isometry {
            rotation: normalize_angle(rotation),
            translation: -lin.apply_linear(self.translation),
            reflect: self.reflect,
        }
    }

    /// True when orientation is preserved.
    pub fn is_proper(&self) -> bool {
        !self.reflect
    }
}

/// Maps an angle into `(-π, π]`.
pub fn normalize_angle(a: f64) -> f64 {
    let mut a = a % (2.0 * PI);
    if a <= -PI {
        a += 2.0 * PI;
    } else if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// Two-part tolerance; see [`Tolerance::eps_for`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps_abs: 1e-9,
            eps_rel: 1e-9,
        }
    }
}

impl Tolerance {
    /// Effective length tolerance for geometry whose bounding-box diagonal is
    /// `diag`: whichever of the two parts is larger.
    pub fn eps_for(&self, diag: f64) -> f64 {
        self.eps_abs.max(self.eps_rel * diag)
    }

    pub fn eps_points(&self, pts: &[Point2]) -> f64 {
        self.eps_for(Bbox::of(pts.iter().copied()).diagonal())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bbox {
    pub min: Point2,
    pub max: Point2,
}

impl Bbox {
    pub const EMPTY: Bbox = Bbox {
        min: Point2 {
            x: f64::INFINITY,
            y: f64::INFINITY,
        },
        max: Point2 {
            x: f64::NEG_INFINITY,
            y: f64::NEG_INFINITY,
        },
    };

    pub fn of(pts: impl IntoIterator<Item = Point2>) -> Self {
        let mut b = Self::EMPTY;
        for p in pts {
            b.include(p);
        }
        b
    }

    pub fn include(&mut self, p: Point2) {
        self.min.x = self.min.x.min(p.x);
        self.min.y = self.min.y.min(p.y);
        self.max.x = self.max.x.max(p.x);
        self.max.y = self.max.y.max(p.y);
    }

    pub fn is_empty(&self) -> bool {
        self.min.x > self.max.x
    }

    pub fn diagonal(&self) -> f64 {
        if self.is_empty() {
            0.0
        } else {
            self.min.dist(self.max)
        }
    }

    pub fn width(&self) -> f64 {
        self.max.x - self.min.x
    }

    pub fn height(&self) -> f64 {
        self.max.y - self.min.y
    }

    pub fn overlaps(&self, o: &Bbox, eps: f64) -> bool {
        self.min.x <= o.max.x + eps
            && o.min.x <= self.max.x + eps
            && self.min.y <= o.max.y + eps
            && o.min.y <= self.max.y + eps
    }

    pub fn contains(&self, p: Point2, eps: f64) -> bool {
        p.x >= self.min.x - eps
            && p.x <= self.max.x + eps
            && p.y >= self.min.y - eps
            && p.y <= self.max.y + eps
    }
}

/// Ray from `vertex` along the bisector of the interior angle
/// `prev → vertex → next` (interior on the left for a CCW polygon).
pub fn angle_bisector_ray(prev: Point2, vertex: Point2, next: Point2) -> Result<Ray, GeomError> {
    let u = prev - vertex;
    let v = next - vertex;
    let (lu, lv) = (u.norm(), v.norm());
    let eps = Tolerance::default().eps_points(&[prev, vertex, next]);
    if lu <= eps || lv <= eps {
        return Err(GeomError::DegenerateAngle {
            x: vertex.x,
            y: vertex.y,
        });
    }
    let (u, v) = (u * (1.0 / lu), v * (1.0 / lv));
    if u.cross(v).abs() <= 1e-12 {
        return Err(GeomError::DegenerateAngle {
            x: vertex.x,
            y: vertex.y,
        });
    }
    Ok(Ray {
        origin: vertex,
        dir: (u + v).normalized(),
    })
}

/// Twice the signed area (positive for CCW).
pub fn signed_area2(poly: &[Point2]) -> f64 {
    let n = poly.len();
    (0..n).map(|i| poly[i].cross(poly[(i + 1) % n])).sum()
}

pub fn polygon_area(poly: &[Point2]) -> f64 {
    signed_area2(poly).abs() * 0.5
}

pub fn centroid(poly: &[Point2]) -> Point2 {
    let n = poly.len();
    let a2 = signed_area2(poly);
    if a2.abs() < 1e-300 {
        let s = poly.iter().fold(Point2::ORIGIN, |acc, &p| acc + p);
        return s * (1.0 / n as f64);
    }
    let mut c = Point2::ORIGIN;
    for i in 0..n {
        let (p, q) = (poly[i], poly[(i + 1) % n]);
        let w = p.cross(q);
        c = c + (p + q) * w;
    }
    c * (1.0 / (3.0 * a2))
}

/// Incenter and inradius of a triangle.
pub fn incenter_inradius(tri: [Point2; 3]) -> Result<(Point2, f64), GeomError> {
    let [a, b, c] = tri;
    let area = signed_area2(&tri).abs() * 0.5;
    let eps = Tolerance::default().eps_points(&tri);
    if area <= eps * Bbox::of(tri).diagonal().max(1.0) {
        return Err(GeomError::DegenerateTriangle { area });
    }
    let la = b.dist(c);
    let lb = c.dist(a);
    let lc = a.dist(b);
    let p = la + lb + lc;
    let center = (a * la + b * lb + c * lc) * (1.0 / p);
    Ok((center, 2.0 * area / p))
}

/// Orthogonal projection of `p` onto `s`, rejected when it lands outside the
/// closed segment.
pub fn perpendicular_foot(p: Point2, s: &Segment) -> Result<Point2, GeomError> {
    let t = s.project_param(p);
    let eps = Tolerance::default().eps_points(&[s.a, s.b]) / s.length().max(1e-300);
    if t < -eps || t > 1.0 + eps {
        return Err(GeomError::FootOutsideSegment { t });
    }
    Ok(s.point_at(t.clamp(0.0, 1.0)))
}

/// Outcome of a convexity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Convexity {
    pub convex: bool,
    /// At least one interior angle equals π within tolerance.
    pub has_collinear: bool,
}

/// Convexity by the sign of consecutive edge cross products. Collinear
/// vertices count as convex but are flagged.
pub fn convexity(poly: &[Point2], tol: &Tolerance) -> Result<Convexity, GeomError> {
    let n = poly.len();
    if n < 3 {
        return Err(GeomError::TooFewVertices(n));
    }
    if poly.iter().any(|p| !p.is_finite()) {
        return Err(GeomError::NonFinite);
    }
    if is_self_intersecting(poly, tol) {
        return Err(GeomError::SelfIntersecting);
    }
    let orient = signed_area2(poly).signum();
    let mut has_collinear = false;
    let mut convex = true;
    for i in 0..n {
        let p = poly[(i + n - 1) % n];
        let q = poly[i];
        let r = poly[(i + 1) % n];
        let (e1, e2) = (q - p, r - q);
        let scale = e1.norm() * e2.norm();
        let c = e1.cross(e2) * orient;
        if c.abs() <= 1e-9 * scale {
            has_collinear = true;
        } else if c < 0.0 {
            convex = false;
        }
    }
    Ok(Convexity {
        convex,
        has_collinear,
    })
}

pub fn is_convex(poly: &[Point2]) -> Result<bool, GeomError> {
    convexity(poly, &Tolerance::default()).map(|c| c.convex)
}

/// Proper crossing test for non-adjacent edges of a closed polygon.
fn is_self_intersecting(poly: &[Point2], tol: &Tolerance) -> bool {
    let n = poly.len();
    let eps = tol.eps_points(poly);
    for i in 0..n {
        let s1 = Segment::new(poly[i], poly[(i + 1) % n]);
        for j in (i + 2)..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let s2 = Segment::new(poly[j], poly[(j + 1) % n]);
            if segments_cross(&s1, &s2, eps) {
                return true;
            }
        }
    }
    false
}

/// True when the open interiors of the two segments intersect at a single point.
pub fn segments_cross(s1: &Segment, s2: &Segment, eps: f64) -> bool {
    let d1 = s1.b - s1.a;
    let d2 = s2.b - s2.a;
    let den = d1.cross(d2);
    if den.abs() <= eps * (d1.norm() + d2.norm()) * 1e-3 {
        return false;
    }
    let w = s2.a - s1.a;
    let t = w.cross(d2) / den;
    let u = w.cross(d1) / den;
    let et = eps / d1.norm();
    let eu = eps / d2.norm();
    t > et && t < 1.0 - et && u > eu && u < 1.0 - eu
}

/// Interior angle at `q` of the CCW chain `p → q → r`, in `(0, 2π)`.
pub fn interior_angle(p: Point2, q: Point2, r: Point2) -> f64 {
    let a = (p - q).angle();
    let b = (r - q).angle();
    let mut d = a - b;
    while d <= 0.0 {
        d += 2.0 * PI;
    }
    while d > 2.0 * PI {
        d -= 2.0 * PI;
    }
    d
}

/// Strict point-in-convex-polygon test (CCW polygon); points within `eps` of
/// the boundary are outside.
pub fn point_strictly_in_convex(poly: &[Point2], p: Point2, eps: f64) -> bool {
    let n = poly.len();
    (0..n).all(|i| {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let d = b - a;
        d.cross(p - a) / d.norm() > eps
    })
}

/// Even-odd point-in-polygon test for arbitrary simple polygons.
pub fn point_in_polygon(poly: &[Point2], p: Point2) -> bool {
    let n = poly.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (pi, pj) = (poly[i], poly[j]);
        if (pi.y > p.y) != (pj.y > p.y) {
            let x = pj.x + (p.y - pj.y) * (pi.x - pj.x) / (pi.y - pj.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Area of the intersection of two convex CCW polygons (Sutherland–Hodgman).
pub fn convex_intersection_area(a: &[Point2], b: &[Point2]) -> f64 {
    let mut out: Vec<Point2> = a.to_vec();
    let n = b.len();
    for i in 0..n {
        if out.is_empty() {
            break;
        }
        let (c0, c1) = (b[i], b[(i + 1) % n]);
        let d = c1 - c0;
        let inside = |p: Point2| d.cross(p - c0) >= 0.0;
        let input = std::mem::take(&mut out);
        let m = input.len();
        for k in 0..m {
            let cur = input[k];
            let prev = input[(k + m - 1) % m];
            let (ci, pi) = (inside(cur), inside(prev));
            if ci != pi {
                let e = cur - prev;
                let den = d.cross(e);
                if den.abs() > 0.0 {
                    let t = d.cross(c0 - prev) / den;
                    out.push(prev + e * t);
                }
            }
            if ci {
                out.push(cur);
            }
        }
    }
    if out.len() < 3 {
        0.0
    } else {
        polygon_area(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Point2, b: Point2) -> bool {
        a.dist(b) < 1e-12
    }

    #[test]
    fn bisector_of_square_corner() {
        let r = angle_bisector_ray(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
        )
        .unwrap();
        let h = 0.5f64.sqrt();
        assert!(close(r.origin, Point2::new(1.0, 0.0)));
        assert!(close(r.dir, Point2::new(-h, h)));
    }

    #[test]
    fn bisector_of_right_angle_at_origin() {
        let r = angle_bisector_ray(
            Point2::new(4.0, 0.0),
            Point2::ORIGIN,
            Point2::new(0.0, 3.0),
        )
        .unwrap();
        let h = 0.5f64.sqrt();
        assert!(close(r.dir, Point2::new(h, h)));
    }

    #[test]
    fn bisector_passes_through_incenter() {
        // oracle: weighted-vertex incenter of (0,0),(4,0),(0,3) is (1,1)
        let (a, b, c) = (Point2::new(0.0, 0.0), Point2::new(4.0, 0.0), Point2::new(0.0, 3.0));
        let (la, lb, lc) = (b.dist(c), c.dist(a), a.dist(b));
        let inc = (a * la + b * lb + c * lc) * (1.0 / (la + lb + lc));
        assert!(close(inc, Point2::new(1.0, 1.0)));
        let r = angle_bisector_ray(a, b, c).unwrap();
        assert!(r.line_distance(inc) < 1e-12);
    }

    #[test]
    fn bisector_rejects_collinear() {
        let e = angle_bisector_ray(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
        );
        assert!(matches!(e, Err(GeomError::DegenerateAngle { .. })));
    }

    #[test]
    fn incenter_examples() {
        let (c, r) = incenter_inradius([
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(0.0, 3.0),
        ])
        .unwrap();
        assert!(close(c, Point2::new(1.0, 1.0)));
        assert!((r - 1.0).abs() < 1e-12);

        let s3 = 3f64.sqrt();
        let (c, _) = incenter_inradius([
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, s3),
        ])
        .unwrap();
        assert!(close(c, Point2::new(1.0, 1.0 / s3)));

        let (c, _) = incenter_inradius([
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 5.0),
        ])
        .unwrap();
        assert!((c.x - 1.0).abs() < 1e-12);

        assert!(matches!(
            incenter_inradius([
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(2.0, 0.0)
            ]),
            Err(GeomError::DegenerateTriangle { .. })
        ));
    }

    #[test]
    fn feet() {
        let s = Segment::new(Point2::new(0.0, 0.0), Point2::new(4.0, 0.0));
        assert!(close(
            perpendicular_foot(Point2::new(1.0, 1.0), &s).unwrap(),
            Point2::new(1.0, 0.0)
        ));
        let s = Segment::new(Point2::new(4.0, 0.0), Point2::new(0.0, 3.0));
        let f = perpendicular_foot(Point2::new(1.0, 1.0), &s).unwrap();
        assert!(close(f, Point2::new(1.6, 1.8)));
        assert!((f.dist(Point2::new(1.0, 1.0)) - 1.0).abs() < 1e-12);
        let s = Segment::new(Point2::new(0.0, 0.0), Point2::new(1.0, 0.0));
        assert!(close(
            perpendicular_foot(Point2::new(0.0, 5.0), &s).unwrap(),
            Point2::ORIGIN
        ));
        assert!(matches!(
            perpendicular_foot(Point2::new(3.0, 1.0), &s),
            Err(GeomError::FootOutsideSegment { .. })
        ));
    }

    #[test]
    fn convexity_examples() {
        let sq = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ];
        assert!(is_convex(&sq).unwrap());
        let l = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 2.0),
            Point2::new(0.0, 2.0),
        ];
        assert!(!is_convex(&l).unwrap());
        let para = [
            Point2::new(0.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(4.0, 1.0),
            Point2::new(1.0, 1.0),
        ];
        assert!(is_convex(&para).unwrap());
        let bow = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(1.0, 0.0),
            Point2::new(0.0, 1.0),
        ];
        assert_eq!(is_convex(&bow), Err(GeomError::SelfIntersecting));
        let flat = [
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(1.0, 1.0),
        ];
        let c = convexity(&flat, &Tolerance::default()).unwrap();
        assert!(c.convex && c.has_collinear);
    }

    #[test]
    fn isometry_examples() {
        let p = Point2::new(2.0, 3.0);
        assert!(close(Isometry::IDENTITY.apply(p), p));
        assert!(close(
            Isometry::rotation(PI).apply(Point2::new(1.0, 0.0)),
            Point2::new(-1.0, 0.0)
        ));
        let iso = Isometry::new(0.0, Point2::new(1.0, 0.0), true);
        assert!(close(iso.apply(Point2::new(0.0, 1.0)), Point2::new(1.0, -1.0)));
    }

    #[test]
    fn mirror_across_line() {
        let m = Isometry::mirror_across(Point2::new(0.0, 1.0), Point2::new(1.0, 2.0));
        // line y = x + 1 maps (1,0) to (-1,2)
        assert!(close(m.apply(Point2::new(1.0, 0.0)), Point2::new(-1.0, 2.0)));
        assert!(close(m.apply(Point2::new(0.0, 1.0)), Point2::new(0.0, 1.0)));
    }

    #[test]
    fn intersection_area() {
        let a = [
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 2.0),
            Point2::new(0.0, 2.0),
        ];
        let b = [
            Point2::new(1.0, 1.0),
            Point2::new(3.0, 1.0),
            Point2::new(3.0, 3.0),
            Point2::new(1.0, 3.0),
        ];
        assert!((convex_intersection_area(&a, &b) - 1.0).abs() < 1e-12);
        let c = [
            Point2::new(2.0, 0.0),
            Point2::new(3.0, 0.0),
            Point2::new(3.0, 1.0),
        ];
        assert!(convex_intersection_area(&a, &c).abs() < 1e-12);
    }
}
