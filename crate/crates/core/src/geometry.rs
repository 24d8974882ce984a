//! Planar primitives shared by every construction.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Absolute tolerance for angle comparisons, in radians.
pub const EPS_ANG: f64 = 1e-9;
/// Absolute tolerance for length comparisons at unit ridge length.
pub const EPS_LEN: f64 = 1e-9;
/// Cross products below this are treated as parallel.
pub const PARALLEL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("zero-length leg at ({x}, {y})")]
    ZeroLengthLeg { x: f64, y: f64 },
    #[error("degenerate line: both points coincide")]
    DegenerateLine,
    #[error("opposite legs have no internal bisector")]
    OppositeLegs,
    #[error("no intersection: {0}")]
    NoIntersection(String),
}

/// An angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);
    pub const RIGHT: Angle = Angle(PI / 2.0);
    pub const STRAIGHT: Angle = Angle(PI);

    pub const fn from_rad(rad: f64) -> Self {
        Angle(rad)
    }

    pub fn from_deg(deg: f64) -> Self {
        Angle(deg.to_radians())
    }

    pub fn rad(self) -> f64 {
        self.0
    }

    pub fn deg(self) -> f64 {
        self.0.to_degrees()
    }

    /// Representative in (−π, π].
    pub fn normalized(self) -> Self {
        let mut a = self.0 % (2.0 * PI);
        if a <= -PI {
            a += 2.0 * PI;
        } else if a > PI {
            a -= 2.0 * PI;
        }
        Angle(a)
    }

    pub fn sin(self) -> f64 {
        self.0.sin()
    }

    pub fn cos(self) -> f64 {
        self.0.cos()
    }

    pub fn tan(self) -> f64 {
        self.0.tan()
    }

    pub fn abs(self) -> Self {
        Angle(self.0.abs())
    }

    pub fn approx_eq(self, other: Angle) -> bool {
        (self.0 - other.0).abs() < EPS_ANG
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.6}°", self.deg())
    }
}

impl Add for Angle {
    type Output = Angle;
    fn add(self, o: Angle) -> Angle {
        Angle(self.0 + o.0)
    }
}

impl Sub for Angle {
    type Output = Angle;
    fn sub(self, o: Angle) -> Angle {
        Angle(self.0 - o.0)
    }
}

impl Neg for Angle {
    type Output = Angle;
    fn neg(self) -> Angle {
        Angle(-self.0)
    }
}

impl Mul<f64> for Angle {
    type Output = Angle;
    fn mul(self, k: f64) -> Angle {
        Angle(self.0 * k)
    }
}

impl Div<f64> for Angle {
    type Output = Angle;
    fn div(self, k: f64) -> Angle {
        Angle(self.0 / k)
    }
}

/// A point or free vector in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Unit vector at polar angle `a`.
    pub fn polar(a: Angle) -> Self {
        Point2::new(a.cos(), a.sin())
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Option<Point2> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self / n)
    }

    /// Counterclockwise rotation about the origin.
    pub fn rotated(self, a: Angle) -> Point2 {
        let (s, c) = a.rad().sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    /// Polar angle in (−π, π].
    pub fn azimuth(self) -> Angle {
        Angle::from_rad(self.y.atan2(self.x))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn approx_eq(self, o: Point2, tol: f64) -> bool {
        self.dist(o) < tol
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, k: f64) -> Point2 {
        Point2::new(self.x * k, self.y * k)
    }
}

impl Div<f64> for Point2 {
    type Output = Point2;
    fn div(self, k: f64) -> Point2 {
        Point2::new(self.x / k, self.y / k)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// A half-line with unit direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Ray2 {
    pub origin: Point2,
    pub dir: Point2,
}

impl Ray2 {
    /// Normalizes `dir`; `None` for a zero direction.
    pub fn new(origin: Point2, dir: Point2) -> Option<Self> {
        dir.normalized().map(|dir| Ray2 { origin, dir })
    }

    pub fn at_angle(origin: Point2, a: Angle) -> Self {
        Ray2 {
            origin,
            dir: Point2::polar(a),
        }
    }

    pub fn through(origin: Point2, toward: Point2) -> Option<Self> {
        Ray2::new(origin, toward - origin)
    }

    pub fn point_at(&self, t: f64) -> Point2 {
        self.origin + self.dir * t
    }

    pub fn line(&self) -> Line2 {
        Line2 {
            point: self.origin,
            dir: self.dir,
        }
    }
}

/// An infinite line through `point` along unit `dir`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    pub point: Point2,
    pub dir: Point2,
}

impl Line2 {
    pub fn new(point: Point2, dir: Point2) -> Option<Self> {
        dir.normalized().map(|dir| Line2 { point, dir })
    }

    pub fn through(a: Point2, b: Point2) -> Result<Self, GeometryError> {
        Line2::new(a, b - a).ok_or(GeometryError::DegenerateLine)
    }

    /// Signed distance, positive on the left of `dir`.
    pub fn signed_distance(&self, p: Point2) -> f64 {
        self.dir.cross(p - self.point)
    }

    pub fn project(&self, p: Point2) -> f64 {
        (p - self.point).dot(self.dir)
    }
}

/// Intersection of two supporting lines with the parameters along each.
pub fn intersect_lines(a: &Line2, b: &Line2) -> Option<(Point2, f64, f64)> {
    let den = a.dir.cross(b.dir);
    if den.abs() < PARALLEL_EPS {
        return None;
    }
    let d = b.point - a.point;
    let t = d.cross(b.dir) / den;
    let u = d.cross(a.dir) / den;
    Some((a.point + a.dir * t, t, u))
}

/// Intersection of two rays; `None` when parallel or behind either origin.
pub fn intersect_rays(a: &Ray2, b: &Ray2) -> Option<Point2> {
    let (p, t, u) = intersect_lines(&a.line(), &b.line())?;
    (t >= -EPS_LEN && u >= -EPS_LEN).then_some(p)
}

/// Intersection of a ray with the closed segment `s0`–`s1`.
pub fn intersect_ray_segment(r: &Ray2, s0: Point2, s1: Point2) -> Option<Point2> {
    let len = s0.dist(s1);
    let seg = Line2::new(s0, s1 - s0)?;
    let (p, t, u) = intersect_lines(&r.line(), &seg)?;
    (t >= -EPS_LEN && u >= -EPS_LEN && u <= len + EPS_LEN).then_some(p)
}

/// Counterclockwise rigid rotation of `p` about `center`.
pub fn rotate_about(p: Point2, center: Point2, angle: Angle) -> Point2 {
    center + (p - center).rotated(angle)
}

/// Mirror image of `p` across the line through `a` and `b`.
pub fn reflect_across(p: Point2, a: Point2, b: Point2) -> Result<Point2, GeometryError> {
    let line = Line2::through(a, b)?;
    Ok(reflect_across_line(p, &line))
}

pub fn reflect_across_line(p: Point2, line: &Line2) -> Point2 {
    let foot = line.point + line.dir * line.project(p);
    foot * 2.0 - p
}

/// Mirror image of a direction across a line direction.
pub fn reflect_direction(v: Point2, mirror_dir: Point2) -> Point2 {
    let m = mirror_dir.normalized().unwrap_or(mirror_dir);
    m * (2.0 * v.dot(m)) - v
}

/// Internal bisector of the angle `toward_1`–`vertex`–`toward_2`.
pub fn bisector_ray(vertex: Point2, toward_1: Point2, toward_2: Point2) -> Result<Ray2, GeometryError> {
    let u = unit_leg(vertex, toward_1)?;
    let v = unit_leg(vertex, toward_2)?;
    Ray2::new(vertex, u + v).ok_or(GeometryError::OppositeLegs)
}

fn unit_leg(vertex: Point2, p: Point2) -> Result<Point2, GeometryError> {
    (p - vertex)
        .normalized()
        .filter(|_| vertex.dist(p) > PARALLEL_EPS)
        .ok_or(GeometryError::ZeroLengthLeg { x: p.x, y: p.y })
}

/// Unsigned angle at `vertex` between the legs to `p` and `q`, in [0, π].
pub fn angle_at(vertex: Point2, p: Point2, q: Point2) -> Result<Angle, GeometryError> {
    let a = unit_leg(vertex, p)?;
    let b = unit_leg(vertex, q)?;
    Ok(Angle::from_rad(a.cross(b).abs().atan2(a.dot(b))))
}

/// Counterclockwise angle from direction `a` to direction `b`, in [0, 2π).
pub fn ccw_angle(a: Point2, b: Point2) -> f64 {
    let t = a.cross(b).atan2(a.dot(b));
    if t < 0.0 {
        t + 2.0 * PI
    } else {
        t
    }
}
