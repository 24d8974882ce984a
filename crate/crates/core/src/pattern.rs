//! Crease-pattern data model and the local foldability checks.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{PleatFrame, Side};
use crate::geometry::{angle_at, Angle, Point2, EPS_ANG, PARALLEL_EPS};

/// Residual bound for Kawasaki sums and registered identities.
pub const CHECK_TOL: f64 = 1e-9;
/// Default side of the clipping square, in units of |AB|.
pub const DEFAULT_BBOX_SCALE: f64 = 6.0;
/// Label carried by the clipping-square edges.
pub const BORDER_LABEL: &str = "border";

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PatternError {
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("vertex {vertex} has odd degree {degree}")]
    OddDegree { vertex: String, degree: usize },
    #[error("no crease meets vertex {0}")]
    NotAVertex(String),
    #[error("{0} illegal crease crossings")]
    NotPlanar(usize),
    #[error("pattern has no creases")]
    Empty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Fold {
    Mountain,
    Valley,
    Border,
}

impl Fold {
    pub fn code(self) -> &'static str {
        match self {
            Fold::Mountain => "M",
            Fold::Valley => "V",
            Fold::Border => "B",
        }
    }

    pub fn from_code(s: &str) -> Option<Fold> {
        match s {
            "M" => Some(Fold::Mountain),
            "V" => Some(Fold::Valley),
            "B" => Some(Fold::Border),
            _ => None,
        }
    }

    /// Seen from the other side of the sheet.
    pub fn reversed(self) -> Fold {
        match self {
            Fold::Mountain => Fold::Valley,
            Fold::Valley => Fold::Mountain,
            Fold::Border => Fold::Border,
        }
    }
}

impl fmt::Display for Fold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Crease {
    pub from: Point2,
    pub to: Point2,
    pub fold: Fold,
    pub label: String,
    /// Set for unbounded pleat lines; `to` is then the clip point.
    pub ray_dir: Option<Point2>,
}

impl Crease {
    pub fn length(&self) -> f64 {
        self.from.dist(self.to)
    }
}

/// A case split taken during construction, with the governing quantities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Branch {
    pub name: String,
    pub inequality: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub construction: String,
    pub flat: bool,
    pub branches: Vec<Branch>,
    pub values: BTreeMap<String, f64>,
    pub interference: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl ConstructionReport {
    pub fn has_branch(&self, name: &str) -> bool {
        self.branches.iter().any(|b| b.name == name)
    }

    pub fn value(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Measure {
    /// Unsigned angle at `vertex` between the legs to `from` and `to`.
    Angle { vertex: String, from: String, to: String },
    Distance { a: String, b: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Term {
    pub coef: f64,
    pub measure: Measure,
}

pub fn ang(vertex: &str, from: &str, to: &str) -> Measure {
    Measure::Angle {
        vertex: vertex.into(),
        from: from.into(),
        to: to.into(),
    }
}

pub fn dist(a: &str, b: &str) -> Measure {
    Measure::Distance { a: a.into(), b: b.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    Equal,
    Greater,
}

/// Σ coef·measure (relation) rhs, resolved against the named points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Identity {
    pub name: String,
    pub terms: Vec<Term>,
    pub rhs: f64,
    pub relation: Relation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub relation: Relation,
    /// |lhs − rhs| for equalities; for strict inequalities 0 when they hold,
    /// otherwise the shortfall (or +∞ at equality).
    pub residual: f64,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        match self.relation {
            Relation::Equal => self.residual < CHECK_TOL,
            Relation::Greater => self.lhs > self.rhs,
        }
    }
}

/// A vertex claimed locally flat-foldable; `exclude` lists crease labels
/// that do not take part in the local fold there.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatVertex {
    pub name: String,
    pub exclude: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Kawasaki {
    pub residual: Angle,
    pub degree: usize,
    /// Crease directions merged because they coincided within ε_ang.
    pub merged: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CreasePattern {
    pub creases: Vec<Crease>,
    pub points: BTreeMap<String, Point2>,
    pub report: ConstructionReport,
    pub identities: Vec<Identity>,
    pub flat_vertices: Vec<FlatVertex>,
    pub ab_len: f64,
    /// Half the side of the clipping square centered at A.
    pub half_size: f64,
}

/// Planar straight-line graph view: deduplicated vertices and split edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarGraph {
    pub vertices: Vec<Point2>,
    pub edges: Vec<PlanarEdge>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanarEdge {
    pub a: usize,
    pub b: usize,
    pub fold: Fold,
    pub label: String,
}

impl CreasePattern {
    pub fn point(&self, name: &str) -> Result<Point2, PatternError> {
        self.points
            .get(name)
            .copied()
            .ok_or_else(|| PatternError::UnknownPoint(name.to_string()))
    }

    fn tol(&self) -> f64 {
        1e-8 * self.ab_len.max(1.0)
    }

    pub fn creases_labeled(&self, label: &str) -> impl Iterator<Item = &Crease> {
        let label = label.to_string();
        self.creases.iter().filter(move |c| c.label == label)
    }

    pub fn has_crease(&self, label: &str) -> bool {
        self.creases.iter().any(|c| c.label == label)
    }

    /// Sorted (fold, label) pairs of the construction creases.
    pub fn label_multiset(&self) -> Vec<(Fold, String)> {
        let mut v: Vec<(Fold, String)> = self
            .creases
            .iter()
            .filter(|c| c.fold != Fold::Border)
            .map(|c| (c.fold, c.label.clone()))
            .collect();
        v.sort();
        v
    }

    pub fn count_fold(&self, fold: Fold) -> usize {
        self.creases.iter().filter(|c| c.fold == fold).count()
    }

    /// Kawasaki residual at a named point, honoring any exclusions declared for it.
    pub fn kawasaki_residual(&self, name: &str) -> Result<Kawasaki, PatternError> {
        let p = self.point(name)?;
        let exclude: Vec<String> = self
            .flat_vertices
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.exclude.clone())
            .unwrap_or_default();
        self.kawasaki_at(name, p, &exclude)
    }

    pub fn kawasaki_at(&self, name: &str, v: Point2, exclude: &[String]) -> Result<Kawasaki, PatternError> {
        let tol = self.tol();
        let mut dirs: Vec<f64> = Vec::new();
        for c in &self.creases {
            if c.fold == Fold::Border || exclude.contains(&c.label) {
                continue;
            }
            for d in crease_directions_at(c, v, tol) {
                dirs.push(d.y.atan2(d.x));
            }
        }
        if dirs.is_empty() {
            return Err(PatternError::NotAVertex(name.to_string()));
        }
        dirs.sort_by(f64::total_cmp);
        let mut merged = 0;
        let mut uniq: Vec<f64> = Vec::with_capacity(dirs.len());
        for d in dirs {
            match uniq.last() {
                Some(&last) if d - last < EPS_ANG => merged += 1,
                _ => uniq.push(d),
            }
        }
        if uniq.len() > 1 && uniq[0] + 2.0 * PI - uniq[uniq.len() - 1] < EPS_ANG {
            uniq.pop();
            merged += 1;
        }
        let n = uniq.len();
        if n % 2 == 1 {
            return Err(PatternError::OddDegree {
                vertex: name.to_string(),
                degree: n,
            });
        }
        let mut alt = 0.0;
        for i in 0..n {
            let next = if i + 1 < n { uniq[i + 1] } else { uniq[0] + 2.0 * PI };
            let sector = next - uniq[i];
            alt += if i % 2 == 0 { sector } else { -sector };
        }
        Ok(Kawasaki {
            residual: Angle::from_rad(alt.abs()),
            degree: n,
            merged,
        })
    }

    /// Residual at every declared flat vertex.
    pub fn declared_flat_residuals(&self) -> Vec<(String, Result<Kawasaki, PatternError>)> {
        self.flat_vertices
            .iter()
            .map(|f| (f.name.clone(), self.kawasaki_residual(&f.name)))
            .collect()
    }

    pub fn eval_measure(&self, m: &Measure) -> Result<f64, PatternError> {
        match m {
            Measure::Angle { vertex, from, to } => {
                let (v, a, b) = (self.point(vertex)?, self.point(from)?, self.point(to)?);
                angle_at(v, a, b)
                    .map(|x| x.rad())
                    .map_err(|_| PatternError::UnknownPoint(format!("degenerate angle at {vertex}")))
            }
            Measure::Distance { a, b } => Ok(self.point(a)?.dist(self.point(b)?)),
        }
    }

    pub fn assert_identities(&self) -> Result<Vec<IdentityCheck>, PatternError> {
        self.identities
            .iter()
            .map(|id| {
                let mut lhs = 0.0;
                for t in &id.terms {
                    lhs += t.coef * self.eval_measure(&t.measure)?;
                }
                let residual = match id.relation {
                    Relation::Equal => (lhs - id.rhs).abs(),
                    Relation::Greater if lhs > id.rhs => 0.0,
                    Relation::Greater if lhs == id.rhs => f64::INFINITY,
                    Relation::Greater => id.rhs - lhs,
                };
                Ok(IdentityCheck {
                    name: id.name.clone(),
                    lhs,
                    rhs: id.rhs,
                    relation: id.relation,
                    residual,
                })
            })
            .collect()
    }

    /// Pairs of creases that cross away from a shared vertex or overlap.
    /// A crease ending on the interior of another (T-junction) is legal.
    pub fn check_planarity(&self) -> Vec<(usize, usize)> {
        let tol = self.tol();
        let mut bad = Vec::new();
        for i in 0..self.creases.len() {
            for j in i + 1..self.creases.len() {
                if segments_conflict(&self.creases[i], &self.creases[j], tol) {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Splits creases at every vertex lying on their interior.
    pub fn planarize(&self) -> PlanarGraph {
        let tol = self.tol();
        let mut vertices: Vec<Point2> = Vec::new();
        let index_of = |p: Point2, vertices: &mut Vec<Point2>| -> usize {
            if let Some(i) = vertices.iter().position(|q| q.dist(p) < tol) {
                i
            } else {
                vertices.push(p);
                vertices.len() - 1
            }
        };
        for c in &self.creases {
            index_of(c.from, &mut vertices);
            index_of(c.to, &mut vertices);
        }
        let mut edges: Vec<PlanarEdge> = Vec::new();
        for c in &self.creases {
            let len = c.length();
            if len < tol {
                continue;
            }
            let dir = (c.to - c.from) / len;
            let mut stops: Vec<(f64, usize)> = vertices
                .iter()
                .enumerate()
                .filter_map(|(i, &q)| {
                    let t = (q - c.from).dot(dir);
                    let off = (q - c.from).cross(dir).abs();
                    (off < tol && t > -tol && t < len + tol).then_some((t, i))
                })
                .collect();
            stops.sort_by(|a, b| a.0.total_cmp(&b.0));
            stops.dedup_by_key(|s| s.1);
            for w in stops.windows(2) {
                let (a, b) = (w[0].1, w[1].1);
                if a != b && !edges.iter().any(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a)) {
                    edges.push(PlanarEdge {
                        a,
                        b,
                        fold: c.fold,
                        label: c.label.clone(),
                    });
                }
            }
        }
        PlanarGraph { vertices, edges }
    }

    /// Mirror x ↦ −x and view from the other side (mountains become valleys).
    pub fn flipped(&self) -> CreasePattern {
        let m = |p: Point2| Point2::new(-p.x, p.y);
        let mut out = self.clone();
        for c in &mut out.creases {
            c.from = m(c.from);
            c.to = m(c.to);
            c.ray_dir = c.ray_dir.map(m);
            c.fold = c.fold.reversed();
        }
        for p in out.points.values_mut() {
            *p = m(*p);
        }
        out.report.notes.push("horizontally flipped".into());
        out
    }

    /// Re-clips the pleat rays to a square of side `scale`·|AB|, growing it if
    /// construction points would fall outside.
    pub fn reclipped(&self, scale: f64) -> CreasePattern {
        let mut out = self.clone();
        out.creases.retain(|c| c.fold != Fold::Border);
        let reach = out
            .creases
            .iter()
            .flat_map(|c| {
                let mut v = vec![c.from];
                if c.ray_dir.is_none() {
                    v.push(c.to);
                }
                v
            })
            .chain(out.points.iter().filter(|(k, _)| !k.starts_with('@')).map(|(_, p)| *p))
            .map(|p| p.x.abs().max(p.y.abs()))
            .fold(0.0, f64::max);
        let h = (0.5 * scale * out.ab_len).max(1.25 * reach);
        out.half_size = h;
        for c in &mut out.creases {
            if let Some(d) = c.ray_dir {
                c.to = clip_to_square(c.from, d, h);
            }
        }
        let corners = [
            Point2::new(-h, -h),
            Point2::new(h, -h),
            Point2::new(h, h),
            Point2::new(-h, h),
        ];
        for i in 0..4 {
            out.creases.push(Crease {
                from: corners[i],
                to: corners[(i + 1) % 4],
                fold: Fold::Border,
                label: BORDER_LABEL.into(),
                ray_dir: None,
            });
        }
        out
    }
}

fn crease_directions_at(c: &Crease, v: Point2, tol: f64) -> Vec<Point2> {
    let len = c.length();
    if len < tol {
        return Vec::new();
    }
    if c.from.dist(v) < tol {
        return vec![(c.to - c.from) / len];
    }
    if c.to.dist(v) < tol {
        return vec![(c.from - c.to) / len];
    }
    let dir = (c.to - c.from) / len;
    let t = (v - c.from).dot(dir);
    let off = (v - c.from).cross(dir).abs();
    if off < tol && t > 0.0 && t < len {
        vec![dir, -dir]
    } else {
        Vec::new()
    }
}

fn segments_conflict(a: &Crease, b: &Crease, tol: f64) -> bool {
    let (la, lb) = (a.length(), b.length());
    if la < tol || lb < tol {
        return false;
    }
    let da = (a.to - a.from) / la;
    let db = (b.to - b.from) / lb;
    let den = da.cross(db);
    if den.abs() < PARALLEL_EPS {
        // Parallel: conflict only if collinear with overlap of positive length.
        if (b.from - a.from).cross(da).abs() > tol {
            return false;
        }
        let t0 = (b.from - a.from).dot(da);
        let t1 = (b.to - a.from).dot(da);
        let (lo, hi) = (t0.min(t1), t0.max(t1));
        return hi.min(la) - lo.max(0.0) > tol;
    }
    let d = b.from - a.from;
    let t = d.cross(db) / den;
    let u = d.cross(da) / den;
    // Rounding in far-flung, nearly parallel creases grows like ε·extent/|sin|.
    let extent = [a.from, a.to, b.from, b.to].iter().map(|p| p.norm()).fold(0.0, f64::max);
    let tol = tol.max(64.0 * f64::EPSILON * extent / den.abs());
    let interior_a = t > tol && t < la - tol;
    let interior_b = u > tol && u < lb - tol;
    interior_a && interior_b
}

fn clip_to_square(o: Point2, d: Point2, h: f64) -> Point2 {
    let mut t = f64::INFINITY;
    for (oc, dc) in [(o.x, d.x), (o.y, d.y)] {
        if dc > PARALLEL_EPS {
            t = t.min((h - oc) / dc);
        } else if dc < -PARALLEL_EPS {
            t = t.min((-h - oc) / dc);
        }
    }
    o + d * t
}

/// Accumulates a pattern; rays are clipped when finished.
#[derive(Debug, Clone)]
pub struct PatternBuilder {
    cp: CreasePattern,
}

impl PatternBuilder {
    /// Starts a pattern on a frame, registering A, B_σ, C, P and the
    /// direction helpers `@j_σ`, `@k_σ`, `@ell_σ` (one unit along each ray
    /// from its origin) and `@m_σ` (from P).
    pub fn new(construction: &str, frame: &PleatFrame) -> Self {
        let mut b = PatternBuilder {
            cp: CreasePattern {
                creases: Vec::new(),
                points: BTreeMap::new(),
                report: ConstructionReport {
                    construction: construction.to_string(),
                    flat: frame.flat,
                    ..Default::default()
                },
                identities: Vec::new(),
                flat_vertices: Vec::new(),
                ab_len: frame.ab(),
                half_size: 0.5 * DEFAULT_BBOX_SCALE * frame.ab(),
            },
        };
        b.point("A", frame.a);
        b.point("C", frame.c);
        b.point("P", frame.p);
        for s in Side::BOTH {
            let t = s.tag();
            b.point(&format!("B_{t}"), frame.b(s));
            b.point(&format!("@j_{t}"), frame.j(s).point_at(1.0));
            b.point(&format!("@k_{t}"), frame.k(s).point_at(1.0));
            b.point(&format!("@ell_{t}"), frame.ell(s).point_at(1.0));
            b.point(&format!("@m_{t}"), frame.m(s).point_at(1.0));
        }
        let d = frame.derived;
        b.angle_value("gamma", d.gamma);
        b.angle_value("gamma_L", d.gamma_l);
        b.angle_value("gamma_R", d.gamma_r);
        b.value("r", d.r);
        b
    }

    pub fn point(&mut self, name: &str, p: Point2) -> Point2 {
        self.cp.points.insert(name.to_string(), p);
        p
    }

    pub fn get(&self, name: &str) -> Point2 {
        self.cp.points[name]
    }

    /// Segment between two named points. Zero-length segments are dropped
    /// and noted, since degenerate branches merge points.
    pub fn seg(&mut self, label: &str, a: &str, b: &str, fold: Fold) {
        let (pa, pb) = (self.get(a), self.get(b));
        self.seg_pts(label, pa, pb, fold);
    }

    pub fn seg_pts(&mut self, label: &str, a: Point2, b: Point2, fold: Fold) {
        if a.dist(b) < 1e-9 * self.cp.ab_len {
            self.note(format!("{label} has zero length and was merged"));
            return;
        }
        self.cp.creases.push(Crease {
            from: a,
            to: b,
            fold,
            label: label.to_string(),
            ray_dir: None,
        });
    }

    pub fn ray(&mut self, label: &str, origin: Point2, dir: Point2, fold: Fold) {
        let dir = dir.normalized().expect("ray direction must be nonzero");
        self.cp.creases.push(Crease {
            from: origin,
            to: origin + dir,
            fold,
            label: label.to_string(),
            ray_dir: Some(dir),
        });
    }

    pub fn value(&mut self, name: &str, v: f64) {
        self.cp.report.values.insert(name.to_string(), v);
    }

    /// Stored in degrees under `name_deg`.
    pub fn angle_value(&mut self, name: &str, a: Angle) {
        self.cp.report.values.insert(format!("{name}_deg"), a.deg());
    }

    pub fn interference(&mut self, name: &str, v: f64) {
        self.cp.report.interference.insert(name.to_string(), v);
    }

    pub fn branch(&mut self, name: &str, inequality: &str, lhs: f64, rhs: f64) {
        self.cp.report.branches.push(Branch {
            name: name.into(),
            inequality: inequality.into(),
            lhs,
            rhs,
        });
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.cp.report.notes.push(s.into());
    }

    pub fn identity(&mut self, name: &str, terms: Vec<(f64, Measure)>, rhs: f64) {
        self.push_identity(name, terms, rhs, Relation::Equal);
    }

    pub fn identity_gt(&mut self, name: &str, terms: Vec<(f64, Measure)>, rhs: f64) {
        self.push_identity(name, terms, rhs, Relation::Greater);
    }

    fn push_identity(&mut self, name: &str, terms: Vec<(f64, Measure)>, rhs: f64, relation: Relation) {
        self.cp.identities.push(Identity {
            name: name.into(),
            terms: terms.into_iter().map(|(coef, measure)| Term { coef, measure }).collect(),
            rhs,
            relation,
        });
    }

    pub fn flat(&mut self, name: &str, exclude: &[&str]) {
        self.cp.flat_vertices.push(FlatVertex {
            name: name.into(),
            exclude: exclude.iter().map(|s| s.to_string()).collect(),
        });
    }

    pub fn finish(self) -> CreasePattern {
        self.cp.reclipped(DEFAULT_BBOX_SCALE)
    }
}

/// `L` or `R` suffixed name, e.g. `nm("E", Side::L)` = `E_L`.
pub fn nm(base: &str, side: Side) -> String {
    format!("{base}_{}", side.tag())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::{build_frame, GadgetSpec};

    fn star(degs: &[f64]) -> CreasePattern {
        let frame = build_frame(&GadgetSpec::cube()).unwrap();
        let mut b = PatternBuilder::new("test", &frame);
        let o = b.point("O", Point2::new(0.0, 0.0));
        for (i, d) in degs.iter().enumerate() {
            b.seg_pts(&format!("c{i}"), o, Point2::polar(Angle::from_deg(*d)), Fold::Mountain);
        }
        b.finish()
    }

    #[test]
    fn right_star_is_flat() {
        let cp = star(&[0.0, 90.0, 180.0, 270.0]);
        assert!(cp.kawasaki_residual("O").unwrap().residual.rad() < 1e-15);
    }

    #[test]
    fn skewed_star_residual() {
        let cp = star(&[0.0, 80.0, 180.0, 270.0]);
        let k = cp.kawasaki_residual("O").unwrap();
        assert!((k.residual.deg() - 20.0).abs() < 1e-12);
        assert_eq!(k.degree, 4);
    }

    #[test]
    fn odd_degree_is_reported() {
        let cp = star(&[0.0, 100.0, 200.0]);
        assert!(matches!(cp.kawasaki_residual("O"), Err(PatternError::OddDegree { degree: 3, .. })));
    }

    #[test]
    fn crease_through_vertex_counts_twice() {
        let frame = build_frame(&GadgetSpec::cube()).unwrap();
        let mut b = PatternBuilder::new("test", &frame);
        let o = b.point("O", Point2::new(0.5, 0.5));
        b.seg_pts("h", Point2::new(0.0, 0.5), Point2::new(1.0, 0.5), Fold::Valley);
        b.seg_pts("v", Point2::new(0.5, 0.0), o, Fold::Mountain);
        b.seg_pts("v2", o, Point2::new(0.5, 1.0), Fold::Mountain);
        let cp = b.finish();
        let k = cp.kawasaki_residual("O").unwrap();
        assert_eq!(k.degree, 4);
        assert!(k.residual.rad() < 1e-15);
    }

    #[test]
    fn planarity_detects_crossings() {
        let frame = build_frame(&GadgetSpec::cube()).unwrap();
        let mut b = PatternBuilder::new("test", &frame);
        b.seg_pts("a", Point2::new(0.0, 0.0), Point2::new(1.0, 1.0), Fold::Mountain);
        b.seg_pts("b", Point2::new(0.0, 1.0), Point2::new(1.0, 0.0), Fold::Valley);
        b.seg_pts("c", Point2::new(1.0, 1.0), Point2::new(2.0, 1.0), Fold::Valley);
        let cp = b.finish();
        assert_eq!(cp.check_planarity(), vec![(0, 1)]);
    }

    #[test]
    fn shared_endpoint_and_t_junction_are_legal() {
        let frame = build_frame(&GadgetSpec::cube()).unwrap();
        let mut b = PatternBuilder::new("test", &frame);
        b.seg_pts("a", Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Fold::Mountain);
        b.seg_pts("b", Point2::new(1.0, 0.0), Point2::new(1.0, 1.0), Fold::Valley);
        b.seg_pts("c", Point2::new(0.5, 0.0), Point2::new(0.5, -1.0), Fold::Valley);
        let cp = b.finish();
        assert!(cp.check_planarity().is_empty());
        let g = cp.planarize();
        // a is split by c's endpoint; the border square is split where nothing lands.
        assert_eq!(g.edges.iter().filter(|e| e.label == "a").count(), 2);
    }

    #[test]
    fn rays_are_clipped_to_the_square() {
        let frame = build_frame(&GadgetSpec::cube()).unwrap();
        let mut b = PatternBuilder::new("test", &frame);
        b.ray("x", Point2::new(0.0, 0.0), Point2::new(1.0, 0.0), Fold::Valley);
        let cp = b.finish();
        let c = cp.creases_labeled("x").next().unwrap();
        assert!((c.to.x - 3.0).abs() < 1e-12);
        assert_eq!(cp.count_fold(Fold::Border), 4);
    }

    #[test]
    fn identities_evaluate() {
        let frame = build_frame(&GadgetSpec::cube()).unwrap();
        let mut b = PatternBuilder::new("test", &frame);
        b.identity("ABP", vec![(1.0, ang("B_L", "A", "P"))], PI / 4.0);
        b.identity_gt("AC long", vec![(1.0, dist("A", "C"))], 1.0);
        let cp = b.finish();
        let checks = cp.assert_identities().unwrap();
        assert!(checks.iter().all(|c| c.holds()));
    }

    #[test]
    fn flip_reverses_folds() {
        let cp = star(&[0.0, 90.0, 180.0, 270.0]);
        let f = cp.flipped();
        assert_eq!(f.count_fold(Fold::Valley), cp.count_fold(Fold::Mountain));
        assert!((f.point("B_L").unwrap().x + cp.point("B_L").unwrap().x).abs() < 1e-15);
    }
}
