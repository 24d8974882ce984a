//! Gadget parameters, admissibility, and the prescribed pleat frame.
//!
//! Canonical coordinates: A at the origin, AC along +x, B_L at polar angle
//! +γ_L and B_R at −γ_R. Each outgoing pleat turns away from the gap by δ_σ,
//! so ℓ_L is A→B_L rotated counterclockwise and ℓ_R clockwise.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GadgetError, Result};
use crate::geometry::{intersect_lines, Angle, Line2, Point2, Ray2, EPS_ANG};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::L, Side::R];

    /// +1 for L (counterclockwise is outward), −1 for R.
    pub fn sign(self) -> f64 {
        match self {
            Side::L => 1.0,
            Side::R => -1.0,
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Side::L => "L",
            Side::R => "R",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Side {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.trim() {
            "L" | "l" => Ok(Side::L),
            "R" | "r" => Ok(Side::R),
            other => Err(format!("side must be L or R, got {other:?}")),
        }
    }
}

/// The five defining angles and the ridge length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GadgetSpec {
    pub alpha: Angle,
    pub beta_l: Angle,
    pub beta_r: Angle,
    pub delta_l: Angle,
    pub delta_r: Angle,
    pub ab_len: f64,
}

impl GadgetSpec {
    pub fn new(alpha: Angle, beta_l: Angle, beta_r: Angle) -> Self {
        GadgetSpec {
            alpha,
            beta_l,
            beta_r,
            delta_l: Angle::ZERO,
            delta_r: Angle::ZERO,
            ab_len: 1.0,
        }
    }

    pub fn from_degrees(alpha: f64, beta_l: f64, beta_r: f64, delta_l: f64, delta_r: f64) -> Self {
        GadgetSpec {
            alpha: Angle::from_deg(alpha),
            beta_l: Angle::from_deg(beta_l),
            beta_r: Angle::from_deg(beta_r),
            delta_l: Angle::from_deg(delta_l),
            delta_r: Angle::from_deg(delta_r),
            ab_len: 1.0,
        }
    }

    /// Right-angled corner: α = β_L = β_R = 90°.
    pub fn cube() -> Self {
        GadgetSpec::from_degrees(90.0, 90.0, 90.0, 0.0, 0.0)
    }

    pub fn with_deltas(mut self, delta_l: Angle, delta_r: Angle) -> Self {
        self.delta_l = delta_l;
        self.delta_r = delta_r;
        self
    }

    pub fn with_ab_len(mut self, ab_len: f64) -> Self {
        self.ab_len = ab_len;
        self
    }

    pub fn beta(&self, side: Side) -> Angle {
        match side {
            Side::L => self.beta_l,
            Side::R => self.beta_r,
        }
    }

    pub fn delta(&self, side: Side) -> Angle {
        match side {
            Side::L => self.delta_l,
            Side::R => self.delta_r,
        }
    }

    pub fn delta_sum(&self) -> Angle {
        self.delta_l + self.delta_r
    }

    /// γ = 2π − α − β_L − β_R.
    pub fn gamma(&self) -> Angle {
        Angle::from_rad(2.0 * PI) - self.alpha - self.beta_l - self.beta_r
    }

    /// The same gadget with L and R exchanged.
    pub fn mirrored(&self) -> Self {
        GadgetSpec {
            alpha: self.alpha,
            beta_l: self.beta_r,
            beta_r: self.beta_l,
            delta_l: self.delta_r,
            delta_r: self.delta_l,
            ab_len: self.ab_len,
        }
    }

    pub fn has_zero_deltas(&self) -> bool {
        self.delta_l.rad() == 0.0 && self.delta_r.rad() == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Domain,
    I,
    II,
    IIIa,
    IIIb,
    IIIc,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::Domain => "(domain)",
            Condition::I => "(i)",
            Condition::II => "(ii)",
            Condition::IIIa => "(iii.a)",
            Condition::IIIb => "(iii.b)",
            Condition::IIIc => "(iii.c)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// α = β_L + β_R: the extrusion is flat.
    pub flat: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }

    pub fn into_result(self) -> Result<ValidationReport> {
        if self.is_valid() {
            Ok(self)
        } else {
            Err(GadgetError::Invalid(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "all conditions hold{}", if self.flat { " (flat case)" } else { "" });
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "condition {} violated: {}", v.condition.label(), v.detail)?;
        }
        Ok(())
    }
}

/// Checks conditions (i), (ii), (iii.a)–(iii.c) and flags the flat boundary.
pub fn validate(spec: &GadgetSpec) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut fail = |condition: Condition, detail: String| report.violations.push(Violation { condition, detail });
    let (a, bl, br) = (spec.alpha.rad(), spec.beta_l.rad(), spec.beta_r.rad());
    let (dl, dr) = (spec.delta_l.rad(), spec.delta_r.rad());
    let all = [a, bl, br, dl, dr, spec.ab_len];
    if all.iter().any(|v| !v.is_finite()) {
        fail(Condition::Domain, "non-finite parameter".into());
        return report;
    }
    if spec.ab_len <= 0.0 {
        fail(Condition::Domain, format!("|AB| = {} must be positive", spec.ab_len));
    }
    for (name, v) in [("α", a), ("β_L", bl), ("β_R", br)] {
        if !(v > 0.0 && v < PI) {
            fail(Condition::Domain, format!("{name} = {:.6}° must lie in (0°, 180°)", v.to_degrees()));
        }
    }
    let flat = (a - (bl + br)).abs() < EPS_ANG;
    if !flat && a >= bl + br {
        fail(Condition::I, format!("α < β_L + β_R fails ({:.6}° ≥ {:.6}°)", a.to_degrees(), (bl + br).to_degrees()));
    }
    if bl >= a + br {
        fail(Condition::I, "β_L < α + β_R fails".into());
    }
    if br >= a + bl {
        fail(Condition::I, "β_R < α + β_L fails".into());
    }
    let sum = a + bl + br;
    if sum >= 2.0 * PI {
        fail(Condition::II, format!("α + β_L + β_R = {:.6}° is not < 360°", sum.to_degrees()));
    }
    for (name, d, b) in [("δ_L", dl, bl), ("δ_R", dr, br)] {
        if d < 0.0 {
            fail(Condition::IIIa, format!("{name} = {:.6}° is negative", d.to_degrees()));
        }
        if d >= b {
            fail(Condition::IIIb, format!("{name} < β fails"));
        }
        if d >= PI / 2.0 {
            fail(Condition::IIIb, format!("{name} < 90° fails"));
        }
    }
    let gamma = 2.0 * PI - sum;
    if gamma + dl + dr >= PI {
        fail(
            Condition::IIIc,
            format!("γ + δ_L + δ_R = {:.6}° is not < 180°", (gamma + dl + dr).to_degrees()),
        );
    }
    report.flat = flat;
    report
}

/// Angles derived from a valid gadget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivedAngles {
    pub gamma: Angle,
    pub gamma_l: Angle,
    pub gamma_r: Angle,
    /// |AC| / |AB|.
    pub r: f64,
    /// ω = γ_L − γ/2.
    pub omega: Angle,
    pub beta_plus: Angle,
    pub beta_minus: Angle,
    pub beta_plus_prime: Angle,
}

impl DerivedAngles {
    pub fn gamma_side(&self, side: Side) -> Angle {
        match side {
            Side::L => self.gamma_l,
            Side::R => self.gamma_r,
        }
    }
}

/// tan γ_σ = (1 − cos γ + sin γ tan δ_σ′) / (sin γ + cos γ tan δ_σ′ + tan δ_σ).
pub fn gamma_split(gamma: Angle, delta_own: Angle, delta_other: Angle) -> Angle {
    let (g, t_own, t_other) = (gamma.rad(), delta_own.tan(), delta_other.tan());
    let num = 1.0 - g.cos() + g.sin() * t_other;
    let den = g.sin() + g.cos() * t_other + t_own;
    Angle::from_rad(num.atan2(den))
}

/// r from one side: 1 / (cos γ_σ − sin γ_σ tan δ_σ).
pub fn ratio_from_side(gamma_side: Angle, delta_side: Angle) -> f64 {
    1.0 / (gamma_side.cos() - gamma_side.sin() * delta_side.tan())
}

/// r = 2 sin(γ/2) cos ω / (sin γ + ((1 + cos γ)/2 − cos²ω)(tan δ_L + tan δ_R)).
pub fn ratio_alt(gamma: Angle, omega: Angle, delta_l: Angle, delta_r: Angle) -> f64 {
    let g = gamma.rad();
    let c2 = omega.cos() * omega.cos();
    2.0 * (g / 2.0).sin() * omega.cos() / (g.sin() + ((1.0 + g.cos()) / 2.0 - c2) * (delta_l.tan() + delta_r.tan()))
}

pub fn derive_angles(spec: &GadgetSpec) -> Result<DerivedAngles> {
    validate(spec).into_result()?;
    let gamma = spec.gamma();
    let gamma_l = gamma_split(gamma, spec.delta_l, spec.delta_r);
    let gamma_r = gamma_split(gamma, spec.delta_r, spec.delta_l);
    let r = ratio_from_side(gamma_l, spec.delta_l);
    let omega = gamma_l - gamma / 2.0;
    let r_other = ratio_from_side(gamma_r, spec.delta_r);
    let r_alt = ratio_alt(gamma, omega, spec.delta_l, spec.delta_r);
    if (r - r_other).abs() > 1e-8 * r || (r - r_alt).abs() > 1e-8 * r {
        return Err(GadgetError::Inconsistent(format!("ratio forms disagree: {r} / {r_other} / {r_alt}")));
    }
    let beta_plus = spec.beta_l + spec.beta_r;
    Ok(DerivedAngles {
        gamma,
        gamma_l,
        gamma_r,
        r,
        omega,
        beta_plus,
        beta_minus: spec.beta_r - spec.beta_l,
        beta_plus_prime: beta_plus + gamma / 2.0,
    })
}

/// The planar skeleton every construction starts from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PleatFrame {
    pub spec: GadgetSpec,
    pub a: Point2,
    pub b_l: Point2,
    pub b_r: Point2,
    pub c: Point2,
    pub p: Point2,
    pub j_l: Ray2,
    pub j_r: Ray2,
    pub k_l: Ray2,
    pub k_r: Ray2,
    pub ell_l: Ray2,
    pub ell_r: Ray2,
    /// Perpendicular bisectors of B_σC, starting at P.
    pub m_l: Ray2,
    pub m_r: Ray2,
    pub ell_prime_l: Ray2,
    pub ell_prime_r: Ray2,
    pub derived: DerivedAngles,
    pub flat: bool,
}

impl PleatFrame {
    pub fn b(&self, side: Side) -> Point2 {
        match side {
            Side::L => self.b_l,
            Side::R => self.b_r,
        }
    }

    pub fn j(&self, side: Side) -> Ray2 {
        match side {
            Side::L => self.j_l,
            Side::R => self.j_r,
        }
    }

    pub fn k(&self, side: Side) -> Ray2 {
        match side {
            Side::L => self.k_l,
            Side::R => self.k_r,
        }
    }

    pub fn ell(&self, side: Side) -> Ray2 {
        match side {
            Side::L => self.ell_l,
            Side::R => self.ell_r,
        }
    }

    pub fn m(&self, side: Side) -> Ray2 {
        match side {
            Side::L => self.m_l,
            Side::R => self.m_r,
        }
    }

    pub fn ell_prime(&self, side: Side) -> Ray2 {
        match side {
            Side::L => self.ell_prime_l,
            Side::R => self.ell_prime_r,
        }
    }

    /// Line of m_σ (the full perpendicular bisector of B_σC).
    pub fn m_line(&self, side: Side) -> Line2 {
        self.m(side).line()
    }

    /// Direction obtained by turning the leg B_σ→A by `a` away from k_σ,
    /// i.e. into the region containing C.
    pub fn turn_from_ba(&self, side: Side, a: Angle) -> Point2 {
        (self.a - self.b(side)).rotated(a * side.sign())
    }

    pub fn ab(&self) -> f64 {
        self.spec.ab_len
    }
}

pub fn build_frame(spec: &GadgetSpec) -> Result<PleatFrame> {
    let report = validate(spec).into_result()?;
    let derived = derive_angles(spec)?;
    let ab = spec.ab_len;
    let a = Point2::ORIGIN;
    let place = |side: Side| {
        let g = derived.gamma_side(side);
        let b = Point2::polar(g * side.sign()) * ab;
        let j_dir = Angle::from_rad(side.sign() * (g + spec.beta(side)).rad());
        let ell_dir = Angle::from_rad(side.sign() * (g + spec.delta(side)).rad());
        (b, j_dir, ell_dir)
    };
    let (b_l, jl, el) = place(Side::L);
    let (b_r, jr, er) = place(Side::R);
    let perp_l = Line2::new(b_l, Point2::polar(el).perp()).expect("unit");
    let perp_r = Line2::new(b_r, Point2::polar(er).perp()).expect("unit");
    let (c, _, _) = intersect_lines(&perp_l, &perp_r)
        .ok_or_else(|| GadgetError::Inconsistent("perpendiculars to the pleats are parallel".into()))?;
    if c.y.abs() > 1e-9 * ab || c.x <= 0.0 {
        return Err(GadgetError::Inconsistent(format!("C = ({}, {}) is off the +x axis", c.x, c.y)));
    }
    let c = Point2::new(c.x, 0.0);
    let mid_l = (b_l + c) / 2.0;
    let mid_r = (b_r + c) / 2.0;
    let ml = Line2::new(mid_l, Point2::polar(el)).expect("unit");
    let mr = Line2::new(mid_r, Point2::polar(er)).expect("unit");
    let (p, _, _) = intersect_lines(&ml, &mr)
        .ok_or_else(|| GadgetError::Inconsistent("pleat bisectors are parallel".into()))?;
    Ok(PleatFrame {
        spec: *spec,
        a,
        b_l,
        b_r,
        c,
        p,
        j_l: Ray2::at_angle(a, jl),
        j_r: Ray2::at_angle(a, jr),
        k_l: Ray2::at_angle(b_l, jl),
        k_r: Ray2::at_angle(b_r, jr),
        ell_l: Ray2::at_angle(b_l, el),
        ell_r: Ray2::at_angle(b_r, er),
        m_l: Ray2::at_angle(p, el),
        m_r: Ray2::at_angle(p, er),
        ell_prime_l: Ray2::at_angle(c, el),
        ell_prime_r: Ray2::at_angle(c, er),
        derived,
        flat: report.flat,
    })
}

/// Builds the frame after checking the construction's coverage: `flat_ok`
/// admits α = β_L + β_R, `turns_ok` admits nonzero δ_σ.
pub fn frame_for(spec: &GadgetSpec, construction: &str, flat_ok: bool, turns_ok: bool) -> Result<PleatFrame> {
    let report = validate(spec).into_result()?;
    if report.flat && !flat_ok {
        return Err(GadgetError::Unsupported(format!(
            "the {construction} construction does not cover the flat case α = β_L + β_R"
        )));
    }
    if !turns_ok && !spec.has_zero_deltas() {
        return Err(GadgetError::Unsupported(format!(
            "the {construction} construction requires δ_L = δ_R = 0"
        )));
    }
    build_frame(spec)
}

/// tan ρ_L = sin ψ_L / (r − cos ψ_L), for ψ_L in (−γ_R, γ_L).
pub fn rho_from_psi(psi_l: Angle, derived: &DerivedAngles) -> Result<Angle> {
    let psi = psi_l.rad();
    if !(psi > -derived.gamma_r.rad() && psi < derived.gamma_l.rad()) {
        return Err(GadgetError::Domain(format!(
            "ψ_L = {} outside ({}, {})",
            psi_l,
            -derived.gamma_r,
            derived.gamma_l
        )));
    }
    Ok(Angle::from_rad(psi.sin().atan2(derived.r - psi.cos())))
}

/// ψ_L = asin(r sin ρ_L) − ρ_L.
pub fn psi_from_rho(rho_l: Angle, r: f64) -> Result<Angle> {
    let s = r * rho_l.sin();
    if !(-1.0..=1.0).contains(&s) {
        return Err(GadgetError::Domain(format!("r·sin ρ_L = {s} outside [−1, 1]")));
    }
    Ok(Angle::from_rad(s.asin()) - rho_l)
}
