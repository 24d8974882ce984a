//! Negative gadgets swinging the supporting triangle toward side τ; one
//! pattern for every admissible ∠AB_τE_τ.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GadgetError, Result};
use crate::frame::{frame_for, GadgetSpec, PleatFrame, Side};
use crate::geometry::{angle_at, bisector_ray, intersect_lines, reflect_direction, Angle, Line2, Point2, EPS_ANG};
use crate::pattern::{ang, dist, nm, CreasePattern, Fold, PatternBuilder};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FirstParams {
    pub tau: Side,
    /// ∠AB_τE_τ.
    pub abe: Angle,
}

/// Interval with per-end closedness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbeRange {
    pub lo: Angle,
    pub lo_closed: bool,
    pub hi: Angle,
    pub hi_closed: bool,
}

impl AbeRange {
    pub fn contains(&self, a: Angle) -> bool {
        let (x, lo, hi) = (a.rad(), self.lo.rad(), self.hi.rad());
        let above = if self.lo_closed { x >= lo - EPS_ANG } else { x > lo + EPS_ANG };
        let below = if self.hi_closed { x <= hi + EPS_ANG } else { x < hi - EPS_ANG };
        above && below
    }

    pub fn is_empty(&self) -> bool {
        let w = self.hi.rad() - self.lo.rad();
        w < 0.0 || (w <= EPS_ANG && !(self.lo_closed && self.hi_closed))
    }

    /// Nearest member to `target`; an open end is approached to 1% of the width.
    pub fn clamp(&self, target: Angle) -> Angle {
        if self.contains(target) {
            return target;
        }
        let inset = 0.01 * (self.hi.rad() - self.lo.rad());
        if target.rad() < self.lo.rad() {
            if self.lo_closed { self.lo } else { Angle::from_rad(self.lo.rad() + inset) }
        } else if self.hi_closed {
            self.hi
        } else {
            Angle::from_rad(self.hi.rad() - inset)
        }
    }
}

impl std::fmt::Display for AbeRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (l, r) = (if self.lo_closed { '[' } else { '(' }, if self.hi_closed { ']' } else { ')' });
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

/// The four thresholds of the assignment tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbeMarks {
    /// π − β_τ: G_τ = E_τ.
    pub m1: Angle,
    /// π − β_τ + δ_τ: below it Q_τ, R_τ appear.
    pub m2: Angle,
    /// β_τ′ + γ + δ_τ: above it Q_τ′, R_τ′ appear.
    pub big_m1: Angle,
    /// π − β_τ + γ/2 + δ_L + δ_R: G_τ′ = E_τ′.
    pub big_m2: Angle,
}

pub fn abe_marks(spec: &GadgetSpec, tau: Side) -> AbeMarks {
    let pi = Angle::STRAIGHT;
    let (g, dp) = (spec.gamma(), spec.delta_sum());
    let m1 = pi - spec.beta(tau);
    AbeMarks {
        m1,
        m2: m1 + spec.delta(tau),
        big_m1: spec.beta(tau.other()) + g + spec.delta(tau),
        big_m2: m1 + g / 2.0 + dp,
    }
}

pub fn admissible_range(spec: &GadgetSpec, tau: Side, practical: bool) -> AbeRange {
    let mk = abe_marks(spec, tau);
    let floor = spec.gamma() + spec.delta_sum();
    let (lo0, hi0) = if practical {
        (mk.m2, if mk.big_m2 < mk.big_m1 { mk.big_m2 } else { mk.big_m1 })
    } else {
        (mk.m1, mk.big_m2)
    };
    let (lo, lo_closed) = if lo0.rad() > floor.rad() + EPS_ANG { (lo0, true) } else { (floor, false) };
    let (hi, hi_closed) = if hi0.rad() < PI - EPS_ANG { (hi0, true) } else { (Angle::STRAIGHT, false) };
    AbeRange { lo, lo_closed, hi, hi_closed }
}

/// (π + γ + δ_L + δ_R)/2 brought into the practical range.
pub fn default_abe(spec: &GadgetSpec, tau: Side) -> Angle {
    let target = (Angle::STRAIGHT + spec.gamma() + spec.delta_sum()) / 2.0;
    admissible_range(spec, tau, true).clamp(target)
}

impl FirstParams {
    pub fn with_default_abe(spec: &GadgetSpec, tau: Side) -> Self {
        FirstParams { tau, abe: default_abe(spec, tau) }
    }
}

/// Extra edge creases on one side, made with k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeFix {
    pub q: Point2,
    pub r: Point2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstPoints {
    pub phi_tau: Angle,
    pub d: Point2,
    pub e: [Point2; 2],
    pub g: [Point2; 2],
    pub p: [Point2; 2],
    pub fix: [Option<EdgeFix>; 2],
    pub g_is_e: bool,
    pub g_prime_is_e_prime: bool,
}

fn no_hit() -> GadgetError {
    GadgetError::Inconsistent("construction lines are parallel".into())
}

fn meet(a: &Line2, b: &Line2) -> Result<Point2> {
    Ok(intersect_lines(a, b).ok_or_else(no_hit)?.0)
}

/// Q on m by reflecting k across ℓ at B, R on m by reflecting the Q ray across BP.
fn edge_fix(f: &PleatFrame, s: Side, p: Point2) -> Result<EdgeFix> {
    let bs = f.b(s);
    let q_dir = reflect_direction(f.k(s).dir, f.ell(s).dir);
    let q = meet(&Line2::new(bs, q_dir).ok_or_else(no_hit)?, &f.m_line(s))?;
    let bp = (p - bs).normalized().ok_or_else(no_hit)?;
    let r_dir = reflect_direction(q_dir, bp);
    let r = meet(&Line2::new(bs, r_dir).ok_or_else(no_hit)?, &f.m_line(s))?;
    Ok(EdgeFix { q, r })
}

pub fn first_points(f: &PleatFrame, params: FirstParams) -> Result<FirstPoints> {
    let spec = &f.spec;
    let (t, tp) = (params.tau, params.tau.other());
    let (it, itp) = (t as usize, tp as usize);
    let mk = abe_marks(spec, t);
    let bt = f.b(t);
    let mut e = [Point2::ORIGIN; 2];
    let mut g = [Point2::ORIGIN; 2];
    let mut p = [Point2::ORIGIN; 2];

    e[it] = meet(&Line2::new(bt, f.turn_from_ba(t, params.abe)).ok_or_else(no_hit)?, &f.m_line(t))?;
    let phi_tau = angle_at(f.a, bt, e[it])? * 2.0;
    let d = Point2::polar(Angle::from_rad(t.sign() * (f.derived.gamma_side(t) - phi_tau).rad())) * f.ab();

    let ae_t = Line2::through(f.a, e[it])?;
    g[it] = meet(&Line2::new(bt, f.turn_from_ba(t, Angle::STRAIGHT - spec.beta(t))).ok_or_else(no_hit)?, &ae_t)?;
    let g_is_e = params.abe.approx_eq(mk.m1);
    if g_is_e {
        g[it] = e[it];
    }

    let bis = bisector_ray(f.a, d, f.b(tp))?;
    e[itp] = meet(&bis.line(), &f.m_line(tp))?;
    let g_prime_is_e_prime = params.abe.approx_eq(mk.big_m2);
    g[itp] = if g_prime_is_e_prime {
        e[itp]
    } else {
        meet(&Line2::through(g[it], d)?, &Line2::through(f.a, e[itp])?)?
    };

    p[it] = if spec.delta(t).rad() == 0.0 {
        e[it]
    } else {
        meet(&Line2::new(bt, f.turn_from_ba(t, params.abe + spec.delta(t))).ok_or_else(no_hit)?, &f.m_line(t))?
    };
    p[itp] = meet(&Line2::through(p[it], f.c)?, &f.m_line(tp))?;

    let mut fix = [None, None];
    if params.abe.rad() < mk.m2.rad() - EPS_ANG {
        fix[it] = Some(edge_fix(f, t, p[it])?);
    }
    if params.abe.rad() > mk.big_m1.rad() + EPS_ANG {
        fix[itp] = Some(edge_fix(f, tp, p[itp])?);
    }
    Ok(FirstPoints { phi_tau, d, e, g, p, fix, g_is_e, g_prime_is_e_prime })
}

/// Closed forms of ‖DG_τ‖ and ‖DG_τ′‖ from φ_τ.
pub fn interference_closed_form(spec: &GadgetSpec, tau: Side, phi_tau: Angle) -> (f64, f64) {
    let b = spec.beta(tau);
    let phi_p = spec.gamma() - phi_tau;
    let near = spec.ab_len / (b.sin() / (phi_tau / 2.0).tan() - b.cos());
    let far = spec.ab_len / (b.sin() / (phi_p / 2.0).tan() + b.cos());
    (near, far)
}

/// (‖DG_τ‖ on side τ, ‖DG_τ′‖ on side τ′).
pub fn first_interference_lengths(spec: &GadgetSpec, params: FirstParams) -> Result<(f64, f64)> {
    let f = checked_frame(spec, params)?;
    let pts = first_points(&f, params)?;
    Ok(interference_closed_form(spec, params.tau, pts.phi_tau))
}

fn checked_frame(spec: &GadgetSpec, params: FirstParams) -> Result<PleatFrame> {
    let f = frame_for(spec, "first", true, true)?;
    let range = admissible_range(spec, params.tau, false);
    if !range.contains(params.abe) {
        return Err(GadgetError::Domain(format!(
            "∠AB_{}E_{} = {} outside the admissible range {range}",
            params.tau, params.tau, params.abe
        )));
    }
    Ok(f)
}

pub fn build_first(spec: &GadgetSpec, params: FirstParams) -> Result<CreasePattern> {
    let f = checked_frame(spec, params)?;
    let pts = first_points(&f, params)?;
    let (t, tp) = (params.tau, params.tau.other());
    let (it, itp) = (t as usize, tp as usize);
    let mk = abe_marks(spec, t);
    let (g, dp) = (spec.gamma(), spec.delta_sum());
    let abe = params.abe;
    let turned = spec.delta(t).rad() > 0.0;

    let mut b = PatternBuilder::new("first", &f);
    b.note(format!("tau = {t}"));
    b.value("tau_is_L", if t == Side::L { 1.0 } else { 0.0 });
    b.angle_value("abe", abe);
    b.angle_value("phi_tau", pts.phi_tau);
    b.angle_value("m1", mk.m1);
    b.angle_value("m2", mk.m2);
    b.angle_value("M1", mk.big_m1);
    b.angle_value("M2", mk.big_m2);
    if f.flat {
        b.branch("flat", "α = β_L + β_R", spec.alpha.rad(), (spec.beta_l + spec.beta_r).rad());
    }
    if pts.g_is_e {
        b.branch("G_τ = E_τ", "∠AB_τE_τ = π − β_τ", abe.rad(), mk.m1.rad());
    }
    if pts.g_prime_is_e_prime {
        b.branch("G_τ′ = E_τ′", "∠AB_τE_τ = π − β_τ + γ/2 + δ_L + δ_R", abe.rad(), mk.big_m2.rad());
    }
    if pts.fix[it].is_some() {
        b.branch("Q_τ, R_τ", "∠AB_τE_τ < π − β_τ + δ_τ", mk.m2.rad(), abe.rad());
    }
    if pts.fix[itp].is_some() {
        b.branch("Q_τ′, R_τ′", "∠AB_τE_τ > β_τ′ + γ + δ_τ", abe.rad(), mk.big_m1.rad());
    }

    b.point("D", pts.d);
    for s in Side::BOTH {
        let i = s as usize;
        b.point(&nm("E", s), pts.e[i]);
        b.point(&nm("G", s), pts.g[i]);
        b.point(&nm("P", s), pts.p[i]);
        if let Some(fx) = pts.fix[i] {
            b.point(&nm("Q", s), fx.q);
            b.point(&nm("R", s), fx.r);
        }
    }

    // Common creases.
    for s in Side::BOTH {
        let i = s as usize;
        let tg = s.tag();
        b.ray(&nm("j", s), f.a, f.j(s).dir, Fold::Mountain);
        b.ray(&nm("m", s), pts.e[i], f.m(s).dir, Fold::Mountain);
        b.seg_pts(&format!("AE_{tg}"), f.a, pts.e[i], Fold::Mountain);
        b.ray(&nm("k", s), f.b(s), f.k(s).dir, Fold::Valley);
        b.ray(&nm("ell", s), f.b(s), f.ell(s).dir, Fold::Valley);
        b.seg_pts(&format!("AB_{tg}"), f.a, f.b(s), Fold::Valley);
    }
    b.seg_pts("E_LE_R", pts.e[0], pts.e[1], Fold::Mountain);
    b.seg_pts("G_LG_R", pts.g[0], pts.g[1], Fold::Valley);
    b.seg_pts("P_LP_R", pts.p[0], pts.p[1], Fold::Valley);

    let (bt, btp) = (nm("B", t), nm("B", tp));
    let lbl = |a: &str, z: &str| format!("{a}{z}");
    // Side τ.
    let (gt, et, pt, qt, rt) = (nm("G", t), nm("E", t), nm("P", t), nm("Q", t), nm("R", t));
    if !turned {
        b.seg(&lbl(&bt, &gt), &bt, &gt, Fold::Mountain);
    } else {
        if !pts.g_is_e {
            b.seg(&lbl(&bt, &gt), &bt, &gt, Fold::Mountain);
        }
        b.seg(&lbl(&bt, &pt), &bt, &pt, Fold::Mountain);
        b.seg(&lbl(&bt, &et), &bt, &et, Fold::Valley);
        if pts.fix[it].is_some() {
            b.seg(&lbl(&bt, &qt), &bt, &qt, Fold::Mountain);
            b.seg(&format!("C{qt}"), "C", &qt, Fold::Valley);
            b.seg(&format!("C{rt}"), "C", &rt, Fold::Mountain);
            if !pts.g_is_e {
                b.seg(&lbl(&bt, &rt), &bt, &rt, Fold::Valley);
            }
        }
    }
    // Side τ′.
    let (gp, ep, pp, qp, rp) = (nm("G", tp), nm("E", tp), nm("P", tp), nm("Q", tp), nm("R", tp));
    b.seg(&lbl(&btp, &pp), &btp, &pp, Fold::Mountain);
    if !(f.flat && pts.g_prime_is_e_prime) {
        b.seg(&lbl(&btp, &ep), &btp, &ep, Fold::Valley);
    }
    if !pts.g_prime_is_e_prime {
        b.seg(&lbl(&btp, &gp), &btp, &gp, Fold::Mountain);
    }
    if pts.fix[itp].is_some() {
        b.seg(&lbl(&btp, &qp), &btp, &qp, Fold::Mountain);
        b.seg(&format!("C{rp}"), "C", &rp, Fold::Mountain);
        b.seg(&lbl(&btp, &rp), &btp, &rp, Fold::Valley);
        b.seg(&format!("C{qp}"), "C", &qp, Fold::Valley);
    }

    // Interference.
    let (near, far) = interference_closed_form(spec, t, pts.phi_tau);
    b.interference(&format!("DG_{t}"), near);
    b.interference(&format!("DG_{tp}"), far);
    b.identity(&format!("|D{gt}| = |{bt}{gt}|"), vec![(1.0, dist("D", &gt)), (-1.0, dist(&bt, &gt))], 0.0);
    b.identity(&format!("|D{gt}| closed form"), vec![(1.0, dist("D", &gt))], near);
    b.identity(&format!("|D{gp}| = |{btp}{gp}|"), vec![(1.0, dist("D", &gp)), (-1.0, dist(&btp, &gp))], 0.0);
    b.identity(&format!("|D{gp}| closed form"), vec![(1.0, dist("D", &gp))], far);

    // Angle relations.
    let (lt, lp, kp) = (nm("@ell", t), nm("@ell", tp), nm("@k", tp));
    b.identity(&format!("∠A{bt}{et} = chosen"), vec![(1.0, ang(&bt, "A", &et))], abe.rad());
    b.identity(
        &format!("|AD| = |AB|, ∠{bt}AD = 2∠{bt}A{et}"),
        vec![(1.0, ang("A", &bt, "D")), (-2.0, ang("A", &bt, &et))],
        0.0,
    );
    if !pts.g_is_e {
        b.identity(
            &format!("∠A{bt}{gt} = π − β_τ"),
            vec![(1.0, ang(&bt, "A", &gt))],
            PI - spec.beta(t).rad(),
        );
    }
    b.identity(
        &format!("∠{et}{bt}{gt} + ∠{ep}{btp}{gp} = γ/2 + δ_L + δ_R"),
        vec![(1.0, ang(&bt, &et, &gt)), (1.0, ang(&btp, &ep, &gp))],
        (g / 2.0 + dp).rad(),
    );
    b.identity(&format!("∠{ep}{btp}{pp} = γ/2 + δ_τ′"), vec![(1.0, ang(&btp, &ep, &pp))], (g / 2.0 + spec.delta(tp)).rad());
    if turned {
        b.identity(&format!("∠{et}{pt}{pp} = π − ∠ABE"), vec![(1.0, ang(&pt, &et, &pp))], PI - abe.rad());
    }
    b.identity(&format!("∠{ep}{pp}{pt} = ∠ABE − γ − δ_L − δ_R"), vec![(1.0, ang(&pp, &ep, &pt))], (abe - g - dp).rad());
    b.identity(
        &format!("∠{ep}{btp}{gp} = π − β_τ + γ/2 + δ_L + δ_R − ∠ABE"),
        vec![(1.0, ang(&btp, &ep, &gp))],
        (mk.big_m2 - abe).rad(),
    );
    b.identity(
        &format!("∠A{btp}{ep} = π + γ/2 + δ_L + δ_R − ∠ABE"),
        vec![(1.0, ang(&btp, "A", &ep))],
        (Angle::STRAIGHT + g / 2.0 + dp - abe).rad(),
    );
    b.identity(&format!("∠{pp}{btp}ℓ = ∠ABE − γ − δ_L − δ_R"), vec![(1.0, ang(&btp, &pp, &lp))], (abe - g - dp).rad());
    if !pts.g_prime_is_e_prime {
        b.identity(&format!("∠AD{gp} = β_τ"), vec![(1.0, ang("D", "A", &gp))], spec.beta(t).rad());
        b.identity(&format!("∠A{btp}{gp} = β_τ"), vec![(1.0, ang(&btp, "A", &gp))], spec.beta(t).rad());
    }
    b.identity(
        &format!("∠k{btp}{gp} = π − α"),
        vec![
            (1.0, ang(&btp, &kp, &lp)),
            (-1.0, ang(&btp, &pp, &lp)),
            (1.0, ang(&btp, &ep, &pp)),
            (-1.0, ang(&btp, &ep, &gp)),
        ],
        PI - spec.alpha.rad(),
    );
    if pts.fix[it].is_some() {
        b.identity_gt(
            &format!("∠{pt}{bt}ℓ > ∠k{bt}ℓ"),
            vec![(1.0, ang(&bt, &pt, &lt)), (-1.0, ang(&bt, &nm("@k", t), &lt))],
            0.0,
        );
        b.identity(
            &format!("∠{qt}{bt}ℓ = β_τ − δ_τ"),
            vec![(1.0, ang(&bt, &qt, &lt))],
            (spec.beta(t) - spec.delta(t)).rad(),
        );
        b.identity(
            &format!("∠{rt}{bt}{pt} = ∠{qt}{bt}{pt}"),
            vec![(1.0, ang(&bt, &rt, &pt)), (-1.0, ang(&bt, &qt, &pt))],
            0.0,
        );
    }
    if pts.fix[itp].is_some() {
        b.identity_gt(
            &format!("∠{pp}{btp}ℓ > ∠k{btp}ℓ"),
            vec![(1.0, ang(&btp, &pp, &lp)), (-1.0, ang(&btp, &kp, &lp))],
            0.0,
        );
        b.identity_gt(
            &format!("∠{ep}{btp}{pp} > ∠{pp}{btp}ℓ − ∠k{btp}ℓ"),
            vec![(1.0, ang(&btp, &ep, &pp)), (-1.0, ang(&btp, &pp, &lp)), (1.0, ang(&btp, &kp, &lp))],
            0.0,
        );
        b.identity(
            &format!("∠{rp}{btp}{pp} = ∠{qp}{btp}{pp}"),
            vec![(1.0, ang(&btp, &rp, &pp)), (-1.0, ang(&btp, &qp, &pp))],
            0.0,
        );
    }

    // Foldability. Creases made with k are left out at B_τ; at E_τ they only
    // arrive when G_τ = E_τ, and then they belong to the vertex.
    let k_made = [nm("k", t), lbl(&bt, &gt), lbl(&bt, &qt), lbl(&bt, &rt)];
    let k_made: Vec<&str> = k_made.iter().map(String::as_str).collect();
    b.flat(&bt, &k_made);
    b.flat(&et, &[]);
    if turned {
        b.flat(&pt, &[]);
    }
    if !pts.g_is_e {
        b.flat(&gt, &[]);
    }
    if !pts.g_prime_is_e_prime {
        b.flat(&gp, &[]);
        b.flat(&ep, &[]);
    } else if f.flat {
        b.flat(&ep, &[]);
    }
    b.flat(&pp, &[]);
    for s in Side::BOTH {
        if pts.fix[s as usize].is_some() {
            b.flat(&nm("Q", s), &[]);
            if !(s == t && pts.g_is_e) {
                b.flat(&nm("R", s), &[]);
            }
        }
    }
    if pts.fix.iter().any(Option::is_some) {
        b.flat("C", &[]);
    }
    if f.flat && pts.fix[itp].is_none() {
        b.flat(&btp, &[]);
    }
    Ok(b.finish())
}
