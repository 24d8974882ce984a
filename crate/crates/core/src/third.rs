//! The unique negative gadget whose supporting flap AG_LG_R lies on the back.
//!
//! D sits on the arc of radius |AB| at polar angle ψ_L. ψ_L solves
//! (V₁ − rV₂) tan ρ_L = W with tan ρ_L = sin ψ_L / (r − cos ψ_L).

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{GadgetError, Result};
use crate::frame::{build_frame, derive_angles, frame_for, psi_from_rho, DerivedAngles, GadgetSpec, PleatFrame, Side};
use crate::geometry::{bisector_ray, intersect_lines, Angle, Line2, Point2, EPS_LEN};
use crate::pattern::{ang, dist, nm, CreasePattern, Fold, PatternBuilder};

pub const BISECTION_TOL: f64 = 1e-13;
pub const BISECTION_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThirdSolution {
    pub rho_l: Angle,
    pub psi_l: Angle,
    pub v1: f64,
    pub v2: f64,
    pub w: f64,
    pub r: f64,
    pub omega: Angle,
    /// tan ω.
    pub t: f64,
    /// The closed form was ill-conditioned and bisection supplied ρ_L.
    pub used_bisection: bool,
}

/// V₁, V₂, W from their defining sums.
pub fn vw(spec: &GadgetSpec, d: &DerivedAngles) -> (f64, f64, f64) {
    let (bl, br) = (spec.beta_l, spec.beta_r);
    let v1 = (bl + d.gamma_l).sin() * br.cos() + (br + d.gamma_r).sin() * bl.cos();
    let v2 = (bl + br + d.gamma).sin();
    let w = (bl + d.gamma_l).cos() * br.cos() - (br + d.gamma_r).cos() * bl.cos();
    (v1, v2, w)
}

/// V₁, V₂, W through β_±, β′_+ and ω.
pub fn vw_alt(d: &DerivedAngles) -> (f64, f64, f64) {
    let sg = (d.gamma / 2.0).sin();
    let lead = d.beta_plus_prime.sin() + d.beta_minus.cos() * sg;
    let (co, so) = (d.omega.cos(), d.omega.sin());
    let v1 = lead * co + d.beta_minus.sin() * sg * so;
    let v2 = (d.beta_plus_prime + d.gamma / 2.0).sin();
    let w = d.beta_minus.sin() * sg * co - lead * so;
    (v1, v2, w)
}

/// t = tan ω = (tan δ_R − tan δ_L) / (2 + (tan δ_L + tan δ_R)/tan(γ/2)).
pub fn tan_omega(spec: &GadgetSpec) -> f64 {
    let (tl, tr) = (spec.delta_l.tan(), spec.delta_r.tan());
    let g2 = (spec.gamma() / 2.0).tan();
    (tr - tl) / (2.0 + (tl + tr) / g2)
}

/// tan ρ_L written in t = tan ω without arc tangents.
pub fn tan_rho_from_t(spec: &GadgetSpec, d: &DerivedAngles, t: f64) -> f64 {
    let g = d.gamma.rad();
    let sg = (g / 2.0).sin();
    let lead = d.beta_plus_prime.sin() / sg + d.beta_minus.cos();
    let num = d.beta_minus.sin() - t * lead;
    let tsum = spec.delta_l.tan() + spec.delta_r.tan();
    let den = lead + t * d.beta_minus.sin()
        - 2.0 * (d.beta_plus_prime + d.gamma / 2.0).sin() / (g.sin() + ((1.0 + g.cos()) / 2.0 - 1.0 / (1.0 + t * t)) * tsum);
    num / den
}

/// With δ_L = δ_R = 0: tan ρ_L = sin β_− / (cos β_− − cos β′_+ / cos(γ/2)).
pub fn tan_rho_zero_turn(d: &DerivedAngles) -> f64 {
    d.beta_minus.sin() / (d.beta_minus.cos() - d.beta_plus_prime.cos() / (d.gamma / 2.0).cos())
}

/// Open interval (γ_R + δ_R − π/2, π/2 − γ_L − δ_L) for ρ_L.
pub fn rho_interval(spec: &GadgetSpec, d: &DerivedAngles) -> (f64, f64) {
    (
        (d.gamma_r + spec.delta_r).rad() - PI / 2.0,
        PI / 2.0 - (d.gamma_l + spec.delta_l).rad(),
    )
}

/// Φ(ρ_L) = (V₁ − rV₂) tan ρ_L − W on the closed interval.
pub fn phi(rho_l: Angle, spec: &GadgetSpec) -> Result<f64> {
    let d = derive_angles(spec)?;
    let (lo, hi) = rho_interval(spec, &d);
    let x = rho_l.rad();
    if !(x >= lo && x <= hi) {
        return Err(GadgetError::Domain(format!("ρ_L = {rho_l} outside [{lo}, {hi}] rad")));
    }
    let (v1, v2, w) = vw(spec, &d);
    Ok((v1 - d.r * v2) * x.tan() - w)
}

/// Closed forms of Φ at the upper and lower ends of the interval.
pub fn phi_endpoint_values(spec: &GadgetSpec) -> Result<(f64, f64)> {
    let d = derive_angles(spec)?;
    let sg = 2.0 * (d.gamma / 2.0).sin();
    let side = |g: Angle, b: Angle, dl: Angle, other_b: Angle| {
        sg / (g.sin() + g.cos() * dl.tan()) * (b.sin() - dl.tan() * b.cos()) * (other_b + d.gamma / 2.0).sin()
    };
    let upper = side(d.gamma_l, spec.beta_l, spec.delta_l, spec.beta_r);
    let lower = -side(d.gamma_r, spec.beta_r, spec.delta_r, spec.beta_l);
    Ok((upper, lower))
}

/// Root of Φ by bisection; also returns the iteration count.
pub fn bisect_rho(spec: &GadgetSpec) -> Result<(Angle, usize)> {
    let d = derive_angles(spec)?;
    let (mut lo, mut hi) = rho_interval(spec, &d);
    let (v1, v2, w) = vw(spec, &d);
    let f = |x: f64| (v1 - d.r * v2) * x.tan() - w;
    if f(lo) >= 0.0 || f(hi) <= 0.0 {
        return Err(GadgetError::Inconsistent("Φ does not change sign on the interval".into()));
    }
    let mut it = 0;
    while hi - lo > BISECTION_TOL && it < BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        it += 1;
    }
    Ok((Angle::from_rad(0.5 * (lo + hi)), it))
}

pub fn solve_third(spec: &GadgetSpec) -> Result<ThirdSolution> {
    let d = derive_angles(spec)?;
    // The β_±, ω forms avoid the cancellation the direct sums suffer as γ → 0.
    let (v1, v2, w) = vw_alt(&d);
    let den = v1 - d.r * v2;
    let (lo, hi) = rho_interval(spec, &d);
    let (rho, used_bisection) = if den.abs() < 1e-12 {
        (bisect_rho(spec)?.0, true)
    } else {
        (Angle::from_rad((w / den).atan()), false)
    };
    if !(rho.rad() > lo && rho.rad() < hi) {
        return Err(GadgetError::Inconsistent(format!(
            "ρ_L = {} rad escaped ({lo}, {hi})",
            rho.rad()
        )));
    }
    let psi = psi_from_rho(rho, d.r)?;
    Ok(ThirdSolution {
        rho_l: rho,
        psi_l: psi,
        v1,
        v2,
        w,
        r: d.r,
        omega: d.omega,
        t: d.omega.tan(),
        used_bisection,
    })
}

/// e(DA)·e(E_LE_R) − e(BA)·e(E_LE_R) from the explicit component forms,
/// dropping the third component of e(BA) since e(E_LE_R) has none.
pub fn dot_product_residual(spec: &GadgetSpec, sol: &ThirdSolution) -> Result<f64> {
    let d = derive_angles(spec)?;
    let (da, ee) = reference_unit_vectors(spec, &d, sol);
    let ba = ridge_unit_planar(spec);
    Ok(da.dot(ee) - ba.dot(ee))
}

/// e(DA) and e(E_LE_R) in the frame where k_R runs along +x.
pub fn reference_unit_vectors(spec: &GadgetSpec, d: &DerivedAngles, sol: &ThirdSolution) -> (Point2, Point2) {
    let alpha_r = PI - (spec.beta_r + d.gamma_r).rad();
    let da = Point2::new((alpha_r - sol.psi_l.rad()).cos(), (alpha_r - sol.psi_l.rad()).sin());
    let x = (spec.beta_r + d.gamma_r - sol.rho_l).rad();
    (da, Point2::new(x.sin(), x.cos()))
}

/// Planar part of e(BA): (−cos β_R, (cos α cos β_R − cos β_L)/sin α).
pub fn ridge_unit_planar(spec: &GadgetSpec) -> Point2 {
    let (a, bl, br) = (spec.alpha, spec.beta_l, spec.beta_r);
    Point2::new(-br.cos(), (a.cos() * br.cos() - bl.cos()) / a.sin())
}

/// Maps a development vector of the canonical frame into the frame with
/// k_R along +x and k_L at angle α.
pub fn to_base_frame(spec: &GadgetSpec, d: &DerivedAngles, v: Point2) -> Point2 {
    let r = v.rotated(d.gamma_r + spec.beta_r);
    Point2::new(r.x, -r.y)
}

/// (K_neg,L, K_neg,R) = (‖DG_L‖, ‖DG_R‖) in closed form.
pub fn third_interference_lengths(spec: &GadgetSpec) -> Result<(f64, f64)> {
    let sol = solve_third(spec)?;
    let d = derive_angles(spec)?;
    Ok(interference_from_solution(spec, &d, &sol))
}

pub(crate) fn interference_from_solution(spec: &GadgetSpec, d: &DerivedAngles, sol: &ThirdSolution) -> (f64, f64) {
    let s = sol.psi_l + sol.rho_l;
    let psi = sol.psi_l;
    let half_l = (d.gamma_l - psi) / 2.0;
    let half_r = (d.gamma_r + psi) / 2.0;
    let kl = spec.ab_len / (s.cos() / half_l.tan() - s.sin());
    let kr = spec.ab_len / (s.cos() / half_r.tan() + s.sin());
    (kl, kr)
}

/// Points of the construction for a given ψ_L, on any frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThirdPoints {
    pub d: Point2,
    pub e: [Point2; 2],
    pub g: [Point2; 2],
    pub p: [Point2; 2],
}

impl ThirdPoints {
    pub fn e(&self, s: Side) -> Point2 {
        self.e[s as usize]
    }
    pub fn g(&self, s: Side) -> Point2 {
        self.g[s as usize]
    }
    pub fn p(&self, s: Side) -> Point2 {
        self.p[s as usize]
    }
}

pub fn third_points(f: &PleatFrame, psi_l: Angle) -> Result<ThirdPoints> {
    let no_hit = || GadgetError::Inconsistent("construction lines are parallel".into());
    let d = f.a + Point2::polar(psi_l) * f.ab();
    let mut e = [Point2::ORIGIN; 2];
    for s in Side::BOTH {
        let bis = bisector_ray(f.a, f.b(s), d)?;
        e[s as usize] = intersect_lines(&bis.line(), &f.m_line(s)).ok_or_else(no_hit)?.0;
    }
    let ee = e[1] - e[0];
    let through_d = Line2::new(d, ee).ok_or_else(no_hit)?;
    let through_c = Line2::new(f.c, ee).ok_or_else(no_hit)?;
    let mut g = [Point2::ORIGIN; 2];
    let mut p = [Point2::ORIGIN; 2];
    for s in Side::BOTH {
        let i = s as usize;
        let ae = Line2::through(f.a, e[i])?;
        g[i] = intersect_lines(&through_d, &ae).ok_or_else(no_hit)?.0;
        p[i] = intersect_lines(&through_c, &f.m_line(s)).ok_or_else(no_hit)?.0;
    }
    Ok(ThirdPoints { d, e, g, p })
}

pub fn build_third(spec: &GadgetSpec) -> Result<CreasePattern> {
    let f = frame_for(spec, "third", true, true)?;
    let sol = solve_third(spec)?;
    let pts = third_points(&f, sol.psi_l)?;
    let mut b = PatternBuilder::new("third", &f);
    b.angle_value("rho_L", sol.rho_l);
    b.angle_value("psi_L", sol.psi_l);
    b.value("V1", sol.v1);
    b.value("V2", sol.v2);
    b.value("W", sol.w);
    b.value("V1_minus_rV2", sol.v1 - sol.r * sol.v2);
    if sol.used_bisection {
        b.branch("bisection fallback", "|V₁ − rV₂| < 1e-12", (sol.v1 - sol.r * sol.v2).abs(), 1e-12);
    }
    if f.flat {
        b.branch("flat", "α = β_L + β_R", spec.alpha.rad(), (spec.beta_l + spec.beta_r).rad());
    }
    b.point("D", pts.d);
    for s in Side::BOTH {
        b.point(&nm("E", s), pts.e(s));
        b.point(&nm("G", s), pts.g(s));
        b.point(&nm("P", s), pts.p(s));
    }
    emit_third_creases(&mut b, &f, &pts);

    let (kl, kr) = interference_from_solution(spec, &f.derived, &sol);
    b.interference("K_neg_L", kl);
    b.interference("K_neg_R", kr);
    for (s, k) in [(Side::L, kl), (Side::R, kr)] {
        let (bn, en, gn, pn) = (nm("B", s), nm("E", s), nm("G", s), nm("P", s));
        b.identity(&format!("∠{en}{bn}{gn} = ∠{en}{bn}{pn}"), vec![(1.0, ang(&bn, &en, &gn)), (-1.0, ang(&bn, &en, &pn))], 0.0);
        let rho_s = s.sign() * sol.rho_l.rad();
        b.identity(
            &format!("∠k{bn}ℓ − ∠{pn}{bn}ℓ = β + γ_{s} + ρ_{s} − π/2"),
            vec![(1.0, ang(&bn, &nm("@k", s), &nm("@ell", s))), (-1.0, ang(&bn, &pn, &nm("@ell", s)))],
            (spec.beta(s) + f.derived.gamma_side(s)).rad() + rho_s - PI / 2.0,
        );
        b.identity(&format!("|D{gn}| = |{bn}{gn}|"), vec![(1.0, dist("D", &gn)), (-1.0, dist(&bn, &gn))], 0.0);
        b.identity(&format!("|D{gn}| = K_neg,{s}"), vec![(1.0, dist("D", &gn))], k);
        if f.flat {
            b.identity(
                &format!("∠A{bn}{en} + ∠k{bn}ℓ = π"),
                vec![(1.0, ang(&bn, "A", &en)), (1.0, ang(&bn, &nm("@k", s), &nm("@ell", s)))],
                PI,
            );
            b.identity(
                &format!("∠A{bn}k + ∠{en}{bn}ℓ = π"),
                vec![(1.0, ang(&bn, "A", &nm("@k", s))), (1.0, ang(&bn, &en, &nm("@ell", s)))],
                PI,
            );
        }
    }
    b.identity("∠ADG_L + ∠ADG_R = π", vec![(1.0, ang("D", "A", "G_L")), (1.0, ang("D", "A", "G_R"))], PI);
    b.identity("|AD| = |AB|", vec![(1.0, dist("A", "D"))], f.ab());
    for s in Side::BOTH {
        b.flat(&nm("E", s), &[]);
        b.flat(&nm("G", s), &[]);
        b.flat(&nm("P", s), &[]);
        if f.flat {
            b.flat(&nm("B", s), &[]);
        }
    }
    Ok(b.finish())
}

/// Creases of the assignment table; shared with the lowest division level.
pub(crate) fn emit_third_creases(b: &mut PatternBuilder, f: &PleatFrame, pts: &ThirdPoints) {
    for s in Side::BOTH {
        let t = s.tag();
        b.ray(&nm("j", s), f.a, f.j(s).dir, Fold::Mountain);
        b.ray(&nm("m", s), pts.e(s), f.m(s).dir, Fold::Mountain);
        b.seg_pts(&format!("AE_{t}"), f.a, pts.e(s), Fold::Mountain);
        b.seg_pts(&format!("B_{t}G_{t}"), f.b(s), pts.g(s), Fold::Mountain);
        let pleat_closed = pts.p(s).approx_eq(pts.e(s), EPS_LEN * f.ab());
        if pleat_closed {
            b.note(format!("P_{t} = E_{t}: mountain B_{t}P_{t} and valley B_{t}E_{t} coincide and cancel"));
        } else {
            b.seg_pts(&format!("B_{t}P_{t}"), f.b(s), pts.p(s), Fold::Mountain);
        }
        b.ray(&nm("k", s), f.b(s), f.k(s).dir, Fold::Valley);
        b.ray(&nm("ell", s), f.b(s), f.ell(s).dir, Fold::Valley);
        b.seg_pts(&format!("AB_{t}"), f.a, f.b(s), Fold::Valley);
        if !pleat_closed {
            b.seg_pts(&format!("B_{t}E_{t}"), f.b(s), pts.e(s), Fold::Valley);
        }
    }
    b.seg_pts("E_LE_R", pts.e[0], pts.e[1], Fold::Mountain);
    b.seg_pts("G_LG_R", pts.g[0], pts.g[1], Fold::Valley);
    b.seg_pts("P_LP_R", pts.p[0], pts.p[1], Fold::Valley);
}

/// Constructed e(DA), e(E_LE_R) mapped into the k_R-aligned frame, dotted
/// with the explicit e(BA); returns both residuals against the component forms
/// and the equation residual.
pub fn constructed_dot_check(spec: &GadgetSpec) -> Result<(f64, f64, f64)> {
    let f = build_frame(spec)?;
    let sol = solve_third(spec)?;
    let pts = third_points(&f, sol.psi_l)?;
    let d = f.derived;
    let da = to_base_frame(spec, &d, (f.a - pts.d).normalized().expect("D ≠ A"));
    let ee = to_base_frame(spec, &d, (pts.e[1] - pts.e[0]).normalized().expect("E_L ≠ E_R"));
    let (da_ref, ee_ref) = reference_unit_vectors(spec, &d, &sol);
    let ba = ridge_unit_planar(spec);
    Ok((da.dist(da_ref), ee.dist(ee_ref), da.dot(ee) - ba.dot(ee)))
}
